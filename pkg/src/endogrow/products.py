"""Products of groups, sublattices of Z^n with their quotients, and
cyclic-by-cyclic towers."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from endogrow.groups import (
    EXACT,
    QUASI_EQUIVALENT,
    Free,
    FreeAbelian,
    Group,
    KindMismatchError,
    LengthMode,
    LengthValue,
    UnsupportedOperationError,
)
from endogrow.intmat import (
    IntMatrix,
    SmithForm,
    inverse_unimodular,
    mat_mul,
    smith_normal_form,
    solve_int,
)


@dataclass(frozen=True)
class DirectProduct(Group):
    """A x B with the union generating set; elements are pairs and the word
    length is exactly the sum of the factor lengths."""

    left: Group
    right: Group

    @property
    def kind(self) -> str:
        return "direct_product"

    @property
    def generators(self):
        out = []
        for name, g in self.left.generators:
            out.append((f"{name}.0", (g, self.right.identity())))
        for name, g in self.right.generators:
            out.append((f"{name}.1", (self.left.identity(), g)))
        return tuple(out)

    def identity(self):
        return (self.left.identity(), self.right.identity())

    def check(self, g):
        if not isinstance(g, tuple) or len(g) != 2:
            raise KindMismatchError(f"not a product pair: {g!r}")

    def multiply(self, g, h):
        self.check(g)
        self.check(h)
        return (self.left.multiply(g[0], h[0]), self.right.multiply(g[1], h[1]))

    def invert(self, g):
        self.check(g)
        return (self.left.invert(g[0]), self.right.invert(g[1]))

    def word_length(self, g) -> LengthValue:
        self.check(g)
        a = self.left.word_length(g[0])
        b = self.right.word_length(g[1])
        exactness = EXACT if a.exactness == b.exactness == EXACT else QUASI_EQUIVALENT
        return LengthValue(a.value + b.value, exactness)


def direct_product(left: Group, right: Group) -> DirectProduct:
    return DirectProduct(left, right)


_FREE_FACTOR_KINDS = (Free, FreeAbelian)


@dataclass(frozen=True)
class FreeProduct(Group):
    """A * B for factors with syllable normal forms (free groups and Z).

    Elements are tuples of (factor_index, factor_element) syllables with
    alternating indices and no identity syllables; length is the sum of the
    factor lengths of the syllables.
    """

    left: Group
    right: Group

    def __post_init__(self):
        for f in (self.left, self.right):
            if not isinstance(f, _FREE_FACTOR_KINDS):
                raise UnsupportedOperationError(
                    f"free product factors must be free or Z, got {f.kind!r}"
                )
            if isinstance(f, FreeAbelian) and f.rank != 1:
                raise UnsupportedOperationError(
                    "abelian free-product factors must have rank 1"
                )

    @property
    def kind(self) -> str:
        return "free_product"

    def factor(self, i: int) -> Group:
        return self.left if i == 0 else self.right

    @property
    def generators(self):
        out = []
        for i in (0, 1):
            for name, g in self.factor(i).generators:
                out.append((f"{name}.{i}", ((i, g),)))
        return tuple(out)

    def identity(self):
        return ()

    def check(self, g):
        if not isinstance(g, tuple):
            raise KindMismatchError("free-product elements are syllable tuples")
        last = None
        for syl in g:
            if not (isinstance(syl, tuple) and len(syl) == 2 and syl[0] in (0, 1)):
                raise KindMismatchError(f"bad syllable {syl!r}")
            i, s = syl
            if s == self.factor(i).identity():
                raise KindMismatchError("identity syllable in normal form")
            if i == last:
                raise KindMismatchError("adjacent syllables from the same factor")
            last = i

    def _push(self, out: list, syl):
        i, s = syl
        fac = self.factor(i)
        if s == fac.identity():
            return
        if out and out[-1][0] == i:
            merged = fac.multiply(out[-1][1], s)
            out.pop()
            if merged != fac.identity():
                out.append((i, merged))
        else:
            out.append((i, s))

    def multiply(self, g, h):
        self.check(g)
        self.check(h)
        out = list(g)
        for syl in h:
            self._push(out, syl)
        return tuple(out)

    def invert(self, g):
        self.check(g)
        return tuple((i, self.factor(i).invert(s)) for i, s in reversed(g))

    def word_length(self, g) -> LengthValue:
        self.check(g)
        total = 0
        exactness = EXACT
        for i, s in g:
            lv = self.factor(i).word_length(s)
            total += lv.value
            if lv.exactness != EXACT:
                exactness = QUASI_EQUIVALENT
        return LengthValue(total, exactness)


def free_product(left: Group, right: Group) -> FreeProduct:
    return FreeProduct(left, right)


@dataclass(frozen=True)
class Semidirect(Group):
    """H x| Q for free abelian H and Q, with Q acting on H through
    commuting unimodular integer matrices (one per Q generator, acting on
    column vectors).

    Elements are pairs (h, q) of int tuples with
    (h, q)(h', q') = (h + action(q) h', q + q').
    """

    base_rank: int
    quotient_rank: int
    action: tuple[IntMatrix, ...]
    length_mode: LengthMode = LengthMode("quasi")

    def __post_init__(self):
        if len(self.action) != self.quotient_rank:
            raise ValueError("need one action matrix per quotient generator")
        for a in self.action:
            if a.rows != self.base_rank or a.cols != self.base_rank:
                raise ValueError("action matrix has wrong shape")
            if abs(a.det()) != 1:
                raise ValueError("action matrix is not unimodular")
        for i, a in enumerate(self.action):
            for b in self.action[i + 1 :]:
                if mat_mul(a, b).entries != mat_mul(b, a).entries:
                    raise ValueError("action matrices must commute (abelian quotient)")

    @property
    def kind(self) -> str:
        return "semidirect"

    @cached_property
    def base(self) -> FreeAbelian:
        return FreeAbelian(self.base_rank)

    @cached_property
    def quotient(self) -> FreeAbelian:
        return FreeAbelian(self.quotient_rank)

    @cached_property
    def _inverse_action(self) -> tuple[IntMatrix, ...]:
        return tuple(inverse_unimodular(a) for a in self.action)

    @cached_property
    def _power_cache(self) -> dict:
        return {}

    def generator_power(self, i: int, n: int) -> IntMatrix:
        """action_i ** n for any integer n (negative powers via exact inverse)."""
        key = (i, n)
        cached = self._power_cache.get(key)
        if cached is not None:
            return cached
        base = self.action[i] if n >= 0 else self._inverse_action[i]
        result = IntMatrix.identity(self.base_rank)
        for _ in range(abs(n)):
            result = mat_mul(result, base)
        self._power_cache[key] = result
        return result

    def action_of(self, q: tuple[int, ...]) -> IntMatrix:
        """The automorphism of H attached to q (product of generator powers)."""
        result = IntMatrix.identity(self.base_rank)
        for i, e in enumerate(q):
            if e:
                result = mat_mul(result, self.generator_power(i, e))
        return result

    @cached_property
    def action_orders(self) -> tuple:
        """Multiplicative order of each action generator, or None if infinite
        (searched up to a bound that covers every finite order at desk scale)."""
        orders = []
        ident = IntMatrix.identity(self.base_rank).entries
        for a in self.action:
            power = a
            found = None
            for k in range(1, 121):
                if power.entries == ident:
                    found = k
                    break
                power = mat_mul(power, a)
            orders.append(found)
        return tuple(orders)

    @property
    def action_is_finite_order(self) -> bool:
        return all(o is not None for o in self.action_orders)

    @property
    def action_is_trivial(self) -> bool:
        ident = IntMatrix.identity(self.base_rank).entries
        return all(a.entries == ident for a in self.action)

    @property
    def generators(self):
        out = []
        for name, g in self.base.generators:
            out.append((name, (g, self.quotient.identity())))
        for i in range(self.quotient_rank):
            name = "t" if self.quotient_rank == 1 else f"t{i + 1}"
            q = tuple(1 if j == i else 0 for j in range(self.quotient_rank))
            out.append((name, (self.base.identity(), q)))
        return tuple(out)

    def identity(self):
        return (self.base.identity(), self.quotient.identity())

    def check(self, g):
        if not (isinstance(g, tuple) and len(g) == 2):
            raise KindMismatchError(f"not a semidirect pair: {g!r}")
        self.base.check(g[0])
        self.quotient.check(g[1])

    def multiply(self, g, h):
        self.check(g)
        self.check(h)
        moved = self.action_of(g[1]).apply_col(h[0])
        return (
            tuple(a + b for a, b in zip(g[0], moved)),
            tuple(a + b for a, b in zip(g[1], h[1])),
        )

    def invert(self, g):
        self.check(g)
        q_inv = tuple(-x for x in g[1])
        moved = self.action_of(q_inv).apply_col(g[0])
        return (tuple(-x for x in moved), q_inv)

    def is_base_element(self, g) -> bool:
        self.check(g)
        return g[1] == self.quotient.identity()

    def base_intrinsic_length(self, g) -> int:
        """L1 length of a base element in the base's own generators."""
        if not self.is_base_element(g):
            raise KindMismatchError("not a base element")
        return sum(abs(x) for x in g[0])

    def word_length(self, g) -> LengthValue:
        self.check(g)
        if self.length_mode.kind == "bfs":
            return self._bfs_length(g)
        if self.length_mode.kind == "quasi":
            if not self.action_is_finite_order:
                raise UnsupportedOperationError(
                    "additive quasi-length is only honest for finite-order actions; "
                    "use bfs mode"
                )
            value = sum(abs(x) for x in g[0]) + sum(abs(x) for x in g[1])
            exactness = EXACT if self.action_is_trivial else QUASI_EQUIVALENT
            return LengthValue(value, exactness)
        raise UnsupportedOperationError("semidirect products have no exact length mode")


def semidirect(
    base: FreeAbelian, quotient: FreeAbelian, action, length_mode=LengthMode("quasi")
) -> Semidirect:
    matrices = tuple(
        a if isinstance(a, IntMatrix) else IntMatrix.from_rows(a) for a in action
    )
    return Semidirect(base.rank, quotient.rank, matrices, length_mode)


@dataclass(frozen=True)
class Sublattice:
    """A subgroup of Z^n spanned by the independent columns of `basis`.

    Intrinsically it is Z^k with L1 length in the basis coordinates; the
    index in the ambient lattice is |det basis| when k = n, infinite
    otherwise.
    """

    ambient_rank: int
    basis: IntMatrix  # ambient_rank x k, columns generate

    def __post_init__(self):
        if self.basis.rows != self.ambient_rank:
            raise ValueError("basis rows must match the ambient rank")
        if self.snf.rank != self.basis.cols:
            raise ValueError("basis columns are dependent")

    @cached_property
    def snf(self) -> SmithForm:
        return smith_normal_form(self.basis)

    @property
    def rank(self) -> int:
        return self.basis.cols

    @property
    def index(self):
        """Index in Z^n: |det| for full-rank square bases, else None (infinite)."""
        if self.basis.cols != self.ambient_rank:
            return None
        return abs(self.basis.det())

    @cached_property
    def intrinsic_group(self) -> FreeAbelian:
        return FreeAbelian(self.rank)

    def coordinates(self, v: tuple[int, ...]):
        """Basis coordinates of an ambient vector, or None if not a member."""
        if len(v) != self.ambient_rank:
            raise KindMismatchError("ambient vector has wrong length")
        return solve_int(self.basis, v, self.snf)

    def contains(self, v: tuple[int, ...]) -> bool:
        return self.coordinates(v) is not None

    def embed(self, coords: tuple[int, ...]) -> tuple[int, ...]:
        return self.basis.apply_col(coords)

    def intrinsic_length(self, v: tuple[int, ...]) -> LengthValue:
        coords = self.coordinates(v)
        if coords is None:
            raise KindMismatchError(f"{v!r} is not in the sublattice")
        return LengthValue(sum(abs(c) for c in coords), EXACT)


def sublattice(ambient: FreeAbelian, basis) -> Sublattice:
    b = basis if isinstance(basis, IntMatrix) else IntMatrix.from_rows(basis)
    return Sublattice(ambient.rank, b)


@dataclass(frozen=True)
class AbelianQuotient(Group):
    """Z^n modulo the column span of a relation matrix, presented through its
    Smith normal form as (torsion cyclic factors) x Z^free_rank.

    Normal forms are tuples (torsion residues ..., free coordinates ...) in
    the Smith coordinate system; the length is the sum of minimal absolute
    residues on torsion factors plus the L1 norm of the free part, which is
    the word length in the cyclic/free canonical generators.
    """

    ambient_rank: int
    relations: IntMatrix  # ambient_rank x k columns

    def __post_init__(self):
        if self.relations.rows != self.ambient_rank:
            raise ValueError("relation rows must match the ambient rank")

    @cached_property
    def snf(self) -> SmithForm:
        return smith_normal_form(self.relations)

    @cached_property
    def _structure(self):
        """(torsion_rows, moduli, free_rows): Smith rows carrying each part."""
        diag = self.snf.diagonal
        torsion_rows = []
        moduli = []
        for i, d in enumerate(diag):
            if d > 1:
                torsion_rows.append(i)
                moduli.append(d)
        free_rows = [i for i, d in enumerate(diag) if d == 0]
        free_rows += list(range(len(diag), self.ambient_rank))
        return tuple(torsion_rows), tuple(moduli), tuple(free_rows)

    @property
    def torsion_moduli(self) -> tuple[int, ...]:
        return self._structure[1]

    @property
    def free_rank(self) -> int:
        return len(self._structure[2])

    @property
    def is_trivial(self) -> bool:
        return not self.torsion_moduli and self.free_rank == 0

    @property
    def kind(self) -> str:
        return "abelian_quotient"

    @property
    def generators(self):
        out = []
        n_t = len(self.torsion_moduli)
        size = n_t + self.free_rank
        for i, d in enumerate(self.torsion_moduli):
            el = tuple(1 if j == i else 0 for j in range(size))
            out.append((f"c{i + 1}", self._reduce(el)))
        for i in range(self.free_rank):
            el = tuple(1 if j == n_t + i else 0 for j in range(size))
            out.append((f"f{i + 1}", el))
        return tuple(out)

    def identity(self):
        return (0,) * (len(self.torsion_moduli) + self.free_rank)

    def check(self, g):
        size = len(self.torsion_moduli) + self.free_rank
        if not isinstance(g, tuple) or len(g) != size:
            raise KindMismatchError(f"quotient element must have {size} components")

    def _reduce(self, comps) -> tuple:
        moduli = self.torsion_moduli
        out = list(comps)
        for i, d in enumerate(moduli):
            out[i] %= d
        return tuple(out)

    def multiply(self, g, h):
        self.check(g)
        self.check(h)
        return self._reduce(tuple(a + b for a, b in zip(g, h)))

    def invert(self, g):
        self.check(g)
        return self._reduce(tuple(-a for a in g))

    def project(self, v: tuple[int, ...]) -> tuple:
        """Natural projection Z^n -> quotient, in normal form."""
        if len(v) != self.ambient_rank:
            raise KindMismatchError("ambient vector has wrong length")
        w = self.snf.u.apply_col(v)
        torsion_rows, _, free_rows = self._structure
        comps = [w[i] for i in torsion_rows] + [w[i] for i in free_rows]
        return self._reduce(tuple(comps))

    def word_length(self, g) -> LengthValue:
        self.check(g)
        total = 0
        for i, d in enumerate(self.torsion_moduli):
            r = g[i] % d
            total += min(r, d - r)
        total += sum(abs(x) for x in g[len(self.torsion_moduli) :])
        return LengthValue(total, EXACT)


def abelian_quotient(ambient: FreeAbelian, lattice: Sublattice) -> AbelianQuotient:
    """The quotient of Z^n by a sublattice, realized through Smith reduction."""
    if lattice.ambient_rank != ambient.rank:
        raise ValueError("sublattice lives in a different ambient rank")
    return AbelianQuotient(ambient.rank, lattice.basis)


@dataclass(frozen=True)
class PolycyclicTower:
    """A subnormal series with cyclic factors, realized concretely as an
    iterated semidirect/direct descriptor.

    factor_orders lists the cyclic factor orders top-down (0 for Z); the
    flag records whether the endomorphism under study preserves the series.
    """

    factor_orders: tuple[int, ...]
    realization: Group
    endo_preserves_series: bool = True

    def __post_init__(self):
        for d in self.factor_orders:
            if d < 0:
                raise ValueError("factor orders are 0 (infinite) or positive")

    @property
    def length(self) -> int:
        return len(self.factor_orders)
