"""Endomorphisms of the supported groups: application, composition, powers,
restriction to invariant subgroups, and induced quotient maps."""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import cached_property

from endogrow.groups import (
    Free,
    FreeAbelian,
    Group,
    Heisenberg,
    KindMismatchError,
    LowerCentralLayer,
    UnsupportedOperationError,
)
from endogrow.intmat import IntMatrix, mat_mul, mat_pow
from endogrow.products import (
    AbelianQuotient,
    DirectProduct,
    FreeProduct,
    Semidirect,
    Sublattice,
    abelian_quotient,
)


class InvarianceError(ValueError):
    """A subgroup required to be invariant is not; names a violating generator."""


class Endomorphism(ABC):
    """A self-map of a group, applied to normal forms."""

    group: Group

    @abstractmethod
    def apply(self, g): ...

    @abstractmethod
    def compose(self, other: "Endomorphism") -> "Endomorphism":
        """self after other."""

    @abstractmethod
    def identity_like(self) -> "Endomorphism": ...

    def power(self, n: int) -> "Endomorphism":
        if n < 0:
            raise ValueError("powers of endomorphisms need n >= 0")
        result = self.identity_like()
        base = self
        while n:
            if n & 1:
                result = result.compose(base)
            n >>= 1
            if n:
                base = base.compose(base)
        return result

    def _check_homomorphism_on_samples(self, pairs):
        for g, h in pairs:
            lhs = self.apply(self.group.multiply(g, h))
            rhs = self.group.multiply(self.apply(g), self.apply(h))
            if lhs != rhs:
                raise ValueError(
                    f"not a homomorphism: images of {g!r}*{h!r} disagree"
                )


def _sample_pairs(group: Group, depth: int = 2):
    """A few deterministic products of generators, for construction checks."""
    gens = [el for _, el in group.generators]
    gens += [group.invert(g) for g in gens]
    if not gens:
        return []
    singles = gens[:6]
    pairs = []
    for i, g in enumerate(singles):
        for h in singles[i:][:3]:
            pairs.append((g, h))
            pairs.append((group.multiply(g, h), h))
    return pairs[:12]


@dataclass(frozen=True)
class MatrixEndo(Endomorphism):
    """Endomorphism of a free abelian group given by an integer matrix whose
    ROWS are the generator images (so apply(v) = v * matrix)."""

    group: FreeAbelian
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.rows != self.group.rank or self.matrix.cols != self.group.rank:
            raise KindMismatchError("matrix shape does not match the group rank")

    @cached_property
    def column_matrix(self) -> IntMatrix:
        """The same map in column convention (images in columns)."""
        return self.matrix.transpose()

    def apply(self, g):
        self.group.check(g)
        return self.matrix.apply_row(g)

    def compose(self, other):
        if not isinstance(other, MatrixEndo) or other.group != self.group:
            raise KindMismatchError("can only compose matrix endos on the same group")
        return MatrixEndo(self.group, mat_mul(other.matrix, self.matrix))

    def power(self, n):
        if n < 0:
            raise ValueError("powers of endomorphisms need n >= 0")
        return MatrixEndo(self.group, mat_pow(self.matrix, n))

    def identity_like(self):
        return MatrixEndo(self.group, IntMatrix.identity(self.group.rank))


@dataclass(frozen=True)
class WordEndo(Endomorphism):
    """Endomorphism of a free group: one reduced image word per generator."""

    group: Free
    images: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.images) != self.group.rank:
            raise KindMismatchError("need one image per generator")
        for w in self.images:
            self.group.check(w)

    @cached_property
    def _inverse_images(self):
        return tuple(self.group.invert(w) for w in self.images)

    def apply(self, g):
        self.group.check(g)
        out = []
        for letter in g:
            img = (
                self.images[letter - 1]
                if letter > 0
                else self._inverse_images[-letter - 1]
            )
            for x in img:
                if out and out[-1] == -x:
                    out.pop()
                else:
                    out.append(x)
        return tuple(out)

    def compose(self, other):
        if not isinstance(other, WordEndo) or other.group != self.group:
            raise KindMismatchError("can only compose word endos on the same group")
        return WordEndo(self.group, tuple(self.apply(w) for w in other.images))

    def identity_like(self):
        return WordEndo(self.group, tuple(g for _, g in self.group.generators))


@dataclass(frozen=True)
class HeisenbergEndo(Endomorphism):
    """The two-parameter family (a, b, c) -> (m_a * a, m_a*m_c * b, m_c * c).

    The parameters must be integers for the map to preserve the integer
    lattice; it is an endomorphism for every integer pair.
    """

    group: Heisenberg
    lam: int
    gam: int

    def __post_init__(self):
        if not isinstance(self.lam, int) or not isinstance(self.gam, int):
            raise ValueError("parameters must be integers")

    def apply(self, g):
        self.group.check(g)
        a, b, c = g
        return (self.lam * a, self.lam * self.gam * b, self.gam * c)

    def compose(self, other):
        if not isinstance(other, HeisenbergEndo) or other.group != self.group:
            raise KindMismatchError("can only compose Heisenberg endos on the same group")
        return HeisenbergEndo(self.group, self.lam * other.lam, self.gam * other.gam)

    def power(self, n):
        if n < 0:
            raise ValueError("powers of endomorphisms need n >= 0")
        return HeisenbergEndo(self.group, self.lam**n, self.gam**n)

    def identity_like(self):
        return HeisenbergEndo(self.group, 1, 1)


@dataclass(frozen=True)
class ProductEndo(Endomorphism):
    """Componentwise endomorphism of a direct or free product (each factor is
    mapped into itself)."""

    group: Group  # DirectProduct or FreeProduct
    factors: tuple[Endomorphism, Endomorphism]

    def __post_init__(self):
        if not isinstance(self.group, (DirectProduct, FreeProduct)):
            raise KindMismatchError("ProductEndo needs a product group")
        self._check_homomorphism_on_samples(_sample_pairs(self.group))

    def apply(self, g):
        if isinstance(self.group, DirectProduct):
            self.group.check(g)
            return (self.factors[0].apply(g[0]), self.factors[1].apply(g[1]))
        # free product: map syllables and renormalize
        self.group.check(g)
        out = self.group.identity()
        for i, s in g:
            image = self.factors[i].apply(s)
            if image == self.group.factor(i).identity():
                continue
            out = self.group.multiply(out, ((i, image),))
        return out

    def compose(self, other):
        if not isinstance(other, ProductEndo) or other.group != self.group:
            raise KindMismatchError("can only compose product endos on the same group")
        return ProductEndo(
            self.group,
            (self.factors[0].compose(other.factors[0]), self.factors[1].compose(other.factors[1])),
        )

    def identity_like(self):
        return ProductEndo(
            self.group, (self.factors[0].identity_like(), self.factors[1].identity_like())
        )


@dataclass(frozen=True)
class SemidirectEndo(Endomorphism):
    """Blockwise endomorphism (h, q) -> (h * base, q * quotient) of a
    semidirect product; keeps the base subgroup invariant.

    Construction verifies the intertwining condition that makes the block
    map a homomorphism: for every quotient generator with action matrix A,
    base^T A == action(image of that generator) base^T exactly.
    """

    group: Semidirect
    base_matrix: IntMatrix  # rows are images of base generators
    quotient_matrix: IntMatrix  # rows are images of quotient generators

    def __post_init__(self):
        g = self.group
        if self.base_matrix.rows != g.base_rank or self.base_matrix.cols != g.base_rank:
            raise KindMismatchError("base matrix shape mismatch")
        if (
            self.quotient_matrix.rows != g.quotient_rank
            or self.quotient_matrix.cols != g.quotient_rank
        ):
            raise KindMismatchError("quotient matrix shape mismatch")
        c_base = self.base_matrix.transpose()
        for j in range(g.quotient_rank):
            image_q = self.quotient_matrix.row(j)
            lhs = mat_mul(c_base, g.action[j])
            rhs = mat_mul(g.action_of(image_q), c_base)
            if lhs.entries != rhs.entries:
                raise InvarianceError(
                    f"base/quotient blocks do not intertwine with the action at "
                    f"quotient generator {j + 1}"
                )
        self._check_homomorphism_on_samples(_sample_pairs(g))

    def apply(self, g):
        self.group.check(g)
        return (self.base_matrix.apply_row(g[0]), self.quotient_matrix.apply_row(g[1]))

    def base_endo(self) -> MatrixEndo:
        return MatrixEndo(self.group.base, self.base_matrix)

    def quotient_endo(self) -> MatrixEndo:
        return MatrixEndo(self.group.quotient, self.quotient_matrix)

    def compose(self, other):
        if not isinstance(other, SemidirectEndo) or other.group != self.group:
            raise KindMismatchError("can only compose semidirect endos on the same group")
        return SemidirectEndo(
            self.group,
            mat_mul(other.base_matrix, self.base_matrix),
            mat_mul(other.quotient_matrix, self.quotient_matrix),
        )

    def identity_like(self):
        return SemidirectEndo(
            self.group,
            IntMatrix.identity(self.group.base_rank),
            IntMatrix.identity(self.group.quotient_rank),
        )


@dataclass(frozen=True)
class QuotientEndo(Endomorphism):
    """An endomorphism induced on an abelian quotient, stored as the exact
    conjugated matrix in Smith coordinates (column convention)."""

    group: AbelianQuotient
    smith_matrix: IntMatrix  # ambient_rank x ambient_rank, acts on w = U v

    def _lift(self, g) -> tuple[int, ...]:
        torsion_rows, _, free_rows = self.group._structure
        w = [0] * self.group.ambient_rank
        n_t = len(torsion_rows)
        for idx, row in enumerate(torsion_rows):
            w[row] = g[idx]
        for idx, row in enumerate(free_rows):
            w[row] = g[n_t + idx]
        return tuple(w)

    def apply(self, g):
        self.group.check(g)
        w = self.smith_matrix.apply_col(self._lift(g))
        torsion_rows, _, free_rows = self.group._structure
        comps = [w[i] for i in torsion_rows] + [w[i] for i in free_rows]
        return self.group._reduce(tuple(comps))

    def free_block(self) -> IntMatrix:
        """The induced map on (quotient / torsion) = Z^free_rank, columns."""
        _, _, free_rows = self.group._structure
        return IntMatrix.from_rows(
            [[self.smith_matrix.get(i, j) for j in free_rows] for i in free_rows]
        )

    def compose(self, other):
        if not isinstance(other, QuotientEndo) or other.group != self.group:
            raise KindMismatchError("can only compose quotient endos on the same group")
        return QuotientEndo(self.group, mat_mul(self.smith_matrix, other.smith_matrix))

    def identity_like(self):
        return QuotientEndo(self.group, IntMatrix.identity(self.group.ambient_rank))


def abelianization(endo: HeisenbergEndo) -> MatrixEndo:
    """The induced map on the (a, c) coordinates: diag(m_a, m_c) on Z^2."""
    if not isinstance(endo, HeisenbergEndo):
        raise KindMismatchError("abelianization is defined for Heisenberg endos")
    return MatrixEndo(
        FreeAbelian(2), IntMatrix.from_rows([[endo.lam, 0], [0, endo.gam]])
    )


def restrict(endo: Endomorphism, subgroup):
    """The endomorphism in the intrinsic coordinates of an invariant subgroup.

    Supported: matrix endos restricted to sublattices (exact change of
    basis), and Heisenberg endos restricted to lower-central layers.
    Raises InvarianceError naming a violating generator if the subgroup is
    not mapped into itself.
    """
    if isinstance(endo, MatrixEndo) and isinstance(subgroup, Sublattice):
        if subgroup.ambient_rank != endo.group.rank:
            raise KindMismatchError("sublattice has the wrong ambient rank")
        k = subgroup.rank
        if k == 0:
            return MatrixEndo(FreeAbelian(0), IntMatrix.identity(0))
        cols = []
        for j in range(k):
            image = endo.column_matrix.apply_col(subgroup.basis.column(j))
            coords = subgroup.coordinates(image)
            if coords is None:
                raise InvarianceError(
                    f"sublattice generator h{j + 1} = {subgroup.basis.column(j)} "
                    f"maps outside the sublattice"
                )
            cols.append(coords)
        column_form = IntMatrix.from_rows(
            [[cols[j][i] for j in range(k)] for i in range(k)]
        )
        return MatrixEndo(subgroup.intrinsic_group, column_form.transpose())
    if isinstance(endo, HeisenbergEndo) and isinstance(subgroup, LowerCentralLayer):
        layer = subgroup
        if layer.j == 1:
            return endo
        if layer.j == 2:
            # the center (0, n, 0) scales by lam*gam
            return MatrixEndo(
                layer.subgroup, IntMatrix.from_rows([[endo.lam * endo.gam]])
            )
        if layer.j == 3:
            return MatrixEndo(FreeAbelian(0), IntMatrix.identity(0))
    raise UnsupportedOperationError(
        f"restrict not implemented for {type(endo).__name__} on {type(subgroup).__name__}"
    )


def induce_on_quotient(endo: Endomorphism, subgroup):
    """The well-defined endomorphism of group/subgroup, for invariant subgroups.

    Abelian kinds go through the Smith normal form of the subgroup basis;
    Heisenberg endos modulo the center give the abelianized matrix.
    """
    if isinstance(endo, MatrixEndo) and isinstance(subgroup, Sublattice):
        if subgroup.ambient_rank != endo.group.rank:
            raise KindMismatchError("sublattice has the wrong ambient rank")
        if subgroup.rank == 0:
            return endo
        for j in range(subgroup.rank):
            image = endo.column_matrix.apply_col(subgroup.basis.column(j))
            if not subgroup.contains(image):
                raise InvarianceError(
                    f"sublattice generator h{j + 1} maps outside the sublattice; "
                    f"quotient map undefined"
                )
        quotient = abelian_quotient(endo.group, subgroup)
        u = quotient.snf.u
        u_inv = _unimodular_inverse_cached(u)
        smith_matrix = mat_mul(mat_mul(u, endo.column_matrix), u_inv)
        return QuotientEndo(quotient, smith_matrix)
    if isinstance(endo, HeisenbergEndo) and isinstance(subgroup, LowerCentralLayer):
        if subgroup.j == 2:
            return abelianization(endo)
        if subgroup.j == 3:
            return endo
        if subgroup.j == 1:
            return MatrixEndo(FreeAbelian(0), IntMatrix.identity(0))
    raise UnsupportedOperationError(
        f"induce_on_quotient not implemented for {type(endo).__name__} on "
        f"{type(subgroup).__name__}"
    )


_INVERSE_CACHE: dict[tuple, IntMatrix] = {}


def _unimodular_inverse_cached(m: IntMatrix) -> IntMatrix:
    key = (m.rows, m.cols, m.entries)
    found = _INVERSE_CACHE.get(key)
    if found is None:
        from endogrow.intmat import inverse_unimodular

        found = inverse_unimodular(m)
        _INVERSE_CACHE[key] = found
    return found


def identity_endo(group: Group) -> Endomorphism:
    """The identity endomorphism in the right representation for the group."""
    if isinstance(group, FreeAbelian):
        return MatrixEndo(group, IntMatrix.identity(group.rank))
    if isinstance(group, Free):
        return WordEndo(group, tuple(g for _, g in group.generators))
    if isinstance(group, Heisenberg):
        return HeisenbergEndo(group, 1, 1)
    if isinstance(group, (DirectProduct, FreeProduct)):
        return ProductEndo(
            group, (identity_endo(group.left), identity_endo(group.right))
        )
    if isinstance(group, Semidirect):
        return SemidirectEndo(
            group,
            IntMatrix.identity(group.base_rank),
            IntMatrix.identity(group.quotient_rank),
        )
    if isinstance(group, AbelianQuotient):
        return QuotientEndo(group, IntMatrix.identity(group.ambient_rank))
    raise UnsupportedOperationError(f"no identity endo for kind {group.kind!r}")
