"""Concrete finitely generated groups with canonical normal forms.

Elements are plain hashable tuples; each group descriptor knows how to
multiply, invert and measure its own elements.  Equality of normal forms is
equality of elements.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from math import isqrt


EXACT = "exact"
QUASI_EQUIVALENT = "quasi-equivalent"

_GEN_NAMES_ABELIAN = ("x", "y", "z")
_GEN_NAMES_FREE = ("a", "b", "c", "d")


class KindMismatchError(ValueError):
    """Element does not belong to the group it was used with."""


class UnsupportedOperationError(ValueError):
    """The operation is not defined for this group kind or parameter."""


class OutOfBallError(LookupError):
    """A BFS-backed length was requested beyond the enumerated radius."""


@dataclass(frozen=True)
class LengthValue:
    """A word-length measurement plus how literally to read it."""

    value: int
    exactness: str  # EXACT or QUASI_EQUIVALENT


@dataclass(frozen=True)
class LengthMode:
    """How a group measures elements: closed-form exact, a quasi-length that
    is within multiplicative constants of the word metric, or BFS lookup."""

    kind: str = "exact"  # "exact" | "quasi" | "bfs"
    radius: int = 0

    def __post_init__(self):
        if self.kind not in ("exact", "quasi", "bfs"):
            raise ValueError(f"unknown length mode {self.kind!r}")
        if self.kind == "bfs" and self.radius <= 0:
            raise ValueError("bfs length mode needs a positive radius")


def ceil_sqrt(n: int) -> int:
    if n < 0:
        raise ValueError("negative argument")
    s = isqrt(n)
    return s if s * s == n else s + 1


class Group(ABC):
    """Common surface of every supported group kind."""

    @property
    @abstractmethod
    def kind(self) -> str: ...

    @property
    @abstractmethod
    def generators(self) -> tuple[tuple[str, tuple], ...]:
        """Ordered (name, element) pairs; certified generating by construction."""

    @abstractmethod
    def identity(self) -> tuple: ...

    @abstractmethod
    def multiply(self, g, h) -> tuple: ...

    @abstractmethod
    def invert(self, g) -> tuple: ...

    @abstractmethod
    def word_length(self, g) -> LengthValue: ...

    def commutator(self, g, h) -> tuple:
        """g h g^-1 h^-1 in normal form."""
        return self.multiply(
            self.multiply(self.multiply(g, h), self.invert(g)), self.invert(h)
        )

    def symmetric_generators(self) -> tuple[tuple, ...]:
        """Generators and their inverses, deduplicated, in a fixed order."""
        out = []
        seen = set()
        for _, g in self.generators:
            for el in (g, self.invert(g)):
                if el not in seen and el != self.identity():
                    seen.add(el)
                    out.append(el)
        return tuple(out)

    def _bfs_length(self, g) -> LengthValue:
        from endogrow import ball

        census = ball.enumerate_ball(self, self.length_mode.radius)
        return ball.exact_length(census, g)


@dataclass(frozen=True)
class FreeAbelian(Group):
    """Z^rank with the standard basis generators; elements are int tuples."""

    rank: int
    length_mode: LengthMode = LengthMode("exact")

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")

    @property
    def kind(self) -> str:
        return "free_abelian"

    @property
    def generators(self):
        names = _GEN_NAMES_ABELIAN if self.rank <= 3 else None
        out = []
        for i in range(self.rank):
            name = names[i] if names else f"x{i + 1}"
            out.append((name, tuple(1 if j == i else 0 for j in range(self.rank))))
        return tuple(out)

    def identity(self):
        return (0,) * self.rank

    def check(self, g):
        if not isinstance(g, tuple) or len(g) != self.rank:
            raise KindMismatchError(f"not a rank-{self.rank} lattice element: {g!r}")

    def multiply(self, g, h):
        self.check(g)
        self.check(h)
        return tuple(a + b for a, b in zip(g, h))

    def invert(self, g):
        self.check(g)
        return tuple(-a for a in g)

    def word_length(self, g) -> LengthValue:
        self.check(g)
        if self.length_mode.kind == "bfs":
            return self._bfs_length(g)
        return LengthValue(sum(abs(a) for a in g), EXACT)


def free_reduce(letters) -> tuple[int, ...]:
    """Cancel adjacent s s^-1 pairs; confluent, so the result is canonical."""
    out = []
    for x in letters:
        if x == 0:
            raise KindMismatchError("0 is not a letter")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class Free(Group):
    """Free group of given rank; elements are reduced words of signed
    generator indices (1-based, negative for inverses)."""

    rank: int
    length_mode: LengthMode = LengthMode("exact")

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("free groups here have rank >= 1")

    @property
    def kind(self) -> str:
        return "free"

    @property
    def generators(self):
        names = _GEN_NAMES_FREE if self.rank <= 4 else None
        return tuple(
            (names[i] if names else f"a{i + 1}", (i + 1,)) for i in range(self.rank)
        )

    def identity(self):
        return ()

    def check(self, g):
        if not isinstance(g, tuple):
            raise KindMismatchError("free-group elements are tuples of letters")
        for x in g:
            if not isinstance(x, int) or x == 0 or abs(x) > self.rank:
                raise KindMismatchError(f"letter {x!r} outside rank {self.rank}")
        for a, b in zip(g, g[1:]):
            if a == -b:
                raise KindMismatchError("word is not freely reduced")

    def multiply(self, g, h):
        self.check(g)
        self.check(h)
        return free_reduce(g + h)

    def invert(self, g):
        self.check(g)
        return tuple(-x for x in reversed(g))

    def word_length(self, g) -> LengthValue:
        self.check(g)
        if self.length_mode.kind == "bfs":
            return self._bfs_length(g)
        return LengthValue(len(g), EXACT)


@dataclass(frozen=True)
class Heisenberg(Group):
    """Discrete Heisenberg group; elements are integer triples (a, b, c)
    multiplying as (a,b,c)(p,q,r) = (a+p, b+q+a*r, c+r).

    generator_count 3 uses {(1,0,0),(0,1,0),(0,0,1)}, generator_count 2 the
    minimal set {(1,0,0),(0,0,1)}.  The default length is a quasi-length
    (within multiplicative constants of the word metric, which is all that
    m-th-root growth quantities can see); a BFS mode gives exact lengths
    inside a finite radius.
    """

    generator_count: int = 3
    length_mode: LengthMode = LengthMode("quasi")

    def __post_init__(self):
        if self.generator_count not in (2, 3):
            raise ValueError("generator_count must be 2 or 3")

    @property
    def kind(self) -> str:
        return "heisenberg"

    @property
    def generators(self):
        if self.generator_count == 3:
            return (("x", (1, 0, 0)), ("y", (0, 1, 0)), ("z", (0, 0, 1)))
        return (("x", (1, 0, 0)), ("z", (0, 0, 1)))

    def identity(self):
        return (0, 0, 0)

    def check(self, g):
        if not isinstance(g, tuple) or len(g) != 3:
            raise KindMismatchError(f"not a Heisenberg triple: {g!r}")

    def multiply(self, g, h):
        self.check(g)
        self.check(h)
        a, b, c = g
        p, q, r = h
        return (a + p, b + q + a * r, c + r)

    def invert(self, g):
        self.check(g)
        a, b, c = g
        return (-a, a * c - b, -c)

    def quasi_length(self, g) -> int:
        """max(|a|, |c|, ceil(sqrt(|2b - ac|))).

        The centered combination 2b - ac flips sign under inversion, which
        makes this quasi-length exactly symmetric; it stays within
        multiplicative constants of the word metric.
        """
        self.check(g)
        a, b, c = g
        return max(abs(a), abs(c), ceil_sqrt(abs(2 * b - a * c)))

    def word_length(self, g) -> LengthValue:
        self.check(g)
        if self.length_mode.kind == "bfs":
            return self._bfs_length(g)
        if self.length_mode.kind == "quasi":
            return LengthValue(self.quasi_length(g), QUASI_EQUIVALENT)
        raise UnsupportedOperationError(
            "Heisenberg has no closed-form exact length; use quasi or bfs mode"
        )


@dataclass(frozen=True)
class LowerCentralLayer:
    """One step of the lower central series: the subgroup layer_j together
    with the quotient layer_j / layer_{j+1}, both as concrete descriptors."""

    group: Group
    j: int
    subgroup: Group
    quotient: Group


def lower_central_layer(group: Group, j: int) -> LowerCentralLayer:
    """Lower-central-series data, implemented for the kinds whose series is
    known in closed form (Heisenberg: class 2; abelian: class 1)."""
    if j < 1:
        raise UnsupportedOperationError("layer index must be >= 1")
    if isinstance(group, Heisenberg):
        if j == 1:
            return LowerCentralLayer(group, 1, group, FreeAbelian(2))
        if j == 2:
            # the center {(0, n, 0)}, infinite cyclic
            return LowerCentralLayer(group, 2, FreeAbelian(1), FreeAbelian(1))
        if j == 3:
            return LowerCentralLayer(group, 3, FreeAbelian(0), FreeAbelian(0))
        raise UnsupportedOperationError(f"Heisenberg layers stop at 3, got {j}")
    if isinstance(group, FreeAbelian):
        if j == 1:
            return LowerCentralLayer(group, 1, group, group)
        if j == 2:
            return LowerCentralLayer(group, 2, FreeAbelian(0), FreeAbelian(0))
        raise UnsupportedOperationError(f"abelian layers stop at 2, got {j}")
    raise UnsupportedOperationError(
        f"lower central series not implemented for kind {group.kind!r}"
    )
