"""Ground-truth enumeration of Cayley balls by frontier-by-frontier BFS.

Lengths recorded here are exact geodesic distances by construction; the
census is deterministic (generator order, then discovery order) and is the
reference every closed-form or quasi length is checked against.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from endogrow.groups import Group, LengthValue, OutOfBallError, EXACT
from endogrow.products import Semidirect, Sublattice
from endogrow.groups import FreeAbelian

DEFAULT_BUDGET = 5_000_000
BUDGET_ENV_VAR = "ENDOGROW_BUDGET"


def _resolve_budget(budget):
    if budget is not None:
        return int(budget)
    env = os.environ.get(BUDGET_ENV_VAR)
    if env:
        return int(env)
    return DEFAULT_BUDGET


@dataclass(frozen=True)
class BallCensus:
    """Exact lengths for every element within completed_radius of the identity.

    counts[n] is the cumulative ball size |B(n)|.  If the element budget ran
    out, complete is False and only fully enumerated radii are reported.
    """

    group: Group
    radius: int
    completed_radius: int
    counts: tuple[int, ...]
    lengths: dict = field(compare=False, hash=False)
    complete: bool = True

    def count_at(self, n: int) -> int:
        if n > self.completed_radius:
            raise OutOfBallError(f"radius {n} beyond completed radius {self.completed_radius}")
        return self.counts[n]


_CENSUS_CACHE: dict = {}


def enumerate_ball(group: Group, radius: int, budget: int | None = None) -> BallCensus:
    """Breadth-first enumeration of the ball of the given radius.

    Deterministic; dedupes on canonical normal forms, so each element's
    recorded length is its true geodesic length.  Exceeding the budget
    yields a partial census flagged incomplete (completed radii stay exact).
    """
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    budget = _resolve_budget(budget)
    cache_key = (group, radius, budget)
    cached = _CENSUS_CACHE.get(cache_key)
    if cached is not None:
        return cached

    identity = group.identity()
    lengths = {identity: 0}
    counts = [1]
    frontier = [identity]
    gens = group.symmetric_generators()
    completed = 0
    complete = True
    for n in range(1, radius + 1):
        next_frontier = []
        overflow = False
        for g in frontier:
            for s in gens:
                x = group.multiply(g, s)
                if x not in lengths:
                    lengths[x] = n
                    next_frontier.append(x)
                    if len(lengths) > budget:
                        overflow = True
                        break
            if overflow:
                break
        if overflow:
            # drop the partially discovered frontier: only complete radii count
            for x in next_frontier:
                del lengths[x]
            complete = False
            break
        counts.append(counts[-1] + len(next_frontier))
        completed = n
        frontier = next_frontier
        if not frontier:
            # ball stabilized (finite group); remaining radii add nothing
            counts.extend(counts[-1] for _ in range(radius - n))
            completed = radius
            break
    census = BallCensus(
        group=group,
        radius=radius,
        completed_radius=completed,
        counts=tuple(counts[: completed + 1]),
        lengths=lengths,
        complete=complete,
    )
    _CENSUS_CACHE[cache_key] = census
    return census


def exact_length(census: BallCensus, g) -> LengthValue:
    """Exact geodesic length of an enumerated element."""
    found = census.lengths.get(g)
    if found is None:
        raise OutOfBallError(
            f"element {g!r} not within the enumerated radius {census.completed_radius}"
        )
    return LengthValue(found, EXACT)


@dataclass(frozen=True)
class DistortionProfile:
    """values[n] = max intrinsic subgroup length over subgroup elements lying
    in the ambient ball of radius n (values[0] == 0)."""

    values: tuple[int, ...]
    complete: bool

    @property
    def radius(self) -> int:
        return len(self.values) - 1


def distortion_profile(group: Group, subgroup, radius: int, budget=None) -> DistortionProfile:
    """Exact distortion measurements from a BFS census.

    Supported embeddings: the base lattice of a semidirect product, and a
    sublattice of a free abelian ambient group.
    """
    if isinstance(group, Semidirect) and (subgroup is None or subgroup == "base"):
        member = group.is_base_element
        intrinsic = group.base_intrinsic_length
    elif isinstance(group, FreeAbelian) and isinstance(subgroup, Sublattice):
        if subgroup.ambient_rank != group.rank:
            raise ValueError("sublattice ambient rank mismatch")

        def member(g):
            return subgroup.contains(g)

        def intrinsic(g):
            return subgroup.intrinsic_length(g).value

    else:
        raise ValueError("unsupported group/subgroup pair for distortion")

    census = enumerate_ball(group, radius, budget)
    top = census.completed_radius
    best_at = [0] * (top + 1)
    for element, n in census.lengths.items():
        if member(element):
            value = intrinsic(element)
            if value > best_at[n]:
                best_at[n] = value
    values = [0] * (top + 1)
    running = 0
    for n in range(top + 1):
        running = max(running, best_at[n])
        values[n] = running
    return DistortionProfile(tuple(values), census.complete and top == radius)
