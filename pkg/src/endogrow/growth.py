"""Growth-rate computation and estimation for endomorphisms.

Two routes are provided and cross-checked throughout: an exact spectral
route for the kinds where the growth rate reduces to eigenvalue moduli, and
a direct route that iterates the endomorphism on the generators and takes
m-th roots of the recorded word lengths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from endogrow.endos import (
    Endomorphism,
    HeisenbergEndo,
    MatrixEndo,
    ProductEndo,
    QuotientEndo,
    SemidirectEndo,
    WordEndo,
    induce_on_quotient,
    restrict,
)
from endogrow.groups import (
    EXACT,
    LowerCentralLayer,
    OutOfBallError,
    UnsupportedOperationError,
    lower_central_layer,
)
from endogrow.intmat import IntMatrix, spectral_radius
from endogrow.products import Semidirect, Sublattice

DEFAULT_CONVERGENCE_TOL = 0.05


def _root(value: int, m: int) -> float:
    if value < 0:
        raise ValueError("lengths are nonnegative")
    if value == 0:
        return 0.0
    return math.exp(math.log(value) / m)


@dataclass(frozen=True)
class GrowthEstimate:
    """Diagnostics from iterating an endomorphism on the generators.

    table[m-1] is the largest word length among the m-th images of the
    generators; roots are the m-th roots; inf_bound their minimum (which
    dominates the limit, by subadditivity); ratio_estimate the geometric
    mean of consecutive-table ratios over the trailing half, a windowed
    ratio estimator that converges fast generically and stays sane under
    the periodic oscillation a plain median chokes on.
    """

    table: tuple[int, ...]
    roots: tuple[float, ...]
    inf_bound: float
    ratio_estimate: float
    method: str
    exactness: str
    status: str  # "converged" | "truncated" | "trivial"
    requested: int
    convergence_tol: float

    @property
    def max_power(self) -> int:
        return len(self.table)

    @property
    def ratios(self) -> tuple[float, ...]:
        return tuple(
            float(Fraction(self.table[m + 1], self.table[m]))
            for m in range(len(self.table) - 1)
            if self.table[m]
        )


def estimate_from_table(
    table,
    requested: int,
    method: str,
    exactness: str,
    convergence_tol: float = DEFAULT_CONVERGENCE_TOL,
) -> GrowthEstimate:
    """Roots, bounds and status from an already-computed length table."""
    table = tuple(int(k) for k in table)
    roots = tuple(_root(k, m) for m, k in enumerate(table, start=1))
    if not table:
        return GrowthEstimate((), (), 0.0, 0.0, method, exactness, "trivial", requested, convergence_tol)
    if table[-1] == 0:
        return GrowthEstimate(
            table, roots, 0.0, 0.0, method, exactness, "trivial", requested, convergence_tol
        )
    inf_bound = min(roots)
    ratios = [
        float(Fraction(table[m + 1], table[m])) for m in range(len(table) - 1)
    ]
    if ratios:
        # geometric mean over the trailing-half window: it telescopes to
        # (K_M / K_{M-w})^(1/w), which cancels bounded oscillation that a
        # median of consecutive ratios cannot see past
        window = ratios[-max(1, len(ratios) // 2) :]
        ratio_estimate = math.exp(sum(math.log(r) for r in window) / len(window))
        spread = max(window) - min(window)
        settled = len(window) >= 2 and spread <= convergence_tol * max(1.0, ratio_estimate)
    else:
        window = []
        ratio_estimate = roots[-1]
        settled = False
    if len(table) < requested:
        status = "truncated"
    elif settled:
        status = "converged"
    else:
        status = "truncated"
    return GrowthEstimate(
        table,
        roots,
        inf_bound,
        ratio_estimate,
        method,
        exactness,
        status,
        requested,
        convergence_tol,
    )


def growth_table(
    endo: Endomorphism,
    max_power: int,
    convergence_tol: float = DEFAULT_CONVERGENCE_TOL,
) -> GrowthEstimate:
    """Iterate the endomorphism on the generators and record, for each power
    m <= max_power, the largest word length among the generator images.

    A zero entry means the power kills every generator, hence all later
    entries vanish too: the estimate is marked trivial with rate 0.  When a
    BFS length runs out of radius the table is truncated at the largest
    valid power.
    """
    if max_power < 1:
        raise ValueError("max_power must be >= 1")
    group = endo.group
    current = [g for _, g in group.generators]
    table = []
    exactness = EXACT
    for _ in range(max_power):
        current = [endo.apply(g) for g in current]
        try:
            measured = [group.word_length(g) for g in current]
        except OutOfBallError:
            break
        if any(lv.exactness != EXACT for lv in measured):
            exactness = "quasi-equivalent"
        k = max((lv.value for lv in measured), default=0)
        table.append(k)
        if k == 0:
            break
    mode = getattr(group, "length_mode", None)
    method = f"lengths:{mode.kind if mode is not None else 'exact'}"
    return estimate_from_table(table, max_power, method, exactness, convergence_tol)


def _torsion_orbit_rate(endo: QuotientEndo) -> float:
    """Growth contribution of the torsion part: 0 if every generator orbit
    dies, else 1 (orbits in a finite group are eventually periodic)."""
    group = endo.group
    if not group.torsion_moduli:
        return 0.0
    alive = False
    for _, gen in group.generators[: len(group.torsion_moduli)]:
        seen = set()
        g = gen
        while g not in seen:
            seen.add(g)
            g = endo.apply(g)
        # g is the first repeated point; the orbit dies iff it is the identity
        if g != group.identity():
            alive = True
            break
    return 1.0 if alive else 0.0


def exact_growth_rate(endo: Endomorphism, tol: float = 1e-12) -> float:
    """Exact-route growth rate for kinds where it is a spectral quantity.

    Free abelian: largest eigenvalue modulus of the matrix.  Finitely
    generated abelian with torsion: free part spectral radius combined with
    the bounded-orbit contribution of the torsion part.  Heisenberg: the
    layer formula (see nilpotent_growth_rate).  Products: max over factors.
    Semidirect blocks: max of the two block rates, valid when the base is
    undistorted (finite-order action); otherwise raises.
    """
    if isinstance(endo, MatrixEndo):
        if endo.group.rank == 0:
            return 0.0
        return spectral_radius(endo.matrix, tol)
    if isinstance(endo, QuotientEndo):
        group = endo.group
        if group.is_trivial:
            return 0.0
        parts = []
        if group.free_rank:
            parts.append(spectral_radius(endo.free_block(), tol))
        if group.torsion_moduli:
            parts.append(_torsion_orbit_rate(endo))
        return max(parts)
    if isinstance(endo, HeisenbergEndo):
        return nilpotent_growth_rate(endo).combined
    if isinstance(endo, ProductEndo):
        return max(exact_growth_rate(f, tol) for f in endo.factors)
    if isinstance(endo, SemidirectEndo):
        if not endo.group.action_is_finite_order:
            raise UnsupportedOperationError(
                "exact block formula requires an undistorted base "
                "(finite-order action); the base here is exponentially distorted"
            )
        return max(
            spectral_radius(endo.base_matrix, tol),
            spectral_radius(endo.quotient_matrix, tol),
        )
    if isinstance(endo, WordEndo):
        raise UnsupportedOperationError(
            "free-group endomorphisms have no exact spectral route; use growth_table"
        )
    raise UnsupportedOperationError(f"no exact route for {type(endo).__name__}")


def abelian_growth_rate(endo, tol: float = 1e-12) -> float:
    """Exact growth rate on an abelian kind (matrix or quotient endo)."""
    if not isinstance(endo, (MatrixEndo, QuotientEndo)):
        raise UnsupportedOperationError("abelian route needs a matrix or quotient endo")
    return exact_growth_rate(endo, tol)


@dataclass(frozen=True)
class NilpotentRate:
    """Layer-by-layer growth data for a class-2 nilpotent endomorphism."""

    layer_rates: tuple[float, float]  # (on group/center, on center)
    combined: float  # max(layer_1, layer_2 ** (1/2))
    no_exponent_max: float  # max of the raw layer rates (NOT the growth rate)


def nilpotent_growth_rate(endo: HeisenbergEndo, tol: float = 1e-12) -> NilpotentRate:
    """Combine the abelian layer rates with exponents 1/k.

    The center sits at depth 2 in the lower central series, so its rate
    enters through a square root; the raw maximum without the exponent is
    reported alongside because it genuinely differs (the equality fails
    without the exponents).
    """
    layer2 = lower_central_layer(endo.group, 2)
    ab = induce_on_quotient(endo, layer2)  # group modulo center
    center = restrict(endo, layer2)
    rate1 = exact_growth_rate(ab, tol)
    rate2 = exact_growth_rate(center, tol)
    combined = max(rate1, math.sqrt(rate2))
    return NilpotentRate((rate1, rate2), combined, max(rate1, rate2))


def power_compatibility_check(
    endo: Endomorphism, n: int, max_power: int = 16, tol: float = 1e-12
) -> tuple[float, float]:
    """(rate of endo**n, (rate of endo)**n), by the exact route when one
    exists and by table ratio estimates otherwise."""
    if n < 1:
        raise ValueError("n must be >= 1")
    try:
        base = exact_growth_rate(endo, tol)
        powered = exact_growth_rate(endo.power(n), tol)
        return powered, base**n
    except UnsupportedOperationError:
        base = growth_table(endo, max_power).ratio_estimate
        powered = growth_table(endo.power(n), max_power).ratio_estimate
        return powered, base**n


@dataclass(frozen=True)
class RateVerdict:
    """Three-valued answer to: does the orbit of this element grow at rate
    at most the threshold?  Sampled limsup, never certain near the line."""

    element: tuple
    threshold: float
    verdict: str  # "in" | "out" | "unknown"
    margin: float
    roots: tuple[float, ...]
    estimate: float


def rate_probe(
    endo: Endomorphism,
    element,
    threshold: float,
    max_power: int = 40,
    margin: float = 0.05,
) -> RateVerdict:
    """Sample |endo^m(element)|^(1/m) and classify against the threshold.

    The estimate is the max root over the trailing quarter of the sampled
    range (a limsup proxy).  Within `margin` of the threshold the verdict
    is honestly "unknown".
    """
    if threshold <= 1:
        raise ValueError("threshold must exceed 1")
    if max_power < 4:
        raise ValueError("max_power must be >= 4")
    group = endo.group
    roots = []
    g = element
    for m in range(1, max_power + 1):
        g = endo.apply(g)
        try:
            lv = group.word_length(g)
        except OutOfBallError:
            break
        roots.append(_root(lv.value, m))
    if not roots:
        raise UnsupportedOperationError("no orbit samples available")
    tail = roots[-max(1, len(roots) // 4) :]
    estimate = max(tail)
    if estimate <= threshold - margin:
        verdict = "in"
    elif estimate >= threshold + margin:
        verdict = "out"
    else:
        verdict = "unknown"
    return RateVerdict(element, threshold, verdict, margin, tuple(roots), estimate)


@dataclass(frozen=True)
class ExtensionReport:
    """Growth rates of an endomorphism on a group, an invariant subgroup, and
    the quotient, with the two comparison inequalities evaluated."""

    full: float
    restricted: float
    quotient: float
    tol: float
    quotient_le_full: bool
    full_le_max: bool

    @property
    def all_hold(self) -> bool:
        return self.quotient_le_full and self.full_le_max


def extension_bounds(endo: Endomorphism, subgroup, tol: float = 1e-9) -> ExtensionReport:
    """Compute rate(full), rate(restricted), rate(quotient) by the exact
    routes and evaluate quotient <= full and full <= max(restricted, quotient)
    within tol."""
    if isinstance(endo, MatrixEndo) and isinstance(subgroup, Sublattice):
        full = exact_growth_rate(endo)
        restricted_rate = exact_growth_rate(restrict(endo, subgroup))
        quotient_rate = (
            full if subgroup.rank == 0 else exact_growth_rate(induce_on_quotient(endo, subgroup))
        )
    elif isinstance(endo, HeisenbergEndo) and isinstance(subgroup, LowerCentralLayer):
        full = nilpotent_growth_rate(endo).combined
        restricted_rate = exact_growth_rate(restrict(endo, subgroup))
        quotient_rate = (
            full
            if subgroup.j == 3
            else exact_growth_rate(induce_on_quotient(endo, subgroup))
        )
    else:
        raise UnsupportedOperationError(
            "extension bounds support matrix endos with sublattices and "
            "Heisenberg endos with lower-central layers"
        )
    return ExtensionReport(
        full=full,
        restricted=restricted_rate,
        quotient=quotient_rate,
        tol=tol,
        quotient_le_full=quotient_rate <= full + tol,
        full_le_max=full <= max(restricted_rate, quotient_rate) + tol,
    )


@dataclass(frozen=True)
class DistortionRate:
    """The compression rate of the base lattice inside a semidirect product.

    table[m-1] is the exact max L1 norm of (product of m action-generator
    factors) applied to a base generator; estimate carries the m-th-root
    diagnostics; spectral_value is the closed-form rate for an abelian
    acting group (max spectral radius over the action generators and their
    inverses), and sqrt_spectral its square root, the growth rate of the
    distortion function itself.
    """

    table: tuple[int, ...]
    estimate: GrowthEstimate
    spectral_value: float
    sqrt_spectral: float


def _signed_exponent_vectors(rank: int, total: int):
    """All integer vectors e with sum |e_i| <= total and matching parity."""
    if rank > 3:
        raise UnsupportedOperationError("action exponent enumeration capped at rank 3")

    def rec(prefix, remaining, idx):
        if idx == rank:
            if remaining % 2 == 0:
                yield tuple(prefix)
            return
        for v in range(-remaining, remaining + 1):
            prefix.append(v)
            yield from rec(prefix, remaining - abs(v), idx + 1)
            prefix.pop()

    yield from rec([], total, 0)


def _matrix_max_column_l1(m: IntMatrix) -> int:
    return max(
        sum(abs(m.get(i, j)) for i in range(m.rows)) for j in range(m.cols)
    )


def distortion_rate(group: Semidirect, max_power: int, tol: float = 1e-12) -> DistortionRate:
    """Exact table of worst-case action stretches and its limit diagnostics.

    For an abelian acting group a length-m product of action generators
    collapses to a product of powers with total exponent of the right
    parity, so the exact max over words reduces to a finite max over
    exponent vectors.
    """
    if max_power < 1:
        raise ValueError("max_power must be >= 1")
    table = []
    for m in range(1, max_power + 1):
        best = 0
        for e in _signed_exponent_vectors(group.quotient_rank, m):
            stretched = _matrix_max_column_l1(group.action_of(e))
            if stretched > best:
                best = stretched
        table.append(best)
    estimate = estimate_from_table(table, max_power, "action-word-table", EXACT)
    spectral = 1.0
    for i in range(group.quotient_rank):
        spectral = max(
            spectral,
            spectral_radius(group.action[i], tol),
            spectral_radius(group._inverse_action[i], tol),
        )
    return DistortionRate(tuple(table), estimate, spectral, math.sqrt(spectral))
