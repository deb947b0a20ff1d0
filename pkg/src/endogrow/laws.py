"""Named, runnable checks of the growth-rate laws on concrete instances.

Each law id maps to a runner that measures the quantities the law relates
and passes or fails within a stated tolerance.  Instances violating a law's
hypotheses are reported as inapplicable, never as failures.  All randomized
instances derive from the configured seed, so reports are reproducible.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from endogrow import specio
from endogrow.ball import distortion_profile
from endogrow.endos import (
    HeisenbergEndo,
    InvarianceError,
    MatrixEndo,
    ProductEndo,
    SemidirectEndo,
    WordEndo,
    induce_on_quotient,
    restrict,
)
from endogrow.groups import (
    EXACT,
    Free,
    FreeAbelian,
    LowerCentralLayer,
    UnsupportedOperationError,
)
from endogrow.intmat import IntMatrix, spectral_radius
from endogrow.products import PolycyclicTower, Semidirect, Sublattice
from endogrow.growth import (
    distortion_rate,
    exact_growth_rate,
    extension_bounds,
    growth_table,
    nilpotent_growth_rate,
)


@dataclass(frozen=True)
class LawConfig:
    seed: int = 20250811
    tolerance: float | None = None  # overrides the per-law default when set
    radius: int | None = None
    max_power: int | None = None
    budget: int | None = None


@dataclass(frozen=True)
class LawCheck:
    id: str
    instance: str
    values: dict
    tolerance: float
    verdict: str  # "pass" | "fail" | "inapplicable"

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


class UnknownLawError(ValueError):
    pass


def _verdict(ok: bool) -> str:
    return "pass" if ok else "fail"


def _tol(config: LawConfig, default: float) -> float:
    return default if config.tolerance is None else config.tolerance


def _mp(config: LawConfig, default: int) -> int:
    return default if config.max_power is None else config.max_power


def _radius(config: LawConfig, default: int) -> int:
    return default if config.radius is None else config.radius


def _parse(instance: dict) -> specio.Instance:
    return specio.parse_instance(instance, "instance")


def _describe(instance: dict) -> str:
    import json

    return json.dumps(instance, sort_keys=True, separators=(",", ":"))


# -- individual law runners ---------------------------------------------------


def _law_fekete(instance, config):
    """Submultiplicativity of the generator-image length table, exact."""
    tol = _tol(config, 0.0)
    parsed = _parse(instance)
    est = growth_table(parsed.endo, _mp(config, parsed.options.max_power))
    if est.exactness != EXACT:
        return LawCheck(
            "thm2.2.1-fekete",
            _describe(instance),
            {"reason": "needs exact word lengths"},
            tol,
            "inapplicable",
        )
    table = est.table
    violations = 0
    for i in range(1, len(table) + 1):
        for j in range(1, len(table) + 1 - i):
            if table[i + j - 1] > table[i - 1] * table[j - 1]:
                violations += 1
    prefix_infs = [min(est.roots[: k + 1]) for k in range(len(est.roots))]
    monotone = all(b <= a + 1e-15 for a, b in zip(prefix_infs, prefix_infs[1:]))
    values = {
        "powers": len(table),
        "pair_violations": violations,
        "inf_bound": est.inf_bound,
        "prefix_inf_nonincreasing": monotone,
    }
    return LawCheck(
        "thm2.2.1-fekete",
        _describe(instance),
        values,
        tol,
        _verdict(violations == 0 and monotone),
    )


def _law_generator_bound(instance, config):
    """table[m] <= table[1]**m as exact integers, over seeded random free
    endomorphisms."""
    tol = _tol(config, 0.0)
    group = specio.parse_group(instance["group"], "instance.group")
    if not isinstance(group, Free):
        return LawCheck(
            "thm2.2.2-generator-bound",
            _describe(instance),
            {"reason": "needs a free group"},
            tol,
            "inapplicable",
        )
    params = instance.get("random_endos", {})
    count = params.get("count", 50)
    max_len = params.get("max_image_length", 4)
    powers = params.get("powers", 7)
    rng = random.Random(instance.get("seed", config.seed))
    violations = 0
    checked = 0
    for _ in range(count):
        images = []
        for _ in range(group.rank):
            length = rng.randint(1, max_len)
            word = []
            for _ in range(length):
                letter = rng.choice([s for s in range(-group.rank, group.rank + 1) if s])
                if word and word[-1] == -letter:
                    letter = -letter
                word.append(letter)
            images.append(tuple(word))
        endo = WordEndo(group, tuple(images))
        est = growth_table(endo, powers)
        k1 = est.table[0] if est.table else 0
        for m, km in enumerate(est.table, start=1):
            checked += 1
            if km > k1**m:
                violations += 1
    values = {"endos": count, "roots_checked": checked, "violations": violations}
    return LawCheck(
        "thm2.2.2-generator-bound",
        _describe(instance),
        values,
        tol,
        _verdict(violations == 0),
    )


def _law_power(instance, config):
    """rate(endo**n) == rate(endo)**n, exact route when available."""
    parsed = _parse(instance)
    n = instance.get("n", 2)
    try:
        base = exact_growth_rate(parsed.endo)
        powered = exact_growth_rate(parsed.endo.power(n))
        tol = _tol(config, 1e-6)
        gap = abs(powered - base**n) / max(1.0, base**n)
        ok = gap <= tol
        values = {"n": n, "rate_of_power": powered, "power_of_rate": base**n, "relative_gap": gap}
    except UnsupportedOperationError:
        tol = _tol(config, 0.1)
        mp = _mp(config, parsed.options.max_power)
        powered = growth_table(parsed.endo.power(n), mp).ratio_estimate
        base = growth_table(parsed.endo, mp).ratio_estimate
        gap = abs(powered - base**n)
        ok = gap <= tol
        values = {"n": n, "rate_of_power": powered, "power_of_rate": base**n, "gap": gap}
    return LawCheck("thm2.2.3-power", _describe(instance), values, tol, _verdict(ok))


def _law_finite_index(instance, config):
    """Restriction to a finite-index invariant sublattice has the same rate."""
    tol = _tol(config, 1e-9)
    parsed = _parse(instance)
    sub = parsed.subgroup
    if not isinstance(sub, Sublattice) or sub.index is None:
        return LawCheck(
            "thm3.1-finite-index",
            _describe(instance),
            {"reason": "subgroup is not finite index"},
            tol,
            "inapplicable",
        )
    try:
        restricted = restrict(parsed.endo, sub)
    except InvarianceError as exc:
        return LawCheck(
            "thm3.1-finite-index",
            _describe(instance),
            {"reason": str(exc)},
            tol,
            "inapplicable",
        )
    full = exact_growth_rate(parsed.endo)
    on_sub = exact_growth_rate(restricted)
    values = {"index": sub.index, "rate_full": full, "rate_restricted": on_sub}
    return LawCheck(
        "thm3.1-finite-index",
        _describe(instance),
        values,
        tol,
        _verdict(abs(full - on_sub) <= tol),
    )


def _random_invariant_instances(rng, count):
    """Seeded (matrix endo, invariant sublattice, complemented?) triples.

    Three families: scalar lattices d*Z^n (invariant under everything),
    coordinate sublattices with block-triangular matrices (complemented),
    and scaled coordinate sublattices (torsion quotients).
    """
    out = []
    while len(out) < count:
        n = rng.choice([2, 3])
        family = rng.choice(["scalar", "coordinate", "scaled"])
        entries = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        if family == "scalar":
            d = rng.choice([2, 3])
            basis = [[d if i == j else 0 for j in range(n)] for i in range(n)]
            complemented = False
        else:
            k = rng.randint(1, n - 1)
            block = sorted(rng.sample(range(n), k))
            outside = [i for i in range(n) if i not in block]
            # images of block generators stay in the block span
            for j in block:
                for i in outside:
                    entries[j][i] = 0
            d = 1 if family == "coordinate" else rng.choice([2, 3])
            basis = [[d if (j < len(block) and i == block[j]) else 0 for j in range(k)] for i in range(n)]
            complemented = family == "coordinate"
        group = FreeAbelian(n)
        endo = MatrixEndo(group, IntMatrix.from_rows(entries))
        sub = Sublattice(n, IntMatrix.from_rows(basis))
        out.append((endo, sub, complemented))
    return out


def _law_quotient(instance, config):
    """rate on the quotient <= rate on the group."""
    tol = _tol(config, 0.05)
    if "random_instances" in instance:
        rng = random.Random(instance.get("seed", config.seed))
        worst = -math.inf
        count = instance["random_instances"]
        for endo, sub, _ in _random_invariant_instances(rng, count):
            report = extension_bounds(endo, sub, tol)
            worst = max(worst, report.quotient - report.full)
        values = {"instances": count, "worst_quotient_minus_full": worst}
        return LawCheck(
            "lemma3.2-quotient", _describe(instance), values, tol, _verdict(worst <= tol)
        )
    parsed = _parse(instance)
    if isinstance(parsed.endo, HeisenbergEndo) and isinstance(parsed.subgroup, LowerCentralLayer):
        quotient_rate = exact_growth_rate(induce_on_quotient(parsed.endo, parsed.subgroup))
        full = growth_table(parsed.endo, _mp(config, 14)).ratio_estimate
        values = {"rate_quotient": quotient_rate, "rate_full_estimate": full}
        return LawCheck(
            "lemma3.2-quotient",
            _describe(instance),
            values,
            tol,
            _verdict(quotient_rate <= full + tol),
        )
    try:
        report = extension_bounds(parsed.endo, parsed.subgroup, tol)
    except InvarianceError as exc:
        return LawCheck(
            "lemma3.2-quotient", _describe(instance), {"reason": str(exc)}, tol, "inapplicable"
        )
    values = {"rate_full": report.full, "rate_quotient": report.quotient}
    return LawCheck(
        "lemma3.2-quotient",
        _describe(instance),
        values,
        tol,
        _verdict(report.quotient_le_full),
    )


def _law_extension(instance, config):
    """rate on the group <= max(rate on subgroup, rate on quotient)."""
    tol = _tol(config, 0.05)
    if "random_instances" in instance:
        rng = random.Random(instance.get("seed", config.seed))
        worst = -math.inf
        count = instance["random_instances"]
        for endo, sub, _ in _random_invariant_instances(rng, count):
            report = extension_bounds(endo, sub, tol)
            worst = max(worst, report.full - max(report.restricted, report.quotient))
        values = {"instances": count, "worst_full_minus_max": worst}
        return LawCheck(
            "thm3.3-extension", _describe(instance), values, tol, _verdict(worst <= tol)
        )
    parsed = _parse(instance)
    if isinstance(parsed.endo, HeisenbergEndo) and isinstance(parsed.subgroup, LowerCentralLayer):
        sub_rate = exact_growth_rate(restrict(parsed.endo, parsed.subgroup))
        quotient_rate = exact_growth_rate(induce_on_quotient(parsed.endo, parsed.subgroup))
        full = growth_table(parsed.endo, _mp(config, 14)).ratio_estimate
        ok = full <= max(sub_rate, quotient_rate) + tol
        values = {
            "rate_full_estimate": full,
            "rate_restricted": sub_rate,
            "rate_quotient": quotient_rate,
        }
        return LawCheck("thm3.3-extension", _describe(instance), values, tol, _verdict(ok))
    try:
        report = extension_bounds(parsed.endo, parsed.subgroup, tol)
    except InvarianceError as exc:
        return LawCheck(
            "thm3.3-extension", _describe(instance), {"reason": str(exc)}, tol, "inapplicable"
        )
    values = {
        "rate_full": report.full,
        "rate_restricted": report.restricted,
        "rate_quotient": report.quotient,
    }
    return LawCheck(
        "thm3.3-extension", _describe(instance), values, tol, _verdict(report.full_le_max)
    )


def _law_complement(instance, config):
    """Equality rate = max(subgroup, quotient) when the subgroup is generated
    by part of the generating system."""
    tol = _tol(config, 1e-6)
    rng = random.Random(instance.get("seed", config.seed))
    count = instance.get("random_instances", 20)
    worst = 0.0
    checked = 0
    while checked < count:
        endo, sub, complemented = _random_invariant_instances(rng, 1)[0]
        if not complemented:
            continue
        report = extension_bounds(endo, sub, tol)
        gap = abs(report.full - max(report.restricted, report.quotient))
        worst = max(worst, gap)
        checked += 1
    values = {"instances": checked, "worst_equality_gap": worst}
    return LawCheck(
        "cor3.4-complement", _describe(instance), values, tol, _verdict(worst <= tol)
    )


def _law_abelian(instance, config):
    """Exact spectral rate against the iterated-table estimators."""
    tol = _tol(config, 0.05)
    if "random_instances" in instance:
        rng = random.Random(instance.get("seed", config.seed))
        count = instance["random_instances"]
        mp = _mp(config, 30)
        worst_est = 0.0
        worst_inf = -math.inf
        done = 0
        while done < count:
            n = rng.choice([2, 3])
            mat = IntMatrix.from_rows(
                [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
            )
            exact = spectral_radius(mat)
            if exact < 1.0:
                continue
            endo = MatrixEndo(FreeAbelian(n), mat)
            est = growth_table(endo, mp)
            gap = min(abs(est.ratio_estimate - exact), abs(est.inf_bound - exact))
            worst_est = max(worst_est, gap)
            worst_inf = max(worst_inf, exact - est.inf_bound)
            done += 1
        values = {
            "instances": count,
            "worst_estimate_gap": worst_est,
            "worst_inf_deficit": worst_inf,
        }
        ok = worst_est <= tol and worst_inf <= 1e-9
        return LawCheck("thm4.1-abelian", _describe(instance), values, tol, _verdict(ok))
    parsed = _parse(instance)
    exact = exact_growth_rate(parsed.endo)
    est = growth_table(parsed.endo, _mp(config, parsed.options.max_power))
    gap = min(abs(est.ratio_estimate - exact), abs(est.inf_bound - exact))
    values = {
        "rate_exact": exact,
        "ratio_estimate": est.ratio_estimate,
        "inf_bound": est.inf_bound,
        "estimate_gap": gap,
    }
    ok = gap <= tol and est.inf_bound >= exact - 1e-9
    return LawCheck("thm4.1-abelian", _describe(instance), values, tol, _verdict(ok))


def _law_lcs(instance, config):
    """rate >= (rate on layer_j quotient)**(1/j) for the supported layers."""
    tol = _tol(config, 1e-9)
    parsed = _parse(instance)
    if not isinstance(parsed.endo, HeisenbergEndo):
        return LawCheck(
            "lemma4.3-lcs",
            _describe(instance),
            {"reason": "needs a Heisenberg endo"},
            tol,
            "inapplicable",
        )
    rate = nilpotent_growth_rate(parsed.endo)
    full = rate.combined
    ok = True
    values = {"rate_full": full}
    for j, layer_rate in ((1, rate.layer_rates[0]), (2, rate.layer_rates[1])):
        bound = layer_rate ** (1.0 / j)
        values[f"layer{j}_root"] = bound
        ok = ok and full >= bound - tol
    return LawCheck("lemma4.3-lcs", _describe(instance), values, tol, _verdict(ok))


def _law_nilpotent(instance, config):
    """Layer formula with 1/k exponents against the quasi-length estimate."""
    tol = _tol(config, 0.1)
    parsed = _parse(instance)
    rate = nilpotent_growth_rate(parsed.endo)
    est = growth_table(parsed.endo, _mp(config, 14))
    gap = abs(est.ratio_estimate - rate.combined)
    values = {
        "layer_rates": list(rate.layer_rates),
        "combined": rate.combined,
        "ratio_estimate": est.ratio_estimate,
        "gap": gap,
    }
    return LawCheck(
        "thm4.4-nilpotent", _describe(instance), values, tol, _verdict(gap <= tol)
    )


def _law_counterexample(instance, config):
    """The exponent in the layer formula is necessary: without it the max
    differs from the rate; with it they agree."""
    tol = _tol(config, 1e-9)
    parsed = _parse(instance)
    rate = nilpotent_growth_rate(parsed.endo)
    est = growth_table(parsed.endo, _mp(config, 14))
    with_exponent_ok = abs(rate.combined - max(rate.layer_rates[0], math.sqrt(rate.layer_rates[1]))) <= tol
    differs = abs(rate.no_exponent_max - rate.combined) > 0.5
    estimate_ok = abs(est.ratio_estimate - rate.combined) <= 0.1
    values = {
        "combined": rate.combined,
        "no_exponent_max": rate.no_exponent_max,
        "ratio_estimate": est.ratio_estimate,
    }
    return LawCheck(
        "thm4.4-counterexample",
        _describe(instance),
        values,
        tol,
        _verdict(with_exponent_ok and differs and estimate_ok),
    )


def _law_direct(instance, config):
    """Product rate equals the max of the factor rates."""
    tol = _tol(config, 0.05)
    parsed = _parse(instance)
    endo = parsed.endo
    if not isinstance(endo, ProductEndo):
        return LawCheck(
            "lemma5.1-direct",
            _describe(instance),
            {"reason": "needs a product endo"},
            tol,
            "inapplicable",
        )
    factor_rates = [exact_growth_rate(f) for f in endo.factors]
    formula = max(factor_rates)
    product_exact = exact_growth_rate(endo)
    est = growth_table(endo, _mp(config, parsed.options.max_power))
    values = {
        "factor_rates": factor_rates,
        "rate_product": product_exact,
        "ratio_estimate": est.ratio_estimate,
    }
    ok = abs(product_exact - formula) <= 1e-9 and abs(est.ratio_estimate - formula) <= tol
    return LawCheck("lemma5.1-direct", _describe(instance), values, tol, _verdict(ok))


def _law_free(instance, config):
    """Same max formula over free-product factors (factor-preserving endos)."""
    tol = _tol(config, 0.05)
    parsed = _parse(instance)
    endo = parsed.endo
    if not isinstance(endo, ProductEndo):
        return LawCheck(
            "lemma5.2-free",
            _describe(instance),
            {"reason": "needs a factor-preserving product endo"},
            tol,
            "inapplicable",
        )
    factor_rates = [exact_growth_rate(f) for f in endo.factors]
    formula = max(factor_rates)
    est = growth_table(endo, _mp(config, parsed.options.max_power))
    values = {"factor_rates": factor_rates, "ratio_estimate": est.ratio_estimate}
    return LawCheck(
        "lemma5.2-free",
        _describe(instance),
        values,
        tol,
        _verdict(abs(est.ratio_estimate - formula) <= tol),
    )


def _law_semidirect(instance, config):
    """Block formula max(rate on base, rate on acting group) for semidirect
    products with undistorted base (finite-order action)."""
    tol = _tol(config, 0.15)
    parsed = _parse(instance)
    endo = parsed.endo
    if not isinstance(endo, SemidirectEndo):
        return LawCheck(
            "thm5.4-semidirect",
            _describe(instance),
            {"reason": "needs a semidirect block endo"},
            tol,
            "inapplicable",
        )
    group = endo.group
    if not group.action_is_finite_order:
        return LawCheck(
            "thm5.4-semidirect",
            _describe(instance),
            {"reason": "base is exponentially distorted; additive length unavailable"},
            tol,
            "inapplicable",
        )
    base_rate = spectral_radius(endo.base_matrix)
    quotient_rate = spectral_radius(endo.quotient_matrix)
    formula = max(base_rate, quotient_rate)
    est = growth_table(endo, _mp(config, 16))
    sandwich = quotient_rate <= formula + 1e-9
    values = {
        "rate_base": base_rate,
        "rate_quotient": quotient_rate,
        "formula": formula,
        "ratio_estimate": est.ratio_estimate,
    }
    ok = sandwich and abs(est.ratio_estimate - formula) <= tol
    return LawCheck("thm5.4-semidirect", _describe(instance), values, tol, _verdict(ok))


def _law_polycyclic(instance, config):
    """Endomorphisms preserving a polycyclic series have integer rate."""
    tol = _tol(config, 1e-6)
    parsed = _parse(instance)
    endo = parsed.endo
    if not isinstance(endo, SemidirectEndo):
        return LawCheck(
            "lemma5.6-polycyclic",
            _describe(instance),
            {"reason": "needs a series-preserving block endo"},
            tol,
            "inapplicable",
        )
    group = endo.group
    tower = PolycyclicTower(
        factor_orders=(0,) * (group.base_rank + group.quotient_rank),
        realization=group,
        endo_preserves_series=True,
    )
    if group.base_rank != 1 or group.quotient_rank != 1:
        return LawCheck(
            "lemma5.6-polycyclic",
            _describe(instance),
            {"reason": "catalog covers the cyclic-by-cyclic case"},
            tol,
            "inapplicable",
        )
    rate = exact_growth_rate(endo)
    nearest = round(rate)
    est = growth_table(endo, _mp(config, 16))
    values = {
        "tower_length": tower.length,
        "rate": rate,
        "nearest_integer": nearest,
        "integer_gap": abs(rate - nearest),
        "ratio_estimate": est.ratio_estimate,
    }
    ok = abs(rate - nearest) <= tol and abs(est.ratio_estimate - rate) <= 0.1
    return LawCheck("lemma5.6-polycyclic", _describe(instance), values, tol, _verdict(ok))


def _law_distortion(instance, config):
    """Base-lattice distortion: exact profile against the action-word rate."""
    tol = _tol(config, 0.05)
    parsed = _parse(instance)
    group = parsed.group
    if not isinstance(group, Semidirect):
        return LawCheck(
            "lemma5.8-distortion",
            _describe(instance),
            {"reason": "needs a semidirect product"},
            tol,
            "inapplicable",
        )
    radius = _radius(config, parsed.options.radius)
    mp = _mp(config, parsed.options.max_power)
    rate = distortion_rate(group, mp)
    profile = distortion_profile(group, "base", radius, config.budget)
    rho = profile.values
    nondecreasing = all(a <= b for a, b in zip(rho, rho[1:]))
    ceiling = rate.sqrt_spectral + 0.05
    roots_ok = True
    for n in range(6, len(rho)):
        if rho[n] > 0:
            root = rho[n] ** (1.0 / n)
            if not (1.0 <= root <= ceiling):
                roots_ok = False
    cert_ok = True
    certified = 0
    for r in range(1, min(5, (len(rho) - 2) // 2) + 1):
        if 2 * r + 1 < len(rho) and r <= len(rate.table):
            certified += 1
            if rho[2 * r + 1] < rate.table[r - 1]:
                cert_ok = False
    ratio_gap = abs(rate.estimate.ratio_estimate - rate.spectral_value)
    values = {
        "spectral_rate": rate.spectral_value,
        "sqrt_rate": rate.sqrt_spectral,
        "table_ratio_estimate": rate.estimate.ratio_estimate,
        "profile": list(rho),
        "profile_nondecreasing": nondecreasing,
        "roots_in_band": roots_ok,
        "lower_bounds_certified": certified,
        "profile_complete": profile.complete,
    }
    ok = nondecreasing and roots_ok and cert_ok and ratio_gap <= tol and profile.complete
    return LawCheck("lemma5.8-distortion", _describe(instance), values, tol, _verdict(ok))


LAW_RUNNERS = {
    "thm2.2.1-fekete": _law_fekete,
    "thm2.2.2-generator-bound": _law_generator_bound,
    "thm2.2.3-power": _law_power,
    "thm3.1-finite-index": _law_finite_index,
    "lemma3.2-quotient": _law_quotient,
    "thm3.3-extension": _law_extension,
    "cor3.4-complement": _law_complement,
    "thm4.1-abelian": _law_abelian,
    "lemma4.3-lcs": _law_lcs,
    "thm4.4-nilpotent": _law_nilpotent,
    "thm4.4-counterexample": _law_counterexample,
    "lemma5.1-direct": _law_direct,
    "lemma5.2-free": _law_free,
    "thm5.4-semidirect": _law_semidirect,
    "lemma5.6-polycyclic": _law_polycyclic,
    "lemma5.8-distortion": _law_distortion,
}

LAW_IDS = tuple(LAW_RUNNERS)


def run_law(law_id: str, instance: dict, config: LawConfig | None = None) -> LawCheck:
    """Run one named check on one instance."""
    if law_id not in LAW_RUNNERS:
        raise UnknownLawError(f"unknown law id {law_id!r}")
    return LAW_RUNNERS[law_id](instance, config or LawConfig())


# -- the built-in instance catalog --------------------------------------------

_Z2 = {"kind": "free_abelian", "rank": 2}
_Z1 = {"kind": "free_abelian", "rank": 1}
_F2 = {"kind": "free", "rank": 2}
_HEI = {"kind": "heisenberg", "generators": 3}
_SWAP_DOUBLE = {"kind": "matrix", "rows": [[0, 2], [1, 0]]}
_FIB_WORDS = {"kind": "words", "images": [[1, 2], [1]]}


def default_catalog(seed: int) -> list[tuple[str, dict]]:
    """The built-in instances, fully materialized (reports are reproducible
    from the seed alone)."""
    hyperbolic = [[2, 1], [1, 1]]
    rotation = [[0, -1], [1, 0]]
    return [
        ("thm2.2.1-fekete", {"group": _Z2, "endo": _SWAP_DOUBLE, "options": {"max_m": 12}}),
        ("thm2.2.1-fekete", {"group": _F2, "endo": _FIB_WORDS, "options": {"max_m": 12}}),
        (
            "thm2.2.2-generator-bound",
            {
                "group": _F2,
                "random_endos": {"count": 50, "max_image_length": 4, "powers": 7},
                "seed": seed,
            },
        ),
        ("thm2.2.3-power", {"group": _Z2, "endo": _SWAP_DOUBLE, "n": 2}),
        (
            "thm2.2.3-power",
            {"group": _Z2, "endo": {"kind": "matrix", "rows": [[1, 0], [0, 1]]}, "n": 3},
        ),
        ("thm2.2.3-power", {"group": _F2, "endo": _FIB_WORDS, "n": 2, "options": {"max_m": 12}}),
        (
            "thm3.1-finite-index",
            {
                "group": _Z2,
                "endo": {"kind": "matrix", "rows": [[2, 0], [0, 3]]},
                "subgroup": {"kind": "sublattice", "basis": [[2, 0], [0, 1]]},
            },
        ),
        (
            "thm3.1-finite-index",
            {
                "group": _Z2,
                "endo": {"kind": "matrix", "rows": [[2, 1], [1, 1]]},
                "subgroup": {"kind": "sublattice", "basis": [[3, 0], [0, 3]]},
            },
        ),
        ("lemma3.2-quotient", {"random_instances": 20, "seed": seed}),
        (
            "lemma3.2-quotient",
            {
                "group": _HEI,
                "endo": {"kind": "heisenberg", "lambda": 2, "gamma": 2},
                "subgroup": {"kind": "lower_central", "j": 2},
                "options": {"tolerance": 0.1},
            },
        ),
        ("thm3.3-extension", {"random_instances": 20, "seed": seed}),
        (
            "thm3.3-extension",
            {
                "group": _HEI,
                "endo": {"kind": "heisenberg", "lambda": 2, "gamma": 2},
                "subgroup": {"kind": "lower_central", "j": 2},
                "options": {"tolerance": 0.1},
            },
        ),
        ("cor3.4-complement", {"random_instances": 20, "seed": seed}),
        ("thm4.1-abelian", {"group": _Z2, "endo": _SWAP_DOUBLE, "options": {"max_m": 20}}),
        (
            "thm4.1-abelian",
            {"group": _Z1, "endo": {"kind": "matrix", "rows": [[3]]}, "options": {"max_m": 20}},
        ),
        (
            "thm4.1-abelian",
            {
                "group": _Z2,
                "endo": {"kind": "matrix", "rows": [[2, 1], [1, 1]]},
                "options": {"max_m": 30},
            },
        ),
        ("thm4.1-abelian", {"random_instances": 20, "seed": seed, "options": {"tolerance": 0.1}}),
        ("lemma4.3-lcs", {"group": _HEI, "endo": {"kind": "heisenberg", "lambda": 2, "gamma": 2}}),
        ("lemma4.3-lcs", {"group": _HEI, "endo": {"kind": "heisenberg", "lambda": 1, "gamma": 3}}),
        (
            "thm4.4-nilpotent",
            {"group": _HEI, "endo": {"kind": "heisenberg", "lambda": 2, "gamma": 2}},
        ),
        (
            "thm4.4-nilpotent",
            {"group": _HEI, "endo": {"kind": "heisenberg", "lambda": 3, "gamma": 5}},
        ),
        (
            "thm4.4-counterexample",
            {"group": _HEI, "endo": {"kind": "heisenberg", "lambda": 2, "gamma": 2}},
        ),
        (
            "lemma5.1-direct",
            {
                "group": {"kind": "direct_product", "factors": [_Z1, _Z1]},
                "endo": {
                    "kind": "product",
                    "factors": [
                        {"kind": "matrix", "rows": [[2]]},
                        {"kind": "matrix", "rows": [[3]]},
                    ],
                },
                "options": {"max_m": 16},
            },
        ),
        (
            "lemma5.2-free",
            {
                "group": {"kind": "free_product", "factors": [_Z1, _Z1]},
                "endo": {
                    "kind": "product",
                    "factors": [
                        {"kind": "matrix", "rows": [[2]]},
                        {"kind": "matrix", "rows": [[3]]},
                    ],
                },
                "options": {"max_m": 16},
            },
        ),
        (
            "thm5.4-semidirect",
            {
                "group": {
                    "kind": "semidirect",
                    "base_rank": 2,
                    "quotient_rank": 1,
                    "action": [rotation],
                },
                "endo": {"kind": "semidirect", "base": [[2, 0], [0, 2]], "quotient": [[1]]},
                "options": {"max_m": 16},
            },
        ),
        (
            "thm5.4-semidirect",
            {
                "group": {
                    "kind": "semidirect",
                    "base_rank": 2,
                    "quotient_rank": 1,
                    "action": [[[1, 0], [0, 1]]],
                },
                "endo": {"kind": "semidirect", "base": hyperbolic, "quotient": [[1]]},
                "options": {"max_m": 20},
            },
        ),
        (
            "lemma5.6-polycyclic",
            {
                "group": {
                    "kind": "semidirect",
                    "base_rank": 1,
                    "quotient_rank": 1,
                    "action": [[[-1]]],
                },
                "endo": {"kind": "semidirect", "base": [[2]], "quotient": [[3]]},
                "options": {"max_m": 16},
            },
        ),
        (
            "lemma5.8-distortion",
            {
                "group": {
                    "kind": "semidirect",
                    "base_rank": 2,
                    "quotient_rank": 1,
                    "action": [hyperbolic],
                },
                "options": {"max_m": 10, "radius": 12},
            },
        ),
    ]


@dataclass(frozen=True)
class SuiteReport:
    seed: int
    checks: tuple[LawCheck, ...]

    @property
    def passed(self) -> int:
        return sum(1 for c in self.checks if c.verdict == "pass")

    @property
    def failed(self) -> int:
        return sum(1 for c in self.checks if c.verdict == "fail")

    @property
    def inapplicable(self) -> int:
        return sum(1 for c in self.checks if c.verdict == "inapplicable")

    @property
    def all_pass(self) -> bool:
        return self.failed == 0


def run_suite(
    config: LawConfig | None = None, catalog: list[tuple[str, dict]] | None = None
) -> SuiteReport:
    """Run every catalog check; deterministic for a fixed seed."""
    config = config or LawConfig()
    if catalog is None:
        catalog = default_catalog(config.seed)
    checks = []
    for law_id, instance in catalog:
        # instance-level tolerance override rides in its options block
        tol_override = None
        options = instance.get("options")
        if isinstance(options, dict) and "tolerance" in options:
            tol_override = float(options["tolerance"])
        local = config
        if tol_override is not None and config.tolerance is None:
            local = LawConfig(
                seed=config.seed,
                tolerance=tol_override,
                radius=config.radius,
                max_power=config.max_power,
                budget=config.budget,
            )
        checks.append(run_law(law_id, instance, local))
    return SuiteReport(config.seed, tuple(checks))
