"""Declarative JSON instance specs: parsing with path-annotated errors, and
serialization that round-trips every built-in descriptor."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from endogrow.groups import (
    Free,
    FreeAbelian,
    Group,
    Heisenberg,
    LengthMode,
    LowerCentralLayer,
    lower_central_layer,
)
from endogrow.intmat import IntMatrix
from endogrow.products import (
    DirectProduct,
    FreeProduct,
    Semidirect,
    Sublattice,
)
from endogrow.endos import (
    Endomorphism,
    HeisenbergEndo,
    MatrixEndo,
    ProductEndo,
    SemidirectEndo,
    WordEndo,
)


class SpecError(ValueError):
    """Instance spec did not parse; the message carries the JSON path."""


def _fail(path: str, message: str):
    raise SpecError(f"at {path}: {message}")


def _expect_dict(value, path: str) -> dict:
    if not isinstance(value, dict):
        _fail(path, f"expected an object, got {type(value).__name__}")
    return value


def _expect_int(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        _fail(path, f"expected an integer, got {value!r}")
    return value


def _expect_matrix(value, path: str) -> IntMatrix:
    if not isinstance(value, list) or not value or not all(isinstance(r, list) for r in value):
        _fail(path, "expected a matrix as a list of rows")
    width = len(value[0])
    for i, row in enumerate(value):
        if len(row) != width:
            _fail(f"{path}[{i}]", "ragged matrix rows")
        for j, x in enumerate(row):
            _expect_int(x, f"{path}[{i}][{j}]")
    return IntMatrix.from_rows(value)


def _parse_length_mode(d, path: str) -> LengthMode:
    d = _expect_dict(d, path)
    kind = d.get("kind")
    if kind not in ("exact", "quasi", "bfs"):
        _fail(f"{path}.kind", f"unknown length mode {kind!r}")
    radius = _expect_int(d.get("radius", 0), f"{path}.radius") if kind == "bfs" else 0
    try:
        return LengthMode(kind, radius)
    except ValueError as exc:
        _fail(path, str(exc))


def parse_group(d, path: str = "group") -> Group:
    d = _expect_dict(d, path)
    kind = d.get("kind")
    if kind == "free_abelian":
        rank = _expect_int(d.get("rank"), f"{path}.rank")
        mode = _parse_length_mode(d["length_mode"], f"{path}.length_mode") if "length_mode" in d else LengthMode("exact")
        try:
            return FreeAbelian(rank, mode)
        except ValueError as exc:
            _fail(path, str(exc))
    if kind == "free":
        rank = _expect_int(d.get("rank"), f"{path}.rank")
        mode = _parse_length_mode(d["length_mode"], f"{path}.length_mode") if "length_mode" in d else LengthMode("exact")
        try:
            return Free(rank, mode)
        except ValueError as exc:
            _fail(path, str(exc))
    if kind == "heisenberg":
        count = _expect_int(d.get("generators", 3), f"{path}.generators")
        mode = _parse_length_mode(d["length_mode"], f"{path}.length_mode") if "length_mode" in d else LengthMode("quasi")
        try:
            return Heisenberg(count, mode)
        except ValueError as exc:
            _fail(path, str(exc))
    if kind in ("direct_product", "free_product"):
        factors = d.get("factors")
        if not isinstance(factors, list) or len(factors) != 2:
            _fail(f"{path}.factors", "expected exactly two factor groups")
        left = parse_group(factors[0], f"{path}.factors[0]")
        right = parse_group(factors[1], f"{path}.factors[1]")
        try:
            return DirectProduct(left, right) if kind == "direct_product" else FreeProduct(left, right)
        except ValueError as exc:
            _fail(path, str(exc))
    if kind == "semidirect":
        base_rank = _expect_int(d.get("base_rank"), f"{path}.base_rank")
        quotient_rank = _expect_int(d.get("quotient_rank"), f"{path}.quotient_rank")
        action = d.get("action")
        if not isinstance(action, list):
            _fail(f"{path}.action", "expected a list of action matrices")
        matrices = tuple(
            _expect_matrix(a, f"{path}.action[{i}]") for i, a in enumerate(action)
        )
        mode = _parse_length_mode(d["length_mode"], f"{path}.length_mode") if "length_mode" in d else LengthMode("quasi")
        try:
            return Semidirect(base_rank, quotient_rank, matrices, mode)
        except ValueError as exc:
            _fail(path, str(exc))
    _fail(f"{path}.kind", f"unknown group kind {kind!r}")


def parse_subgroup(d, group: Group, path: str = "subgroup"):
    d = _expect_dict(d, path)
    kind = d.get("kind")
    if kind == "sublattice":
        if not isinstance(group, FreeAbelian):
            _fail(path, "sublattice subgroups need a free abelian ambient group")
        basis = _expect_matrix(d.get("basis"), f"{path}.basis")
        try:
            return Sublattice(group.rank, basis)
        except ValueError as exc:
            _fail(path, str(exc))
    if kind == "lower_central":
        j = _expect_int(d.get("j"), f"{path}.j")
        try:
            return lower_central_layer(group, j)
        except ValueError as exc:
            _fail(path, str(exc))
    if kind == "base":
        if not isinstance(group, Semidirect):
            _fail(path, "base subgroups only exist for semidirect products")
        return "base"
    _fail(f"{path}.kind", f"unknown subgroup kind {kind!r}")


def parse_endo(d, group: Group, path: str = "endo") -> Endomorphism:
    d = _expect_dict(d, path)
    kind = d.get("kind")
    if kind == "matrix":
        if not isinstance(group, FreeAbelian):
            _fail(path, f"matrix endos need a free abelian group, got {group.kind}")
        rows = _expect_matrix(d.get("rows"), f"{path}.rows")
        try:
            return MatrixEndo(group, rows)
        except ValueError as exc:
            _fail(path, str(exc))
    if kind == "words":
        if not isinstance(group, Free):
            _fail(path, f"word endos need a free group, got {group.kind}")
        images = d.get("images")
        if not isinstance(images, list):
            _fail(f"{path}.images", "expected a list of words")
        words = []
        for i, w in enumerate(images):
            if not isinstance(w, list):
                _fail(f"{path}.images[{i}]", "expected a word as a list of signed letters")
            for j, x in enumerate(w):
                _expect_int(x, f"{path}.images[{i}][{j}]")
            words.append(tuple(w))
        try:
            return WordEndo(group, tuple(words))
        except ValueError as exc:
            _fail(path, str(exc))
    if kind == "heisenberg":
        if not isinstance(group, Heisenberg):
            _fail(path, f"parameter endos need the Heisenberg group, got {group.kind}")
        lam = _expect_int(d.get("lambda"), f"{path}.lambda")
        gam = _expect_int(d.get("gamma"), f"{path}.gamma")
        return HeisenbergEndo(group, lam, gam)
    if kind == "product":
        if not isinstance(group, (DirectProduct, FreeProduct)):
            _fail(path, f"product endos need a product group, got {group.kind}")
        factors = d.get("factors")
        if not isinstance(factors, list) or len(factors) != 2:
            _fail(f"{path}.factors", "expected exactly two factor endos")
        left = parse_endo(factors[0], group.left, f"{path}.factors[0]")
        right = parse_endo(factors[1], group.right, f"{path}.factors[1]")
        try:
            return ProductEndo(group, (left, right))
        except ValueError as exc:
            _fail(path, str(exc))
    if kind == "semidirect":
        if not isinstance(group, Semidirect):
            _fail(path, f"block endos need a semidirect group, got {group.kind}")
        base = _expect_matrix(d.get("base"), f"{path}.base")
        quotient = _expect_matrix(d.get("quotient"), f"{path}.quotient")
        try:
            return SemidirectEndo(group, base, quotient)
        except ValueError as exc:
            _fail(path, str(exc))
    _fail(f"{path}.kind", f"unknown endo kind {kind!r}")


@dataclass(frozen=True)
class Options:
    max_power: int = 20
    radius: int = 10
    tolerance: float = 1e-9
    seed: int = 20250811
    budget: int | None = None
    length_mode: str | None = None  # overrides the group's mode when set


def parse_options(d, path: str = "options") -> Options:
    if d is None:
        return Options()
    d = _expect_dict(d, path)
    known = {"max_m", "radius", "tolerance", "length_mode", "seed", "budget"}
    for key in d:
        if key not in known:
            _fail(f"{path}.{key}", "unknown option")
    mode = d.get("length_mode")
    if mode is not None and mode not in ("exact", "quasi", "bfs"):
        _fail(f"{path}.length_mode", f"unknown length mode {mode!r}")
    out = Options(
        max_power=_expect_int(d.get("max_m", 20), f"{path}.max_m"),
        radius=_expect_int(d.get("radius", 10), f"{path}.radius"),
        tolerance=float(d.get("tolerance", 1e-9)),
        seed=_expect_int(d.get("seed", 20250811), f"{path}.seed"),
        budget=_expect_int(d["budget"], f"{path}.budget") if "budget" in d else None,
        length_mode=mode,
    )
    if out.max_power < 1:
        _fail(f"{path}.max_m", "must be >= 1")
    if out.radius < 0:
        _fail(f"{path}.radius", "must be >= 0")
    return out


@dataclass(frozen=True)
class Instance:
    """A parsed spec: a group, optionally an endomorphism and a subgroup,
    plus run options."""

    group: Group
    endo: Endomorphism | None = None
    subgroup: object = None
    options: Options = field(default_factory=Options)


def parse_instance(d, path: str = "") -> Instance:
    prefix = f"{path}." if path else ""
    d = _expect_dict(d, path or "instance")
    if "group" not in d:
        _fail(f"{prefix}group", "missing group")
    group = parse_group(d["group"], f"{prefix}group")
    options = parse_options(d.get("options"), f"{prefix}options")
    if options.length_mode is not None:
        import dataclasses

        if not hasattr(group, "length_mode"):
            _fail(
                f"{prefix}options.length_mode",
                f"group kind {group.kind!r} does not take a length-mode override",
            )
        radius = options.radius if options.length_mode == "bfs" else 0
        group = dataclasses.replace(group, length_mode=LengthMode(options.length_mode, radius))
    endo = parse_endo(d["endo"], group, f"{prefix}endo") if "endo" in d else None
    sub = parse_subgroup(d["subgroup"], group, f"{prefix}subgroup") if "subgroup" in d else None
    return Instance(group, endo, sub, options)


def load_instance_file(filename: str) -> Instance:
    """Read and parse a JSON instance spec from disk."""
    try:
        with open(filename, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise SpecError(f"spec file not found: {filename}")
    except json.JSONDecodeError as exc:
        raise SpecError(f"{filename}:{exc.lineno}:{exc.colno}: invalid JSON ({exc.msg})")
    return parse_instance(data)


# -- serialization (round-trips with the parser) -----------------------------


def length_mode_to_dict(mode: LengthMode) -> dict:
    out = {"kind": mode.kind}
    if mode.kind == "bfs":
        out["radius"] = mode.radius
    return out


def group_to_dict(group: Group) -> dict:
    if isinstance(group, FreeAbelian):
        return {
            "kind": "free_abelian",
            "rank": group.rank,
            "length_mode": length_mode_to_dict(group.length_mode),
        }
    if isinstance(group, Free):
        return {
            "kind": "free",
            "rank": group.rank,
            "length_mode": length_mode_to_dict(group.length_mode),
        }
    if isinstance(group, Heisenberg):
        return {
            "kind": "heisenberg",
            "generators": group.generator_count,
            "length_mode": length_mode_to_dict(group.length_mode),
        }
    if isinstance(group, (DirectProduct, FreeProduct)):
        kind = "direct_product" if isinstance(group, DirectProduct) else "free_product"
        return {"kind": kind, "factors": [group_to_dict(group.left), group_to_dict(group.right)]}
    if isinstance(group, Semidirect):
        return {
            "kind": "semidirect",
            "base_rank": group.base_rank,
            "quotient_rank": group.quotient_rank,
            "action": [a.to_rows() for a in group.action],
            "length_mode": length_mode_to_dict(group.length_mode),
        }
    raise SpecError(f"cannot serialize group kind {group.kind!r}")


def endo_to_dict(endo: Endomorphism) -> dict:
    if isinstance(endo, MatrixEndo):
        return {"kind": "matrix", "rows": endo.matrix.to_rows()}
    if isinstance(endo, WordEndo):
        return {"kind": "words", "images": [list(w) for w in endo.images]}
    if isinstance(endo, HeisenbergEndo):
        return {"kind": "heisenberg", "lambda": endo.lam, "gamma": endo.gam}
    if isinstance(endo, ProductEndo):
        return {"kind": "product", "factors": [endo_to_dict(f) for f in endo.factors]}
    if isinstance(endo, SemidirectEndo):
        return {
            "kind": "semidirect",
            "base": endo.base_matrix.to_rows(),
            "quotient": endo.quotient_matrix.to_rows(),
        }
    raise SpecError(f"cannot serialize endo {type(endo).__name__}")


def subgroup_to_dict(subgroup, group: Group) -> dict:
    if isinstance(subgroup, Sublattice):
        return {"kind": "sublattice", "basis": subgroup.basis.to_rows()}
    if isinstance(subgroup, LowerCentralLayer):
        return {"kind": "lower_central", "j": subgroup.j}
    if subgroup == "base":
        return {"kind": "base"}
    raise SpecError(f"cannot serialize subgroup {subgroup!r}")


def instance_to_dict(instance: Instance) -> dict:
    out = {"group": group_to_dict(instance.group)}
    if instance.endo is not None:
        out["endo"] = endo_to_dict(instance.endo)
    if instance.subgroup is not None:
        out["subgroup"] = subgroup_to_dict(instance.subgroup, instance.group)
    opts = instance.options
    out["options"] = {
        "max_m": opts.max_power,
        "radius": opts.radius,
        "tolerance": opts.tolerance,
        "seed": opts.seed,
    }
    if opts.budget is not None:
        out["options"]["budget"] = opts.budget
    return out
