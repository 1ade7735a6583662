"""JSON descriptors for functionals and functional systems.

Accepted functional shapes::

    {"kind": "atoms", "atoms": [{"t": "p/q" | "minus_one", "weight": scalar}, ...]}
    {"kind": "moments", "table": {"k": scalar, ...}, "default": "zero" | {"geometric": "p/q"} | "error"}
    {"kind": "lebesgue"}
    {"kind": "real_atoms", "atoms": [{"x": "p/q", "weight": scalar}, ...]}

``atoms`` and ``moments`` descriptors may assert ``"hermitian"`` and
``"symmetric"``; an assertion the data does not support is rejected.
A system is ``{"functionals": [...]}`` or ``{"bundled": name}``.
"""

from __future__ import annotations

from . import systems
from .errors import InvalidInput
from .moments import (
    MINUS_ONE,
    CircleAtom,
    FunctionalSystem,
    from_atoms,
    from_moment_table,
    lebesgue,
    real_from_atoms,
)
from .scalars import parse_rational, scalar_from_json

__all__ = ["SchemaError", "functional_from_json", "system_from_json", "BUNDLED"]

BUNDLED = {
    "lebesgue": systems.lebesgue_system,
    "geometric": systems.geometric_system,
    "S2": systems.s2_system,
    "r3": systems.r3_atomic_system,
    "symmetric-r2": systems.symmetric_r2_system,
}


class SchemaError(InvalidInput):
    """A descriptor that does not match the schema; ``path`` names the offending field."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


def _scalar(obj, path):
    try:
        return scalar_from_json(obj)
    except (ValueError, ZeroDivisionError) as e:
        raise SchemaError(path, str(e)) from None


def _rational(obj, path):
    if isinstance(obj, int) and not isinstance(obj, bool):
        return obj
    if not isinstance(obj, str):
        raise SchemaError(path, f"expected a \"p/q\" string, got {obj!r}")
    try:
        return parse_rational(obj)
    except (ValueError, ZeroDivisionError):
        raise SchemaError(path, f"not a rational: {obj!r}") from None


def _list(obj, path, nonempty=True):
    if not isinstance(obj, list):
        raise SchemaError(path, "expected a list")
    if nonempty and not obj:
        raise SchemaError(path, "must not be empty")
    return obj


def _dict(obj, path):
    if not isinstance(obj, dict):
        raise SchemaError(path, "expected an object")
    return obj


def _unknown(obj, allowed, path):
    extra = sorted(set(obj) - set(allowed))
    if extra:
        raise SchemaError(f"{path}.{extra[0]}", "unknown field")


def _check_flags(desc, fn, path):
    for flag in ("hermitian", "symmetric"):
        if flag in desc:
            want = desc[flag]
            if not isinstance(want, bool):
                raise SchemaError(f"{path}.{flag}", "expected true or false")
            if want and not getattr(fn, flag):
                raise SchemaError(f"{path}.{flag}", f"declared {flag} but the moments are not")
    return fn


def functional_from_json(desc, path: str = "functional"):
    desc = _dict(desc, path)
    kind = desc.get("kind")
    if kind == "lebesgue":
        _unknown(desc, {"kind", "hermitian", "symmetric"}, path)
        return _check_flags(desc, lebesgue(), path)
    if kind == "atoms":
        _unknown(desc, {"kind", "atoms", "hermitian", "symmetric", "description"}, path)
        atoms = []
        for i, a in enumerate(_list(desc.get("atoms"), f"{path}.atoms")):
            ap = f"{path}.atoms[{i}]"
            a = _dict(a, ap)
            _unknown(a, {"t", "weight"}, ap)
            if "t" not in a:
                raise SchemaError(f"{ap}.t", "missing")
            t = MINUS_ONE if a["t"] == MINUS_ONE else _rational(a["t"], f"{ap}.t")
            atoms.append(CircleAtom(t, _scalar(a.get("weight", 1), f"{ap}.weight")))
        return _check_flags(desc, from_atoms(atoms, desc.get("description", "")), path)
    if kind == "moments":
        _unknown(desc, {"kind", "table", "default", "hermitian", "symmetric", "description"}, path)
        table = {}
        for k, v in _dict(desc.get("table"), f"{path}.table").items():
            try:
                key = int(k)
            except ValueError:
                raise SchemaError(f"{path}.table.{k}", "moment keys must be integers") from None
            table[key] = _scalar(v, f"{path}.table.{k}")
        default = desc.get("default", "zero")
        if isinstance(default, dict):
            _unknown(default, {"geometric"}, f"{path}.default")
            if "geometric" not in default:
                raise SchemaError(f"{path}.default", "expected {\"geometric\": \"p/q\"}")
            default = ("geometric", _rational(default["geometric"], f"{path}.default.geometric"))
        elif default not in ("zero", "error"):
            raise SchemaError(f"{path}.default", f"unknown extension rule {default!r}")
        fn = from_moment_table(table, default, desc.get("description", ""))
        return _check_flags(desc, fn, path)
    if kind == "real_atoms":
        _unknown(desc, {"kind", "atoms", "description"}, path)
        pts = []
        for i, a in enumerate(_list(desc.get("atoms"), f"{path}.atoms")):
            ap = f"{path}.atoms[{i}]"
            a = _dict(a, ap)
            _unknown(a, {"x", "weight"}, ap)
            if "x" not in a:
                raise SchemaError(f"{ap}.x", "missing")
            pts.append((_rational(a["x"], f"{ap}.x"), _scalar(a.get("weight", 1), f"{ap}.weight")))
        return real_from_atoms(pts, desc.get("description", ""))
    raise SchemaError(f"{path}.kind", f"unknown functional kind {kind!r}")


def system_from_json(desc, path: str = "system") -> FunctionalSystem:
    desc = _dict(desc, path)
    if "bundled" in desc:
        _unknown(desc, {"bundled"}, path)
        name = desc["bundled"]
        if name not in BUNDLED:
            raise SchemaError(f"{path}.bundled", f"unknown system {name!r}; choose from {sorted(BUNDLED)}")
        return BUNDLED[name]()
    _unknown(desc, {"functionals", "description"}, path)
    fns = [
        functional_from_json(f, f"{path}.functionals[{i}]")
        for i, f in enumerate(_list(desc.get("functionals"), f"{path}.functionals"))
    ]
    try:
        return FunctionalSystem(fns, desc.get("description", ""))
    except InvalidInput as e:
        raise SchemaError(f"{path}.functionals", str(e)) from None
