"""JSON serialization for rings, modules, groups, sequences, and
matrices.

Every file carries an explicit "schema" field.  Coefficient entries
(structure constants, action constants, Cartan entries, functor
matrices) are decimal integer strings so payloads never depend on a
reader's integer width; rationals are "p/q" strings.  Emission uses a
fixed key order and formatting so identical data produces identical
bytes.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction

import numpy as np

from .errors import ParseError
from .groups import GroupTable
from .modules import BasedModule
from .rational import format_fraction, to_fraction
from .rings import FusionRing
from .sequences import ExactnessReport, SequenceData

SCHEMAS = ("ring", "module", "group", "sequence", "matrix")


def dumps_stable(obj) -> str:
    return json.dumps(obj, indent=2, separators=(",", ": ")) + "\n"


def _coeff_str(x) -> str:
    return str(int(x))


def _parse_coeff(x, what: str) -> int:
    if isinstance(x, bool):
        raise ParseError(f"{what}: booleans are not integers")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x, 10)
        except ValueError as exc:
            raise ParseError(f"{what}: bad integer string {x!r}") from exc
    raise ParseError(f"{what}: expected integer, got {type(x).__name__}")


def _coeff_tensor_out(arr):
    arr = np.asarray(arr, dtype=object)
    if arr.ndim == 2:
        return [[_coeff_str(x) for x in row] for row in arr]
    return [[[_coeff_str(x) for x in row] for row in plane] for plane in arr]


def _coeff_tensor_in(data, depth: int, what: str):
    if depth == 0:
        return _parse_coeff(data, what)
    if not isinstance(data, list):
        raise ParseError(f"{what}: expected nested lists")
    return [_coeff_tensor_in(x, depth - 1, what) for x in data]


# --- rings ---

def ring_to_obj(ring: FusionRing) -> dict:
    obj: dict = {"schema": "ring", "rank": ring.rank}
    if ring.is_multifusion:
        obj["unit_components"] = list(ring.unit_components)
    else:
        obj["unit"] = ring.unit
    obj["dual"] = list(ring.dual)
    obj["N"] = _coeff_tensor_out(ring.N)
    if ring.cartan is not None:
        obj["cartan"] = _coeff_tensor_out(ring.cartan)
    if ring.labels is not None:
        obj["labels"] = list(ring.labels)
    return obj


def ring_from_obj(obj: dict) -> FusionRing:
    if not isinstance(obj, dict) or obj.get("schema") != "ring":
        raise ParseError("not a ring object")
    try:
        n = _coeff_tensor_in(obj["N"], 3, "N")
        dual = [int(x) for x in obj["dual"]]
    except KeyError as exc:
        raise ParseError(f"ring object missing field {exc}") from exc
    kwargs = {}
    if "unit_components" in obj:
        kwargs["unit_components"] = [int(x) for x in obj["unit_components"]]
    elif "unit" in obj:
        kwargs["unit"] = int(obj["unit"])
    else:
        raise ParseError("ring object needs unit or unit_components")
    if obj.get("cartan") is not None:
        kwargs["cartan"] = _coeff_tensor_in(obj["cartan"], 2, "cartan")
    if obj.get("labels") is not None:
        kwargs["labels"] = [str(x) for x in obj["labels"]]
    try:
        ring = FusionRing(n, dual=dual, **kwargs)
    except (ValueError, TypeError) as exc:
        raise ParseError(f"ring object malformed: {exc}") from exc
    if "rank" in obj and int(obj["rank"]) != ring.rank:
        raise ParseError(
            f"declared rank {obj['rank']} does not match N of rank "
            f"{ring.rank}")
    return ring


# --- modules ---

def module_to_obj(m: BasedModule, ring_ref: str | None = None) -> dict:
    obj: dict = {"schema": "module"}
    obj["ring"] = ring_ref if ring_ref is not None else ring_to_obj(m.ring)
    obj["mrank"] = m.mrank
    obj["a"] = _coeff_tensor_out(m.a)
    if m.labels is not None:
        obj["labels"] = list(m.labels)
    return obj


def module_from_obj(obj: dict, base_dir: str | None = None) -> BasedModule:
    if not isinstance(obj, dict) or obj.get("schema") != "module":
        raise ParseError("not a module object")
    ring_field = obj.get("ring")
    if ring_field is None:
        raise ParseError("module object missing ring")
    if isinstance(ring_field, str):
        ring = load_ring(_resolve(ring_field, base_dir))
    else:
        ring = ring_from_obj(ring_field)
    try:
        a = _coeff_tensor_in(obj["a"], 3, "a")
    except KeyError as exc:
        raise ParseError(f"module object missing field {exc}") from exc
    labels = obj.get("labels")
    try:
        m = BasedModule(ring, a,
                        labels=None if labels is None else
                        [str(x) for x in labels])
    except (ValueError, TypeError) as exc:
        raise ParseError(f"module object malformed: {exc}") from exc
    if "mrank" in obj and int(obj["mrank"]) != m.mrank:
        raise ParseError("declared mrank does not match action array")
    return m


# --- groups ---

def group_to_obj(g: GroupTable) -> dict:
    obj: dict = {"schema": "group"}
    if g.name is not None:
        obj["name"] = g.name
    obj["order"] = g.n
    obj["mult"] = [list(row) for row in g.table]
    return obj


def group_from_obj(obj: dict) -> GroupTable:
    if not isinstance(obj, dict) or obj.get("schema") != "group":
        raise ParseError("not a group object")
    try:
        table = [[int(x) for x in row] for row in obj["mult"]]
    except KeyError as exc:
        raise ParseError(f"group object missing field {exc}") from exc
    name = obj.get("name")
    g = GroupTable(table, name=None if name is None else str(name))
    if "order" in obj and int(obj["order"]) != g.n:
        raise ParseError("declared order does not match table size")
    return g


# --- sequences ---

def sequence_to_obj(s: SequenceData, refs: dict | None = None) -> dict:
    """refs may map 'a'/'b'/'c'/'module' to path strings for
    by-reference emission; anything absent is inlined."""
    refs = refs or {}
    obj: dict = {"schema": "sequence"}
    if s.name is not None:
        obj["name"] = s.name
    for tag, ring in (("a", s.a), ("b", s.b), ("c", s.c)):
        obj[tag] = refs.get(tag, ring_to_obj(ring))
    obj["module"] = refs.get("module",
                             module_to_obj(s.module, ring_ref=refs.get("a")))
    obj["iota"] = _coeff_tensor_out(s.iota)
    obj["F"] = _coeff_tensor_out(s.f)
    return obj


def sequence_from_obj(obj: dict, base_dir: str | None = None) -> SequenceData:
    if not isinstance(obj, dict) or obj.get("schema") != "sequence":
        raise ParseError("not a sequence object")

    def _ring(tag):
        field = obj.get(tag)
        if field is None:
            raise ParseError(f"sequence object missing ring {tag!r}")
        if isinstance(field, str):
            return load_ring(_resolve(field, base_dir))
        return ring_from_obj(field)

    a, b, c = _ring("a"), _ring("b"), _ring("c")
    mod_field = obj.get("module")
    if mod_field is None:
        raise ParseError("sequence object missing module")
    if isinstance(mod_field, str):
        module = load_module(_resolve(mod_field, base_dir))
    else:
        module = module_from_obj(mod_field, base_dir=base_dir)
    try:
        iota = _coeff_tensor_in(obj["iota"], 2, "iota")
        f = _coeff_tensor_in(obj["F"], 2, "F")
    except KeyError as exc:
        raise ParseError(f"sequence object missing field {exc}") from exc
    name = obj.get("name")
    try:
        return SequenceData(a, b, c, module, iota, f,
                            name=None if name is None else str(name))
    except (ValueError, TypeError) as exc:
        raise ParseError(f"sequence object malformed: {exc}") from exc


# --- matrices (perron input) ---

def matrix_to_obj(rows) -> dict:
    return {
        "schema": "matrix",
        "matrix": [[format_fraction(to_fraction(x)) for x in row]
                   for row in rows],
    }


def matrix_from_obj(obj: dict) -> list[list[Fraction]]:
    if not isinstance(obj, dict) or obj.get("schema") != "matrix":
        raise ParseError("not a matrix object")
    rows = obj.get("matrix")
    if not isinstance(rows, list) or not rows:
        raise ParseError("matrix object missing rows")
    try:
        return [[to_fraction(x) for x in row] for row in rows]
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ParseError(f"matrix entry malformed: {exc}") from exc


# --- reports ---

def interval_obj(lo: Fraction, hi: Fraction) -> dict:
    return {"lo": format_fraction(lo), "hi": format_fraction(hi)}


def exactness_report_to_obj(r: ExactnessReport) -> dict:
    return {
        "verdict": r.verdict,
        "reason": r.reason,
        "kernel": sorted(r.kernel),
        "iota_image": sorted(r.iota_image),
        "kernel_matches_iota": r.kernel_matches_iota,
        "surjective": r.surjective,
        "normal": r.normal,
        "alpha_lo": format_fraction(r.alpha.lo),
        "alpha_hi": format_fraction(r.alpha.hi),
        "alpha_exact": (None if r.alpha_exact is None
                        else format_fraction(r.alpha_exact)),
        "alpha_is_one": r.alpha_is_one,
        "alpha_provenance": r.alpha_provenance,
        "cross_check": r.cross_check,
    }


# --- file plumbing ---

def _resolve(path: str, base_dir: str | None) -> str:
    if base_dir is not None and not os.path.isabs(path):
        return os.path.join(base_dir, path)
    return path


def load_obj(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}"
        ) from exc
    if not isinstance(obj, dict):
        raise ParseError(f"{path}: top level must be an object")
    schema = obj.get("schema")
    if schema not in SCHEMAS:
        raise ParseError(f"{path}: missing or unknown schema {schema!r}")
    return obj


def load_ring(path: str) -> FusionRing:
    return ring_from_obj(load_obj(path))


def load_module(path: str) -> BasedModule:
    return module_from_obj(load_obj(path), base_dir=os.path.dirname(path))


def load_group(path: str) -> GroupTable:
    return group_from_obj(load_obj(path))


def load_sequence(path: str) -> SequenceData:
    return sequence_from_obj(load_obj(path), base_dir=os.path.dirname(path))


def load_any(path: str):
    """Load by schema tag; returns (schema, object)."""
    obj = load_obj(path)
    schema = obj["schema"]
    base = os.path.dirname(path)
    if schema == "ring":
        return schema, ring_from_obj(obj)
    if schema == "module":
        return schema, module_from_obj(obj, base_dir=base)
    if schema == "group":
        return schema, group_from_obj(obj)
    if schema == "sequence":
        return schema, sequence_from_obj(obj, base_dir=base)
    return schema, matrix_from_obj(obj)


def save_obj(obj: dict, path: str | None):
    text = dumps_stable(obj)
    if path is None:
        print(text, end="")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
