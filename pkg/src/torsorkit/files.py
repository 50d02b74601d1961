"""Presentation files: a JSON surface syntax with string coefficients.

Tables are sparse entry lists ``[target indices..., source indices...,
"coefficient"]`` with 0-based indices.  Coefficients are always strings so
files stay exact and diffable.  ``save(load(path))`` is byte-identical for
files in canonical form (sorted entries, sorted keys).
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field as dc_field

from .algebra import AlgebraPresentation
from .cotorsor import CoalgebraPresentation, CotorsorPresentation
from .errors import (
    IndexOutOfRange,
    ParseError,
    UnsupportedVersion,
)
from .exactlin import LinearMap, SubspaceBasis
from .fields import FieldSpec
from .gallery import registry_build, registry_names
from .hopf import HopfPresentation, TwistData, build_twist
from .report import fingerprint
from .torsor import TorsorPresentation, make_torsor

FORMAT_VERSION = 1

KINDS = ("algebra", "hopf", "torsor", "cotorsor", "twist", "phi")


# ---------------------------------------------------------------------------
# scalar and table encoding
# ---------------------------------------------------------------------------


def _field_record(field: FieldSpec) -> dict:
    if field.kind == "Q":
        return {"kind": "Q"}
    return {"kind": "Fp", "p": field.p}


def _field_from_record(rec) -> FieldSpec:
    if not isinstance(rec, dict) or "kind" not in rec:
        raise ParseError("field record must be an object with a 'kind'")
    if rec["kind"] == "Q":
        return FieldSpec.rationals()
    if rec["kind"] == "Fp":
        return FieldSpec.prime(int(rec.get("p", 0)))
    raise ParseError("unknown field kind %r" % (rec["kind"],))


def _encode_map(field: FieldSpec, m: LinearMap):
    out = []
    for tgt, src, val in m.entries_sorted():
        out.append(list(tgt) + list(src) + [field.format(val)])
    return out


def _decode_map(field: FieldSpec, dim: int, s: int, t: int, rows, table: str) -> LinearMap:
    entries = []
    for pos, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != s + t + 1:
            raise ParseError("table %r entry %d: expected %d indices plus a "
                             "coefficient" % (table, pos, s + t))
        coeff = row[-1]
        if not isinstance(coeff, str):
            raise ParseError("table %r entry %d: coefficient must be a string"
                             % (table, pos))
        idx = row[:-1]
        for x in idx:
            if not isinstance(x, int):
                raise ParseError("table %r entry %d: indices must be integers"
                                 % (table, pos))
            if not (0 <= x < dim):
                raise IndexOutOfRange("table %r entry %d: index %d outside 0..%d"
                                      % (table, pos, x, dim - 1))
        try:
            val = field.parse(coeff)
        except ParseError as exc:
            raise ParseError("table %r entry %d: %s" % (table, pos, exc)) from exc
        entries.append((tuple(idx[:t]), tuple(idx[t:]), val))
    return LinearMap.from_entries(field, dim, s, t, entries)


def _encode_vec(field: FieldSpec, vec) -> list:
    return [list(key) + [field.format(val)] for key, val in sorted(vec.items())]


def _decode_vec(field: FieldSpec, dim: int, arity: int, rows, table: str):
    m = _decode_map(field, dim, 0, arity, rows, table)
    return m.column(())


# ---------------------------------------------------------------------------
# per-kind serialization
# ---------------------------------------------------------------------------


@dataclass
class PhiFile:
    """Gluing matrix in carrier coordinates plus anti-drift fingerprints."""

    field: FieldSpec
    dim: int
    matrix: LinearMap  # 1 -> 1 between carrier coordinate spaces
    source_fingerprint: str
    target_fingerprint: str
    meta: dict = dc_field(default_factory=dict)


def carrier_fingerprint(basis: SubspaceBasis) -> str:
    return fingerprint(basis.canonical_key())


def serialize(obj, meta: dict | None = None) -> dict:
    """Typed object to its canonical JSON-compatible dictionary."""
    meta = dict(meta or {})
    if isinstance(obj, AlgebraPresentation):
        return {
            "format_version": FORMAT_VERSION,
            "kind": "algebra",
            "field": _field_record(obj.field),
            "dim": obj.dim,
            "basis": list(obj.basis_labels),
            "tables": {
                "mul": _encode_map(obj.field, obj.mul),
                "unit": _encode_vec(obj.field, obj.unit),
            },
            "meta": meta,
        }
    if isinstance(obj, HopfPresentation):
        doc = serialize(obj.algebra, meta)
        doc["kind"] = "hopf"
        doc["tables"]["comul"] = _encode_map(obj.field, obj.comul)
        doc["tables"]["counit"] = _encode_map(obj.field, obj.counit)
        doc["tables"]["antipode"] = _encode_map(obj.field, obj.antipode)
        return doc
    if isinstance(obj, TorsorPresentation):
        doc = serialize(obj.algebra, meta)
        doc["kind"] = "torsor"
        doc["tables"]["mu"] = _encode_map(obj.field, obj.mu)
        if obj.theta_supplied:
            doc["tables"]["theta"] = _encode_map(obj.field, obj.theta)
        return doc
    if isinstance(obj, CotorsorPresentation):
        co = obj.coalgebra
        return {
            "format_version": FORMAT_VERSION,
            "kind": "cotorsor",
            "field": _field_record(obj.field),
            "dim": obj.dim,
            "basis": list(co.basis_labels),
            "tables": {
                "comul": _encode_map(obj.field, co.comul),
                "counit": _encode_map(obj.field, co.counit),
                "nu": _encode_map(obj.field, obj.nu),
                "theta": _encode_map(obj.field, obj.theta),
            },
            "meta": meta,
        }
    if isinstance(obj, TwistData):
        doc = serialize(obj.host, meta)
        doc["kind"] = "twist"
        doc["tables"]["F"] = _encode_vec(obj.host.field, obj.F)
        doc["tables"]["F_inv"] = _encode_vec(obj.host.field, obj.F_inv)
        return doc
    if isinstance(obj, PhiFile):
        rows = []
        for i in range(obj.dim):
            row = []
            for j in range(obj.dim):
                row.append(obj.field.format(
                    obj.matrix.cols.get((j,), {}).get((i,), obj.field.zero)))
            rows.append(row)
        return {
            "format_version": FORMAT_VERSION,
            "kind": "phi",
            "field": _field_record(obj.field),
            "dim": obj.dim,
            "basis": ["c%d" % i for i in range(obj.dim)],
            "tables": {"matrix": rows},
            "source_fingerprint": obj.source_fingerprint,
            "target_fingerprint": obj.target_fingerprint,
            "meta": dict(obj.meta),
        }
    raise ParseError("cannot serialize object of type %r" % type(obj).__name__)


def deserialize(doc: dict):
    """Dictionary to a typed object, with field-level diagnostics."""
    if not isinstance(doc, dict):
        raise ParseError("presentation file must be a JSON object")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise UnsupportedVersion("format_version %r is not supported" % (version,))
    kind = doc.get("kind")
    if kind not in KINDS:
        raise ParseError("unknown kind %r" % (kind,))
    field = _field_from_record(doc.get("field"))
    try:
        dim = int(doc.get("dim"))
    except (TypeError, ValueError) as exc:
        raise ParseError("dim must be an integer") from exc
    basis = doc.get("basis")
    if not isinstance(basis, list) or len(basis) != dim:
        raise ParseError("basis must list %d labels" % dim)
    tables = doc.get("tables")
    if not isinstance(tables, dict):
        raise ParseError("tables must be an object")

    def need(name):
        if name not in tables:
            raise ParseError("kind %r requires table %r" % (kind, name))
        return tables[name]

    if kind == "phi":
        rows = need("matrix")
        if (not isinstance(rows, list) or len(rows) != dim
                or any(len(r) != dim for r in rows)):
            raise ParseError("phi matrix must be %d x %d" % (dim, dim))
        cols = {}
        for i, row in enumerate(rows):
            for j, text in enumerate(row):
                if not isinstance(text, str):
                    raise ParseError("phi matrix entries must be strings")
                val = field.parse(text)
                if val:
                    cols.setdefault((j,), {})[(i,)] = val
        matrix = LinearMap.from_cols(field, dim, 1, 1, cols)
        return PhiFile(field, dim, matrix,
                       str(doc.get("source_fingerprint", "")),
                       str(doc.get("target_fingerprint", "")),
                       dict(doc.get("meta", {})))

    if kind in ("algebra", "hopf", "torsor", "twist"):
        mul = _decode_map(field, dim, 2, 1, need("mul"), "mul")
        unit = _decode_vec(field, dim, 1, need("unit"), "unit")
        algebra = AlgebraPresentation(field, dim, tuple(basis), mul, unit)
        if kind == "algebra":
            return algebra
        if kind == "torsor":
            mu = _decode_map(field, dim, 1, 3, need("mu"), "mu")
            theta = None
            if "theta" in tables:
                theta = _decode_map(field, dim, 1, 1, tables["theta"], "theta")
            return make_torsor(algebra, mu, theta)
        comul = _decode_map(field, dim, 1, 2, need("comul"), "comul")
        counit = _decode_map(field, dim, 1, 0, need("counit"), "counit")
        antipode = _decode_map(field, dim, 1, 1, need("antipode"), "antipode")
        host = HopfPresentation(algebra, comul, counit, antipode)
        if kind == "hopf":
            return host
        F = _decode_vec(field, dim, 2, need("F"), "F")
        F_inv = None
        if "F_inv" in tables:
            F_inv = _decode_vec(field, dim, 2, tables["F_inv"], "F_inv")
        return build_twist(host, F, F_inv)

    # cotorsor
    comul = _decode_map(field, dim, 1, 2, need("comul"), "comul")
    counit = _decode_map(field, dim, 1, 0, need("counit"), "counit")
    nu = _decode_map(field, dim, 3, 1, need("nu"), "nu")
    theta = _decode_map(field, dim, 1, 1, need("theta"), "theta")
    coalg = CoalgebraPresentation(field, dim, tuple(basis), comul, counit)
    return CotorsorPresentation(coalg, nu, theta)


def dumps(obj, meta: dict | None = None) -> str:
    return json.dumps(serialize(obj, meta), sort_keys=True, indent=1) + "\n"


def save(obj, path: str, meta: dict | None = None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj, meta))


def load(source: str):
    """Load a presentation from a file path or a ``registry:<name>`` address."""
    if source.startswith("registry:"):
        name = source.split(":", 1)[1]
        return registry_build(name)
    if not os.path.exists(source):
        raise ParseError("no such file %r" % (source,))
    with open(source, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError("line %d column %d: %s"
                             % (exc.lineno, exc.colno, exc.msg)) from exc
    return deserialize(doc)


def kind_of(obj) -> str:
    if isinstance(obj, TorsorPresentation):
        return "torsor"
    if isinstance(obj, HopfPresentation):
        return "hopf"
    if isinstance(obj, AlgebraPresentation):
        return "algebra"
    if isinstance(obj, CotorsorPresentation):
        return "cotorsor"
    if isinstance(obj, TwistData):
        return "twist"
    if isinstance(obj, PhiFile):
        return "phi"
    raise ParseError("unrecognized presentation object")


def load_galois_recipe(path: str):
    """Side input for the Galois builder: field, monic polynomial, action."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError("line %d column %d: %s"
                             % (exc.lineno, exc.colno, exc.msg)) from exc
    field = _field_from_record(doc.get("field"))
    poly = doc.get("poly")
    action = doc.get("action")
    if not isinstance(poly, list) or not isinstance(action, list):
        raise ParseError("galois recipe needs 'poly' and 'action' lists")
    coeffs = [field.parse(c) for c in poly]
    actions = [[field.parse(c) for c in a] for a in action]
    return field, coeffs, actions
