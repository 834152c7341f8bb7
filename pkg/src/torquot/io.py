"""Canonical JSON documents for fans, cones, sublattices, matrices and results.

Every document carries ``format`` and ``formatVersion``.  Collections are
written sorted, so serializing equal objects gives byte-identical text.
Fans are written as their maximal cones; the face closure is implied.
"""
from __future__ import annotations

import json
from typing import Any

from .cone import Cone, cone_from_generators
from .errors import DocumentError
from .fan import ConeSystem, Fan, FanValidation, Quasifan, face_closure
from .linalg import Matrix, SublatticeBasis, as_matrix, sublattice

FORMAT_VERSION = 1

_FIELDS = {
    "fan": ({"format", "formatVersion", "latticeRank", "rays", "cones"},
            {"linealityGenerators"}),
    "cone": ({"format", "formatVersion", "latticeRank", "rays"},
             {"linealityGenerators"}),
    "sublattice": ({"format", "formatVersion", "ambientRank", "basis"}, set()),
    "matrix": ({"format", "formatVersion", "rows", "cols", "entries"}, set()),
}


# ---------------------------------------------------------------------------
# text layout


def dumps(doc: Any) -> str:
    """Deterministic JSON: short containers inline, long ones one item per line."""
    return _layout(doc, 0) + "\n"


def _layout(obj: Any, indent: int, one_per_line: bool = False) -> str:
    flat = json.dumps(obj, separators=(", ", ": "))
    if not isinstance(obj, (dict, list)) or not obj:
        return flat
    if len(flat) + indent <= 88 and not one_per_line:
        return flat
    pad = " " * (indent + 2)
    if isinstance(obj, dict):
        items = [f"{pad}{json.dumps(k)}: {_layout(v, indent + 2, k == 'trace')}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + " " * indent + "}"
    if one_per_line:
        # trace entries stay on a single line each so logs diff cleanly
        items = [pad + json.dumps(v, separators=(", ", ": ")) for v in obj]
    else:
        items = [pad + _layout(v, indent + 2) for v in obj]
    return "[\n" + ",\n".join(items) + "\n" + " " * indent + "]"


def loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    return doc


def read_document(path: str, kind: str | None = None) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = loads(fh.read())
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc
    if kind is not None:
        _check_fields(doc, kind)
    return doc


def write_document(doc: dict, path: str | None) -> str:
    text = dumps(doc)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


def _check_fields(doc: dict, kind: str) -> None:
    if doc.get("format") != kind:
        raise DocumentError(f"expected a {kind!r} document, got format={doc.get('format')!r}")
    required, optional = _FIELDS[kind]
    unknown = set(doc) - required - optional
    if unknown:
        raise DocumentError(f"unknown field(s) in {kind} document: {sorted(unknown)}")
    missing = required - set(doc)
    if missing:
        raise DocumentError(f"missing field(s) in {kind} document: {sorted(missing)}")
    if doc["formatVersion"] != FORMAT_VERSION:
        raise DocumentError(f"unsupported formatVersion {doc['formatVersion']!r}")


def _int_rows(value: Any, width: int, what: str) -> list[tuple[int, ...]]:
    if not isinstance(value, list):
        raise DocumentError(f"{what} must be a list")
    rows = []
    for row in value:
        if (not isinstance(row, list) or len(row) != width
                or not all(isinstance(x, int) and not isinstance(x, bool) for x in row)):
            raise DocumentError(f"{what}: expected integer vectors of length {width}, got {row!r}")
        rows.append(tuple(row))
    return rows


def _rank(value: Any, what: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise DocumentError(f"{what} must be a nonnegative integer")
    return value


# ---------------------------------------------------------------------------
# sublattices and matrices


def sublattice_to_doc(L: SublatticeBasis) -> dict:
    return {"format": "sublattice", "formatVersion": FORMAT_VERSION,
            "ambientRank": L.ambient_rank, "basis": [list(b) for b in L.basis]}


def sublattice_from_doc(doc: dict) -> SublatticeBasis:
    _check_fields(doc, "sublattice")
    n = _rank(doc["ambientRank"], "ambientRank")
    basis = _int_rows(doc["basis"], n, "basis")
    L = sublattice(n, basis)
    if L.rank != len(basis):
        raise DocumentError("sublattice basis vectors are linearly dependent")
    return L


def matrix_to_doc(M: Matrix, rows: int, cols: int) -> dict:
    return {"format": "matrix", "formatVersion": FORMAT_VERSION,
            "rows": rows, "cols": cols, "entries": [list(r) for r in M]}


def matrix_from_doc(doc: dict) -> tuple[Matrix, int, int]:
    _check_fields(doc, "matrix")
    r = _rank(doc["rows"], "rows")
    c = _rank(doc["cols"], "cols")
    entries = _int_rows(doc["entries"], c, "entries")
    if len(entries) != r:
        raise DocumentError(f"matrix declares {r} rows but has {len(entries)}")
    return as_matrix(entries), r, c


# ---------------------------------------------------------------------------
# cones and fans


def cone_to_doc(c: Cone) -> dict:
    return {"format": "cone", "formatVersion": FORMAT_VERSION,
            "latticeRank": c.ambient_rank, "rays": [list(r) for r in c.rays],
            "linealityGenerators": [list(b) for b in c.lineality.basis]}


def cone_from_doc(doc: dict) -> Cone:
    _check_fields(doc, "cone")
    n = _rank(doc["latticeRank"], "latticeRank")
    rays = _int_rows(doc["rays"], n, "rays")
    lin = _int_rows(doc.get("linealityGenerators", []), n, "linealityGenerators")
    return cone_from_generators(n, rays, lin)


def fan_to_doc(S: ConeSystem) -> dict:
    """Canonical fan document listing the maximal cones of ``S``."""
    maxc = S.maximal_cones
    lins = {c.lineality for c in maxc}
    shared = next(iter(lins)) if len(lins) == 1 else None
    per_cone = []
    for c in maxc:
        gens = set(c.rays)
        if shared is None:
            gens.update(c.lineality.basis)
            gens.update(tuple(-x for x in b) for b in c.lineality.basis)
        per_cone.append(gens)
    rays = sorted(set().union(*per_cone)) if per_cone else []
    index = {r: i for i, r in enumerate(rays)}
    cones = sorted(sorted(index[r] for r in gens) for gens in per_cone)
    doc = {"format": "fan", "formatVersion": FORMAT_VERSION,
           "latticeRank": S.ambient_rank, "rays": [list(r) for r in rays]}
    lin = [] if shared is None else [list(b) for b in shared.basis]
    if lin:
        doc["linealityGenerators"] = lin
    doc["cones"] = cones
    return doc


def fan_from_doc(doc: dict) -> ConeSystem:
    """Face-closed cone system described by a fan document (not validated)."""
    _check_fields(doc, "fan")
    n = _rank(doc["latticeRank"], "latticeRank")
    rays = _int_rows(doc["rays"], n, "rays")
    lin = _int_rows(doc.get("linealityGenerators", []), n, "linealityGenerators")
    if not isinstance(doc["cones"], list) or not doc["cones"]:
        raise DocumentError("cones must be a nonempty list of ray index lists")
    cones = []
    for idx in doc["cones"]:
        if (not isinstance(idx, list)
                or not all(isinstance(i, int) and not isinstance(i, bool) for i in idx)):
            raise DocumentError(f"cone entry {idx!r} is not a list of ray indices")
        if any(i < 0 or i >= len(rays) for i in idx):
            raise DocumentError(f"cone {idx} refers to a ray index out of range")
        cones.append(cone_from_generators(n, [rays[i] for i in idx], lin))
    return ConeSystem(n, face_closure(cones))


def as_fan(S: ConeSystem) -> Fan:
    return Fan(S.ambient_rank, S.cones)


def as_quasifan(S: ConeSystem) -> Quasifan:
    return Quasifan(S.ambient_rank, S.cones)


# ---------------------------------------------------------------------------
# results


def validation_to_doc(report: FanValidation) -> dict:
    return {"format": "validation", "formatVersion": FORMAT_VERSION,
            "classification": report.name,
            "violations": [v.as_dict() for v in report.violations]}


def quotient_to_doc(q, trace: bool = False) -> dict:
    n = q.source.ambient_rank
    doc = {"format": "quotient", "formatVersion": FORMAT_VERSION,
           "sublattice": sublattice_to_doc(q.sublattice),
           "enlargedKernel": sublattice_to_doc(q.enlarged_kernel),
           "projection": matrix_to_doc(q.projection, q.rank, n),
           "quotientFan": fan_to_doc(q.fan)}
    if trace:
        doc["trace"] = [step.as_dict() for step in q.trace]
    return doc


def good_model_to_doc(gm) -> dict:
    n = gm.source.ambient_rank
    return {"format": "good-model", "formatVersion": FORMAT_VERSION,
            "sublattice": sublattice_to_doc(gm.sublattice),
            "modelKernel": sublattice_to_doc(gm.model_kernel),
            "G": matrix_to_doc(gm.G, gm.rank, n),
            "modelFan": fan_to_doc(gm.fan),
            "Pbar": matrix_to_doc(gm.P_bar, gm.quotient.rank, gm.rank),
            "quotient": quotient_to_doc(gm.quotient)}


def goodness_to_doc(report) -> dict:
    return {"format": "goodness-report", "formatVersion": FORMAT_VERSION,
            "isGood": report.is_good, "isGeometric": report.is_geometric,
            "perMaximalCone": [m.as_dict() for m in report.per_maximal_cone]}


def affine_quotient_to_doc(aq, n: int) -> dict:
    return {"format": "affine-quotient", "formatVersion": FORMAT_VERSION,
            "face": cone_to_doc(aq.face),
            "enlargedKernel": sublattice_to_doc(aq.enlarged_kernel),
            "projection": matrix_to_doc(aq.projection, n - aq.enlarged_kernel.rank, n),
            "image": cone_to_doc(aq.image)}


def orbit_closure_to_doc(L: SublatticeBasis, P: Matrix, fan: Fan) -> dict:
    n = L.ambient_rank
    return {"format": "orbit-closure", "formatVersion": FORMAT_VERSION,
            "sublattice": sublattice_to_doc(L),
            "projection": matrix_to_doc(P, n - L.rank, n),
            "fan": fan_to_doc(fan)}
