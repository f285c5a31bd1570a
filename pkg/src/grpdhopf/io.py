"""JSON formats for groupoids, representations and Hopf algebroids.

Scalars are written as strings, ``"p/q"`` over the rationals and
``"r mod p"`` over prime fields, so that files round-trip exactly.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .groupoid import FiniteGroupoid
from .hopf import CommAlgebra, HopfAlgebroid
from .linalg import FieldSpec, Matrix
from .representation import Representation


class ParseError(ValueError):
    """An input document does not match the expected format."""


def dumps(obj: Any) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _need(doc: dict, key: str, kind):
    if not isinstance(doc, dict) or key not in doc:
        raise ParseError(f"missing key {key!r}")
    val = doc[key]
    if not isinstance(val, kind):
        raise ParseError(f"key {key!r} has type {type(val).__name__}")
    return val


# ------------------------------------------------------------- groupoids

def groupoid_to_json(g: FiniteGroupoid) -> dict:
    on, an = g.object_names, g.arrow_names
    return {
        "objects": list(on),
        "arrows": [{"id": an[a], "src": on[g.src[a]], "tgt": on[g.tgt[a]]} for a in g.arrows],
        "compose": [[an[h], an[f], an[c]] for (h, f), c in sorted(g.compose_table.items())],
        "identity": {on[x]: an[g.identity[x]] for x in g.objects},
        "inverse": {an[a]: an[g.inverse[a]] for a in g.arrows},
    }


def groupoid_from_json(doc: dict) -> FiniteGroupoid:
    """Parse the groupoid format; names are mapped to dense ids in file order.

    The tables are taken as given: a compose list that misses a composable
    pair loads fine and is reported by ``validate_groupoid``.
    """
    objects = _need(doc, "objects", list)
    arrows = _need(doc, "arrows", list)
    compose = _need(doc, "compose", list)
    identity = _need(doc, "identity", dict)
    inverse = _need(doc, "inverse", dict)
    if len(set(objects)) != len(objects):
        raise ParseError("duplicate object names")
    oi = {str(o): i for i, o in enumerate(objects)}
    ai: dict[str, int] = {}
    src, tgt = [], []
    for a in arrows:
        name = str(_need(a, "id", (str, int)))
        if name in ai:
            raise ParseError(f"duplicate arrow {name!r}")
        ai[name] = len(ai)
        for key, table in (("src", src), ("tgt", tgt)):
            o = str(_need(a, key, (str, int)))
            if o not in oi:
                raise ParseError(f"arrow {name!r}: unknown object {o!r}")
            table.append(oi[o])

    def arrow(n):
        if str(n) not in ai:
            raise ParseError(f"unknown arrow {n!r}")
        return ai[str(n)]

    comp = {}
    for entry in compose:
        if not isinstance(entry, list) or len(entry) != 3:
            raise ParseError(f"compose entry {entry!r} is not a triple")
        key = (arrow(entry[0]), arrow(entry[1]))
        if key in comp:
            raise ParseError(f"compose entry for {entry[:2]!r} given twice")
        comp[key] = arrow(entry[2])
    ident = []
    for o in objects:
        if str(o) not in identity:
            raise ParseError(f"no identity for object {o!r}")
        ident.append(arrow(identity[str(o)]))
    inv = []
    for a in arrows:
        if str(a["id"]) not in inverse:
            raise ParseError(f"no inverse for arrow {a['id']!r}")
        inv.append(arrow(inverse[str(a["id"])]))
    return FiniteGroupoid(len(objects), src, tgt, comp, ident, inv,
                          [str(o) for o in objects], [str(a["id"]) for a in arrows])


# ------------------------------------------------------------- matrices

def matrix_to_json(m: Matrix) -> list:
    return [[m.field.format(v) for v in row] for row in m.data]


def matrix_from_json(field: FieldSpec, rows: list, cols: int | None = None) -> Matrix:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise ParseError("matrix must be a list of rows")
    try:
        return Matrix.from_rows(field, [[field.parse_scalar(str(v)) for v in r] for r in rows], cols)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad matrix: {exc}") from exc


def field_from_json(text) -> FieldSpec:
    try:
        return FieldSpec.parse(str(text))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


# ------------------------------------------------------------- representations

def rep_to_json(r: Representation, groupoid: Any = None) -> dict:
    g = r.groupoid
    return {"groupoid": groupoid if groupoid is not None else groupoid_to_json(g),
            "field": str(r.field), "rank": r.rank,
            "matrices": {g.arrow_names[a]: matrix_to_json(r[a]) for a in g.arrows}}


def rep_from_json(doc: dict, base_dir: Path | None = None, field: FieldSpec | None = None) -> Representation:
    gdoc = _need(doc, "groupoid", (dict, str))
    if isinstance(gdoc, str):
        path = Path(gdoc) if base_dir is None else base_dir / gdoc
        try:
            gdoc = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"cannot read groupoid {gdoc!r}: {exc}") from exc
    g = groupoid_from_json(gdoc)
    f = field or field_from_json(_need(doc, "field", str))
    d = _need(doc, "rank", int)
    mats = _need(doc, "matrices", dict)
    out = []
    for a in g.arrows:
        name = g.arrow_names[a]
        if name not in mats:
            raise ParseError(f"no matrix for arrow {name!r}")
        m = matrix_from_json(f, mats[name], d)
        if m.shape != (d, d):
            raise ParseError(f"matrix for {name!r} has shape {m.shape}, expected rank {d}")
        out.append(m)
    return Representation(g, f, d, out)


# ------------------------------------------------------------- Hopf algebroids

def _algebra_to_json(a: CommAlgebra) -> dict:
    f = a.field
    return {
        "basis": list(a.labels),
        "structure_constants": [[i, j, k, f.format(c)] for (i, j), prod in sorted(a.mult.items())
                                for k, c in sorted(prod.items())],
        "unit": [f.format(a.unit.get(i, f.zero)) for i in range(a.dim)],
        "split_witness": matrix_to_json(a.split_witness) if a.split_witness is not None else None,
    }


def _algebra_from_json(doc: dict, f: FieldSpec) -> CommAlgebra:
    labels = _need(doc, "basis", list)
    mult: dict = {}
    for entry in _need(doc, "structure_constants", list):
        i, j, k, c = entry
        mult.setdefault((int(i), int(j)), {})[int(k)] = f.parse_scalar(str(c))
    unit = {i: f.parse_scalar(str(c)) for i, c in enumerate(_need(doc, "unit", list))}
    w = doc.get("split_witness")
    witness = matrix_from_json(f, w, len(labels)) if w is not None else None
    return CommAlgebra(f, labels, mult, unit, witness)


def hopf_to_json(h: HopfAlgebroid) -> dict:
    return {
        "field": str(h.field),
        "base": list(h.base.labels),
        "total": _algebra_to_json(h.total),
        "comult_basis": [list(p) for p in h.comult_basis],
        "maps": {name: matrix_to_json(getattr(h, name))
                 for name in ("source", "target", "counit", "comult", "antipode")},
    }


def hopf_from_json(doc: dict) -> HopfAlgebroid:
    f = field_from_json(_need(doc, "field", str))
    base = CommAlgebra.split(f, _need(doc, "base", list))
    total = _algebra_from_json(_need(doc, "total", dict), f)
    maps = _need(doc, "maps", dict)
    r, m = base.dim, total.dim
    pairs = [tuple(p) for p in _need(doc, "comult_basis", list)]
    cols = {"source": r, "target": r, "counit": m, "comult": m, "antipode": m}
    mats = {name: matrix_from_json(f, _need(maps, name, list), c) for name, c in cols.items()}
    try:
        return HopfAlgebroid(base, total, mats["source"], mats["target"], mats["counit"], mats["comult"],
                             pairs, mats["antipode"])
    except TypeError as exc:
        raise ParseError(str(exc)) from exc


# ------------------------------------------------------------- files

def load_json(path: str | Path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc


def save_json(obj: Any, path: str | Path):
    Path(path).write_text(dumps(obj))
