"""JSON patch files and OBJ export."""

from __future__ import annotations

import json
from fractions import Fraction

from .exact import IntModuleBasis, Lattice, module_basis
from .wythoff import HelicalFace, Patch, PatchVertex

__all__ = ["rat_str", "parse_rat", "patch_to_dict", "patch_from_dict", "dumps_patch",
           "loads_patch", "export_obj"]


def rat_str(x) -> str:
    x = Fraction(x)
    return "%d/%d" % (x.numerator, x.denominator)


def parse_rat(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    return Fraction(str(s).strip())


def _vec(v):
    return [rat_str(x) for x in v]


def _unvec(v):
    return tuple(parse_rat(x) for x in v)


def _lattice_dict(L) -> dict:
    if isinstance(L, Lattice):
        return {"kind": L.kind, "scale": rat_str(L.scale)}
    return {"kind": "MODULE", "basis": [_vec(b) for b in L.basis]}


def _lattice_from(d):
    if d["kind"] == "MODULE":
        return module_basis([_unvec(b) for b in d["basis"]])
    return Lattice(d["kind"], parse_rat(d["scale"]))


def patch_to_dict(p: Patch) -> dict:
    return {
        "family": p.family,
        "params": [rat_str(x) for x in p.params],
        "radius": rat_str(p.radius),
        "q": p.q,
        "lattice": _lattice_dict(p.lattice),
        "vertices": [{"pos": _vec(v.pos), "coset": v.coset, "multiplicity": v.multiplicity}
                     for v in p.vertices],
        "edges": [[i, j] for i, j in p.edges],
        "faces": [{"strip": [_vec(x) for x in f.strip], "translation": _vec(f.translation)}
                  for f in p.faces],
    }


def patch_from_dict(d: dict) -> Patch:
    return Patch(
        d["family"],
        tuple(parse_rat(x) for x in d["params"]),
        parse_rat(d.get("radius", "0")),
        _lattice_from(d["lattice"]),
        [PatchVertex(_unvec(v["pos"]), int(v["coset"]), int(v["multiplicity"]))
         for v in d["vertices"]],
        [(int(i), int(j)) for i, j in d["edges"]],
        [HelicalFace(tuple(_unvec(x) for x in f["strip"]), _unvec(f["translation"]))
         for f in d["faces"]],
        int(d.get("q", 0)),
    )


def dumps_patch(p: Patch) -> str:
    return json.dumps(patch_to_dict(p), indent=1, sort_keys=True) + "\n"


def loads_patch(text: str) -> Patch:
    return patch_from_dict(json.loads(text))


def _fmt(x) -> str:
    return "%.12g" % float(x)


def export_obj(p: Patch, turns: int = 1) -> str:
    """OBJ text: one ``v`` per distinct point, an ``l`` polyline per face
    (``turns`` periods of a helix, closed for finite faces) and ``f`` for finite faces."""
    polylines = []
    points = {v.pos for v in p.vertices}
    for f in p.faces:
        pts = f.points(turns)
        points.update(pts)
        polylines.append((pts, f.finite))
    order = sorted(points)
    index = {x: i + 1 for i, x in enumerate(order)}
    lines = ["# chirahedra %s(%s) radius %s" % (p.family, ",".join(rat_str(x) for x in p.params),
                                              rat_str(p.radius))]
    lines += ["v %s %s %s" % tuple(_fmt(c) for c in x) for x in order]
    for pts, finite in polylines:
        ids = [index[x] for x in pts]
        if finite:
            lines.append("l " + " ".join(str(i) for i in ids + ids[:1]))
            lines.append("f " + " ".join(str(i) for i in ids))
        else:
            lines.append("l " + " ".join(str(i) for i in ids))
    return "\n".join(lines) + "\n"
