"""Per-point checks behind ``chirahedra verify``.

Each checker takes (family, params), compares computed structure with the
closed-form statement, and returns a JSON-ready detail dict or raises Refuted.
"""

from __future__ import annotations

from fractions import Fraction

from .analysis import (
    covering_quotient, enantiomorph, face_translation_classes, handedness,
    vertex_star_catalog, verify_named_regular,
)
from .catalogue import COINCIDENCES, listed_stars
from .errors import Refuted
from .groups import (
    FamilyId, build_group, claimed_translation_lattice, discover_translation_lattice,
    verify_translation_lattice, vertex_coset_reps,
)
from .mixing import apply_eta, apply_phi2, phi2_target
from .wythoff import base_face, construct_patch, face_image

__all__ = ["LEMMAS", "expected_vertex_classes", "expected_face_classes", "run_lemma"]


def _int(x: Fraction):
    return x.numerator if x.denominator == 1 else None


def expected_vertex_classes(family, params) -> int:
    fam = FamilyId.parse(family)
    x, y = (Fraction(v) for v in params)
    if fam == FamilyId.P1:
        return 4
    if fam == FamilyId.P2:
        if x != 0:
            k = _int(y / x)
            if k is not None and k % 4 == 2:
                return 4
        return 8
    if fam == FamilyId.P3:
        if y == 0:
            return 6
        k = _int(x / y)
        if k is None:
            return 6
        return 3 if k % 2 == 0 else 1
    raise ValueError(fam)


def expected_face_classes(family, params) -> int:
    fam = FamilyId.parse(family)
    x, y = (Fraction(v) for v in params)
    if fam == FamilyId.P1:
        return 4
    if fam == FamilyId.P2:
        return 6
    if y != 0 and (x == 0 or x == y or x == -y):
        return 4
    return 8


EXPECTED_COVERS = {FamilyId.P1: (4, 6, 4, 3, 3), FamilyId.P2: (8, 12, 6, 4, 3),
                   FamilyId.P3: (6, 12, 8, 3, 4)}


def check_translation_lattice(family, params):
    G = build_group(family, params)
    rep = verify_translation_lattice(G)
    claimed = claimed_translation_lattice(family, params)
    disc = discover_translation_lattice(G)
    if claimed is not None and not disc.same_span(claimed) and claimed.kind != "TRIVIAL":
        raise Refuted("discovered lattice %s differs from %s" % (disc, claimed), witness=str(disc))
    return {"lattice": str(rep.lattice), "quotient_order": rep.quotient_order,
            "generator_words": [" ".join(w) for w, _ in rep.generator_words]}


def check_vertex_cosets(family, params):
    reps = vertex_coset_reps(family, params)
    want = expected_vertex_classes(family, params)
    if len(reps) != want:
        raise Refuted("%d vertex classes, expected %d" % (len(reps), want), witness=len(reps))
    return {"classes": len(reps)}


def check_stars(family, params):
    cat = vertex_star_catalog(family, params)
    listed = listed_stars(family, params)
    for k, (a, b) in enumerate(zip(cat.stars, listed)):
        if set(a) != set(b):
            raise Refuted("star %d differs from the listed one" % k, witness=k)
    fam = FamilyId.parse(family)
    x, y = (Fraction(v) for v in params)
    regular_locus = (fam == FamilyId.P2 and y == 0) or (fam == FamilyId.P3 and x == 0)
    if regular_locus and not set(COINCIDENCES[fam]) <= set(cat.coincidences):
        raise Refuted("missing star coincidences", witness=cat.coincidences)
    return {"stars": len(cat.stars), "distinct": cat.distinct}


def check_face_classes(family, params):
    rep = face_translation_classes(family, params)
    want = expected_face_classes(family, params)
    if rep.count != want:
        raise Refuted("%d face classes, expected %d" % (rep.count, want), witness=rep.count)
    return {"classes": rep.count, "faces_examined": rep.faces_examined}


def check_phi2(family, params):
    G = build_group(family, params)
    p = apply_phi2(G)
    H = phi2_target(G)
    if p.S1 != H.S1 or p.S2 != H.S2:
        raise Refuted("phi2 of %s is not %s" % (G.label(), H.label()), witness=str(p.S1))
    return {"target": H.label()}


def check_eta(family, params):
    w = apply_eta(build_group(family, params))
    return {"target": w.target.label(), "conjugator": str(w.conjugator),
            "flag_change": w.flag_change}


def check_covering(family, params):
    c = covering_quotient(family, params)
    v, e, f, fs, deg = EXPECTED_COVERS[FamilyId.parse(family)]
    got = (c.vertices, c.edges, c.faces)
    if got != (v, e, f) or set(c.face_sizes) != {fs} or set(c.vertex_degrees) != {deg}:
        raise Refuted("covering census %s" % (got,), witness=got)
    return {"census": list(got), "euler": c.euler}


def check_named_regular(family, params):
    r = verify_named_regular(family, params[0])
    return {"name": r.name, "twist": [str(x) for x in r.twist], "witness": str(r.witness),
            "petrie_period": r.petrie_period}


def check_enantiomorph(family, params, radius=6):
    e = enantiomorph(family, params)
    if enantiomorph(family, e.params).params != tuple(Fraction(x) for x in params):
        raise Refuted("enantiomorph is not an involution", witness=e.params)
    G = build_group(family, params)
    H = build_group(family, e.params)
    A = construct_patch(G, radius).positions()
    B = construct_patch(H, radius).positions()
    image = {e.mirror.apply(x) for x in A}
    if image != B:
        raise Refuted("mirror image of the vertex set differs", witness=len(image ^ B))
    hg, hh = handedness(base_face(G)), handedness(base_face(H))
    if hg != -hh:
        raise Refuted("handedness %d and %d do not flip" % (hg, hh), witness=(hg, hh))
    return {"mirror_params": [str(x) for x in e.params], "vertices": len(A),
            "handedness": [hg, hh]}


LEMMAS = {
    "translation-lattice": check_translation_lattice,
    "vertex-cosets": check_vertex_cosets,
    "stars": check_stars,
    "face-classes": check_face_classes,
    "phi2": check_phi2,
    "eta": check_eta,
    "covering": check_covering,
    "named-regular": check_named_regular,
    "enantiomorph": check_enantiomorph,
}


def run_lemma(lemma, family, params) -> dict:
    return LEMMAS[lemma](family, params)
