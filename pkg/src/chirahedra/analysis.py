"""Vertex-stars, regularity witnesses, classification, enantiomorphs and coverings."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import NotAVertex, Refuted
from .exact import (
    Isometry, SignedPerm, all_signed_perms, det3, rat, signed_perm, sub, vec,
)
from .groups import (
    FamilyId, Group, VertexLabels, build_group, closure, evaluate_word,
    finite_fixed_point, normalize_params, special_group_closure, vertex_labels,
)
from .wythoff import (
    HelicalFace, base_face, face_image, face_key_mod_lattice,
)

__all__ = [
    "vertex_star", "vertex_stars_at", "vertex_star_catalog", "StarCatalog",
    "star_planarity", "regularity_witness", "WitnessResult", "classify",
    "Classification", "enantiomorph", "affinely_equivalent", "AffineWitness",
    "face_translation_classes", "FaceClassReport", "handedness",
    "covering_quotient", "CoveringCensus", "verify_named_regular", "NamedRegularReport",
]

# names of the regular members of each family
FINITE_NAMES = {FamilyId.P1: "{3,3}", FamilyId.P2: "{4,3}", FamilyId.P3: "{3,4}"}
INFINITE_NAMES = {FamilyId.P1: "{∞,3}^{(a)}", FamilyId.P2: "{∞,3}^{(b)}", FamilyId.P3: "{∞,4}_{·,*3}"}
NAMED_CASES = {
    FamilyId.TWI_33STAR: "{∞,6}_{4,4}",
    FamilyId.TWI_34: "{∞,6}_{6,3}",
    FamilyId.TWI_33: "{∞,4}_{6,4}",
}


def _conj_word(k: int) -> tuple:
    """Word for S2^-k T S2^k."""
    return ("S2^-1",) * k + ("T",) + ("S2",) * k


def catalog_words(family: FamilyId) -> list:
    """Words R whose vertex o R carries the k-th catalogued vertex-star W0 R'."""
    if family == FamilyId.P1:
        return [(), _conj_word(1), _conj_word(0), _conj_word(2)]
    if family == FamilyId.P2:
        t1, t2, t3 = _conj_word(1), _conj_word(0), _conj_word(2)
        u1, u2, u3 = t1 + t2 + t3 + t2, t2 + t1 + t3 + t1, t3 + t1 + t2 + t1
        return [(), u1, u2, u3, t1, u1 + t1, u2 + t1, u3 + t1]
    if family == FamilyId.P3:
        t0, t1 = _conj_word(0), _conj_word(1)
        return [(), t0, t0 + t1, t0 + t1 + t0, t1 + t0, t1]
    raise ValueError("no vertex-star catalogue for %s" % family.value)


def _group(family, params) -> Group:
    return build_group(family, params)


def base_star(G: Group) -> list:
    v = G.T.apply(G.base_vertex)
    return [(G.S2 ** j).apply(v) for j in range(G.q)]


def vertex_stars_at(family, params, vertex, labels: VertexLabels = None) -> list:
    """Every vertex-star at ``vertex`` (more than one where vertices coincide)."""
    G = _group(family, params)
    VL = labels if labels is not None else vertex_labels(G)
    k = VL.reduce(vec(vertex))
    stars = [VL.star(l) for l, p in enumerate(VL.position) if VL.reduce(p) == k]
    if not stars:
        raise NotAVertex("%s is not a vertex of %s" % (vertex, G.label()))
    return stars


def vertex_star(family, params, vertex) -> list:
    return vertex_stars_at(family, params, vertex)[0]


@dataclass
class StarCatalog:
    stars: list          # k-th catalogued star as an ordered list of vectors
    vertices: list       # the vertex carrying it
    coincidences: list   # index pairs (i, j), i < j, with equal star sets

    @property
    def distinct(self) -> int:
        return len({frozenset(s) for s in self.stars})


def vertex_star_catalog(family, params) -> StarCatalog:
    G = _group(family, params)
    fam = G.family
    W0 = base_star(G)
    stars, verts = [], []
    for w in catalog_words(fam):
        R = evaluate_word(G, w)
        stars.append([R.linear.apply(x) for x in W0])
        verts.append(R.apply(G.base_vertex))
    sets = [frozenset(s) for s in stars]
    co = [(i, j) for i in range(len(sets)) for j in range(i + 1, len(sets)) if sets[i] == sets[j]]
    return StarCatalog(stars, verts, co)


@dataclass
class Planarity:
    planar: bool
    kind: str            # "det" or "rank"
    certificate: object  # determinant or rank


def star_planarity(family, params) -> Planarity:
    G = _group(family, params)
    W0 = base_star(G)
    if len(W0) == 3:
        d = det3(*W0)
        return Planarity(d == 0, "det", d)
    return Planarity(_rank(W0) <= 2, "rank", _rank(W0))


def _rank(vectors) -> int:
    rows = [list(v) for v in vectors]
    r = 0
    for c in range(3):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                k = rows[i][c] / rows[r][c]
                rows[i] = [a - k * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


# -- regularity ------------------------------------------------------------

@dataclass
class WitnessResult:
    witness: Optional[SignedPerm]
    # for each rejected candidate, the first condition it fails
    rejections: dict = field(default_factory=dict)

    def __bool__(self):
        return self.witness is not None


def _iso(lin: SignedPerm) -> Isometry:
    return Isometry(lin, (Fraction(0),) * 3)


def regularity_witness(G: Group) -> WitnessResult:
    """Search the 48 linear signed permutations for a plane-reflection-type symmetry R.

    R must satisfy R^2 = 1, R^-1 S2 R = S2^-1, R^-1 T R = T, o R = o and
    R^-1 S1 R = S1 S2^2.
    """
    S1, S2, T = G.S1, G.S2, G.T
    o = G.base_vertex
    target = S1 * S2 * S2
    res = WitnessResult(None)
    for lin in all_signed_perms():
        R = _iso(lin)
        Ri = R.inverse()
        checks = (
            ("R^2 = 1", lambda: (R * R).is_identity()),
            ("R^-1 S2 R = S2^-1", lambda: Ri * S2 * R == S2.inverse()),
            ("R^-1 T R = T", lambda: Ri * T * R == T),
            ("o R = o", lambda: R.apply(o) == o),
            ("R^-1 S1 R = S1 S2^2", lambda: Ri * S1 * R == target),
        )
        failed = next((name for name, ok in checks if not ok()), None)
        if failed is None:
            res.witness = lin
            return res
        res.rejections[str(lin)] = failed
    return res


@dataclass(frozen=True)
class Classification:
    kind: str  # Chiral | Regular | FiniteRegular | FiniteChiral | DegenerateNonFaithful
    name: Optional[str] = None
    multiplicity: int = 1
    witness: Optional[SignedPerm] = None

    def __str__(self):
        if self.kind == "Chiral":
            return "chiral"
        if self.kind == "Regular":
            return "regular %s" % self.name
        if self.kind == "FiniteRegular":
            return "finite regular %s" % self.name
        if self.kind == "FiniteChiral":
            return "finite chiral"
        return "degenerate (vertex multiplicity %d)" % self.multiplicity


def classify(family, params) -> Classification:
    from .wythoff import detect_multiplicity

    G = _group(family, params)
    fam = G.family
    wit = regularity_witness(G)
    if finite_fixed_point(G) is not None:
        if not wit:
            return Classification("FiniteChiral")
        return Classification("FiniteRegular", FINITE_NAMES.get(fam), witness=wit.witness)
    m = detect_multiplicity(G).multiplicity
    if m > 1:
        return Classification("DegenerateNonFaithful", multiplicity=m)
    if wit:
        return Classification("Regular", INFINITE_NAMES.get(fam, NAMED_CASES.get(fam)),
                              witness=wit.witness)
    return Classification("Chiral")


# -- enantiomorphs and similarity ------------------------------------------

MIRRORS = {
    FamilyId.P1: signed_perm("3,2,1"),
    FamilyId.P2: signed_perm("2,1,3"),
    FamilyId.P3: signed_perm("1,2,-3"),
}


def mirror_params(family, params) -> tuple:
    fam = FamilyId.parse(family)
    x, y = normalize_params(fam, params)
    if fam == FamilyId.P1:
        return (y, x)
    if fam == FamilyId.P2:
        return (-x, y)
    if fam == FamilyId.P3:
        return (x, -y)
    raise ValueError("no enantiomorph rule for %s" % fam.value)


@dataclass
class Enantiomorph:
    params: tuple
    mirror: SignedPerm


def enantiomorph(family, params) -> Enantiomorph:
    """Mirror image parameters and the plane reflection R carrying one onto the other.

    Checked: R^-1 T R is the mirror's T and R^-1 S2 R is the mirror's S2^-1,
    so R maps the base flag of one onto the base flag of the other.
    """
    fam = FamilyId.parse(family)
    G = _group(fam, params)
    new = mirror_params(fam, params)
    H = _group(fam, new)
    R = _iso(MIRRORS[fam])
    if R.inverse() * G.T * R != H.T or R.inverse() * G.S2 * R != H.S2.inverse():
        raise Refuted("mirror %s does not conjugate %s onto %s" % (R.linear, G.label(), H.label()),
                      witness=R.linear)
    return Enantiomorph(new, MIRRORS[fam])


def conjugate_by_similarity(g: Isometry, M: SignedPerm, s) -> Isometry:
    """x -> ((x/s) M^-1) g  then scaled back: the map (sM)^-1 g (sM)."""
    s = rat(s)
    return Isometry(M.inverse() * g.linear * M, tuple(s * x for x in M.apply(g.trans)))


@dataclass
class AffineWitness:
    scalar: Fraction
    mirror: Optional[SignedPerm]   # None when the map is a pure scaling
    congruent: bool


def affinely_equivalent(family, A, B) -> Optional[AffineWitness]:
    """Similarity x -> s x M taking the generators of A to those of B, if one is listed."""
    fam = FamilyId.parse(family)
    a = normalize_params(fam, A)
    b = normalize_params(fam, B)
    if not any(a) or not any(b):
        return None

    def ratio(u, v):
        # s with v = s u, or None
        s = None
        for x, y in zip(u, v):
            if x == 0:
                if y != 0:
                    return None
                continue
            if s is None:
                s = y / x
            elif y != s * x:
                return None
        return s

    ident = signed_perm("1,2,3")
    options = [(ident, a, False)]
    if fam in MIRRORS:
        options.append((MIRRORS[fam], mirror_params(fam, a), True))
    G = _group(fam, a)
    H = _group(fam, b)
    for M, u, flips in options:
        s = ratio(u, b)
        if not s:
            continue
        # the similarity x -> s x M conjugates T onto T and S2 onto S2 (or S2^-1 for a mirror)
        S2_img = conjugate_by_similarity(G.S2, M, s)
        if conjugate_by_similarity(G.T, M, s) != H.T:
            continue
        if S2_img != (H.S2.inverse() if flips else H.S2):
            continue
        return AffineWitness(s, None if M == ident else M, abs(s) == 1)
    return None


# -- faces -----------------------------------------------------------------

@dataclass
class FaceClassReport:
    representatives: list      # one face per translation class
    words: list                # group word carrying the base face onto it
    count: int
    faces_examined: int


def face_translation_classes(family, params) -> FaceClassReport:
    """Translation classes of faces, by exhaustion over faces at every vertex class.

    Every face meets some vertex o r with r in the transversal of G mod T(G),
    and the faces at o r are F2 S2^j r.  Classes are compared as point sets
    modulo the lattice.
    """
    G = _group(family, params)
    VL = vertex_labels(G)
    Q = VL.quotient
    F2 = base_face(G)
    reps, words, seen = [], [], set()
    n = 0
    for i, r in enumerate(Q.reps):
        for j in range(G.q):
            f = face_image(F2, (G.S2 ** j) * r)
            n += 1
            k = face_key_mod_lattice(f, Q.lattice)
            if k not in seen:
                seen.add(k)
                reps.append(f)
                words.append(("S2",) * j + Q.words[i])
    return FaceClassReport(reps, words, len(reps), n)


def handedness(face: HelicalFace) -> int:
    """Sign of det[y-x, z-y, t] over the first three strip vertices: +1 right, -1 left, 0 flat."""
    x, y, z = face.strip[:3]
    d = det3(sub(y, x), sub(z, y), face.translation)
    return (d > 0) - (d < 0)


# -- coverings ---------------------------------------------------------------

COVER_VERTEX = {FamilyId.P1: (1, 1, 1), FamilyId.P2: (1, 1, 1), FamilyId.P3: (0, 1, 0)}


@dataclass
class CoveringCensus:
    vertices: int
    edges: int
    faces: int
    face_sizes: list
    vertex_degrees: list

    @property
    def euler(self) -> int:
        return self.vertices - self.edges + self.faces


def covering_quotient(family, params) -> CoveringCensus:
    """Wythoff's construction on the special group G0 = <S1', S2'> from the listed initial vertex."""
    G = _group(family, params)
    u = vec(COVER_VERTEX[G.family])
    S1, S2, T = G.S1.linear, G.S2.linear, G.T.linear
    if S2.apply(u) != u:
        raise Refuted("initial vertex %s is not fixed by S2'" % (u,), witness=u)
    elems = special_group_closure(G).elements
    verts = {g.apply(u) for g in elems}
    edges = {frozenset((g.apply(u), g.apply(T.apply(u)))) for g in elems}
    base = []
    g = S1.inverse() * S1  # identity
    for _ in range(S1.order()):
        base.append(g.apply(u))
        g = g * S1
    faces = {frozenset(h.apply(p) for p in base) for h in elems}
    degree = {v: 0 for v in verts}
    for e in edges:
        for v in e:
            degree[v] += 1
    return CoveringCensus(len(verts), len(edges), len(faces),
                          sorted(len(f) for f in faces), sorted(degree.values()))


# -- named regular cases -----------------------------------------------------

NAMED_DATA = {
    FamilyId.TWI_33STAR: ((-1, -1, 1), signed_perm("3,2,1"), 2),
    FamilyId.TWI_34: ((-4, 0, 0), signed_perm("2,1,3"), 3),
    FamilyId.TWI_33: ((-2, -2, -2), signed_perm("1,2,-3"), 3),
}


@dataclass
class NamedRegularReport:
    case: FamilyId
    a: Fraction
    name: str
    twist: tuple
    witness: Optional[SignedPerm]
    petrie_period: Optional[int]


def verify_named_regular(case, a) -> NamedRegularReport:
    """Twist translation of S1, reflection witness and the period of S1^2 S2^2."""
    fam = FamilyId.parse(case)
    a = rat(a)
    G = _group(fam, (a,))
    twist_dir, mirror, period = NAMED_DATA[fam]
    p = G.p_linear
    tw = (G.S1 ** p).trans
    if tw != tuple(a * x for x in twist_dir):
        raise Refuted("%s: S1^%d translates by %s" % (G.label(), p, tw), witness=tw)
    wit = regularity_witness(G).witness
    if wit != mirror:
        raise Refuted("%s: witness %s, expected %s" % (G.label(), wit, mirror), witness=wit)
    per = (G.S1 ** 2 * G.S2 ** 2).period()
    if per != period:
        raise Refuted("%s: S1^2 S2^2 has period %s" % (G.label(), per), witness=per)
    return NamedRegularReport(fam, a, NAMED_CASES[fam], tw, wit, per)
