"""Wythoff construction: base flag, bounded patches, multiplicities."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor, lcm

import numpy as np

from . import kernels
from .exact import IntModuleBasis, Isometry, Lattice, add, module_basis, cross, dot, max_norm, scale, sub, translation
from .groups import Group, VertexLabels, _reduce, vertex_labels

__all__ = [
    "HelicalFace", "base_face", "face_image", "face_key", "face_key_mod_lattice",
    "PatchVertex", "Patch", "construct_patch", "MultiplicityReport",
    "detect_multiplicity", "edge_graph",
]


@dataclass(frozen=True)
class HelicalFace:
    """The face ``strip + Z*translation``; a finite polygon when the translation is zero."""

    strip: tuple
    translation: tuple

    @property
    def finite(self) -> bool:
        return not any(self.translation)

    @property
    def axis_direction(self):
        if not self.finite:
            return self.translation
        n = (Fraction(0),) * 3
        pts = self.strip
        for i in range(len(pts)):
            n = add(n, cross(pts[i], pts[(i + 1) % len(pts)]))
        return n

    def points(self, turns: int = 1) -> list:
        if self.finite:
            return list(self.strip)
        return [add(p, scale(k, self.translation)) for k in range(turns) for p in self.strip]

    def translate(self, v) -> "HelicalFace":
        return HelicalFace(tuple(add(p, v) for p in self.strip), self.translation)


def base_face(G: Group) -> HelicalFace:
    """The face o<S1>, listed from o S1^-1 so that o is the second strip vertex."""
    o = G.base_vertex
    S1 = G.S1
    p = G.p_linear
    start = S1.inverse()
    strip = []
    g = start
    for _ in range(p):
        strip.append(g.apply(o))
        g = g * S1
    return HelicalFace(tuple(strip), (S1 ** p).trans)


def face_image(face: HelicalFace, g: Isometry) -> HelicalFace:
    return HelicalFace(tuple(g.apply(p) for p in face.strip), g.linear.apply(face.translation))


def face_key(face: HelicalFace):
    """Hashable, orderable identity of the face as a point set."""
    t = face.translation
    if face.finite:
        return ((Fraction(0),) * 3, tuple(sorted(face.strip)))
    if t < tuple(-x for x in t):
        t = tuple(-x for x in t)
    tt = dot(t, t)
    pts = []
    for p in face.strip:
        k = floor(dot(p, t) / tt)
        pts.append(sub(p, scale(k, t)))
    return (t, tuple(sorted(pts)))


def face_key_mod_lattice(face: HelicalFace, lattice):
    """Identity of the face up to translations in ``lattice``."""
    best = None
    for p in face.strip:
        k = face_key(face.translate(sub(_reduce(lattice, p), p)))
        if best is None or k < best:
            best = k
    return best


@dataclass(frozen=True)
class PatchVertex:
    pos: tuple
    coset: int
    multiplicity: int


@dataclass
class Patch:
    family: str
    params: tuple
    radius: Fraction
    lattice: object
    vertices: list
    edges: list
    faces: list
    q: int = 0

    def positions(self) -> set:
        return {v.pos for v in self.vertices}


def _denominator(G: Group) -> int:
    d = 1
    for g in (G.S2, G.T):
        for x in g.trans:
            d = lcm(d, x.denominator)
    return d


def _int_row(g: Isometry, D: int):
    return list(g.linear.perm) + list(g.linear.signs) + [int(x * D) for x in g.trans]


def _lattice_gens(lattice):
    if isinstance(lattice, Lattice):
        return lattice.generators()
    return list(lattice.basis)


def orbit_positions(G: Group, bound) -> list:
    """All points of the vertex orbit reachable inside the box of half-width ``bound``."""
    D = _denominator(G)
    gens = np.array([_int_row(g, D) for g in G.generators.values()], dtype=np.int64)
    start = np.array([int(x * D) for x in G.base_vertex], dtype=np.int64)
    pts = kernels.orbit_in_box(gens, start, int(ceil(Fraction(bound) * D)))
    return [tuple(Fraction(int(x), D) for x in row) for row in pts.tolist()]


def search_margin(G: Group, VL: VertexLabels) -> Fraction:
    step = max(max_norm(g.trans) for g in (G.S2, G.T))
    reps = max(max_norm(p) for p in VL.position)
    lat = max((max_norm(v) for v in _lattice_gens(VL.quotient.lattice)), default=Fraction(0))
    return 2 * step + reps + 2 * lat


def construct_patch(G: Group, radius, labels: VertexLabels = None) -> Patch:
    """Vertices within max-norm ``radius`` of o, with the edges and faces among them."""
    radius = Fraction(radius)
    VL = labels if labels is not None else vertex_labels(G)
    Q = VL.quotient
    o = G.base_vertex
    by_class = {}
    for l, p in enumerate(VL.position):
        by_class.setdefault(VL.reduce(p), []).append(l)
    pts = orbit_positions(G, radius + search_margin(G, VL))
    verts = []
    for p in pts:
        if max_norm(p) > radius:
            continue
        labs = by_class[VL.reduce(p)]
        for l in labs:
            verts.append(PatchVertex(p, l, len(labs)))
    verts.sort(key=lambda v: (v.pos, v.coset))
    index = {(v.coset, v.pos): i for i, v in enumerate(verts)}

    S2 = [G.S2 ** j for j in range(G.q)]
    F2 = base_face(G)
    edges = set()
    faces = {}
    for i, v in enumerate(verts):
        r = Q.reps[VL.rep_index[v.coset]]
        lam = sub(v.pos, r.apply(o))
        shift = translation(lam)
        for j in range(G.q):
            g = G.T * S2[j] * r
            l2 = VL.label_of[Q.find(g)]
            p2 = add(g.apply(o), lam)
            k = index.get((l2, p2))
            if k is not None and k != i:
                edges.add((min(i, k), max(i, k)))
            f = face_image(F2, S2[j] * r * shift)
            faces.setdefault(face_key(f), f)
    lattice = Q.lattice
    if isinstance(lattice, IntModuleBasis):
        lattice = module_basis(lattice.basis)
    return Patch(G.family.value, G.params, radius, lattice, verts,
                 sorted(edges), [faces[k] for k in sorted(faces)], G.q)


@dataclass
class MultiplicityReport:
    counts: dict = field(default_factory=dict)  # class representative -> number of vertices there

    @property
    def multiplicity(self) -> int:
        return max(self.counts.values())

    def __int__(self):
        return self.multiplicity


def detect_multiplicity(G: Group, labels: VertexLabels = None) -> MultiplicityReport:
    """Compare vertex labels with the distinct positions they occupy modulo T(G)."""
    VL = labels if labels is not None else vertex_labels(G)
    counts = {}
    for p in VL.position:
        k = VL.reduce(p)
        counts[k] = counts.get(k, 0) + 1
    return MultiplicityReport(counts)


def edge_graph(patch: Patch) -> dict:
    adj = {i: [] for i in range(len(patch.vertices))}
    for i, j in patch.edges:
        adj[i].append(j)
        adj[j].append(i)
    return {i: sorted(n) for i, n in adj.items()}
