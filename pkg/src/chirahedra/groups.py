"""Generator sets, translation lattices and finite quotients of the symmetry groups."""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Optional

from .errors import DegenerateParams, NoClosure, Refuted
from .exact import (
    ZERO, IntModuleBasis, Isometry, Lattice, LatticeKind, SignedPerm,
    TrivialLatticeError, module_basis, rat, signed_perm, solve_linear, vec,
)

__all__ = [
    "FamilyId", "Group", "build_group", "SpecialGroup", "special_group_closure",
    "QuotientGroup", "quotient_mod_lattice", "claimed_translation_lattice",
    "discover_translation_lattice", "verify_translation_lattice", "LatticeReport",
    "vertex_coset_reps", "VertexLabels", "vertex_labels", "finite_fixed_point",
    "evaluate_word", "word_bound",
]

DEFAULT_WORD_BOUND = 20


def word_bound() -> int:
    return int(os.environ.get("CHIRAHEDRA_WORD_BOUND", DEFAULT_WORD_BOUND))


class FamilyId(str, Enum):
    P1 = "P1"
    P2 = "P2"
    P3 = "P3"
    P66 = "P66"
    Q46 = "Q46"
    TWI_33STAR = "TWI_33STAR"
    TWI_34 = "TWI_34"
    TWI_33 = "TWI_33"
    SONEROT_33STAR = "SONEROT_33STAR"
    SONEROT_34 = "SONEROT_34"

    @classmethod
    def parse(cls, text) -> "FamilyId":
        if isinstance(text, cls):
            return text
        return cls(str(text).upper())

    @property
    def one_parameter(self) -> bool:
        return self.name.startswith(("TWI", "SONEROT"))


# S2 and T for each family; S1 = T S2^-1.  Translations are (coefficient of p, coefficient of q)
# per coordinate, with (p, q) the parameters.
_GENERATORS = {
    FamilyId.P1: ("2,3,1", ((0, 0), (0, 0), (0, 0)), "-1,2,-3", ((1, 0), (0, 0), (0, 1))),
    FamilyId.P2: ("2,3,1", ((0, 0), (0, 0), (0, 0)), "2,1,-3", ((1, 0), (-1, 0), (0, 1))),
    FamilyId.P3: ("3,2,-1", ((0, 0), (0, 0), (0, 0)), "2,1,-3", ((1, 0), (-1, 0), (0, 1))),
    FamilyId.P66: ("-3,-1,-2", ((0, 0), (0, 0), (0, 0)), "-1,2,-3", ((1, 0), (0, 0), (0, 1))),
    FamilyId.Q46: ("-3,-1,-2", ((0, 0), (0, 0), (0, 0)), "2,1,-3", ((1, 0), (-1, 0), (0, 1))),
    FamilyId.TWI_33STAR: ("-3,-1,-2", ((0, 0),) * 3, "1,-2,3", ((0, 0), (1, 0), (0, 0))),
    FamilyId.TWI_34: ("-3,-1,-2", ((0, 0),) * 3, "-2,-1,3", ((1, 0), (1, 0), (0, 0))),
    FamilyId.TWI_33: ("-1,-3,2", ((0, 0),) * 3, "-2,-1,3", ((1, 0), (1, 0), (0, 0))),
    FamilyId.SONEROT_33STAR: ("-3,1,-2", ((0, 0),) * 3, "1,-2,3", ((0, 0), (1, 0), (0, 0))),
    FamilyId.SONEROT_34: ("1,3,-2", ((0, 0),) * 3, "-2,-1,3", ((1, 0), (1, 0), (0, 0))),
}

TOKENS = ("S2", "S2^-1", "T")
_INVERSE_TOKEN = {"S2": "S2^-1", "S2^-1": "S2", "T": "T"}


@dataclass(frozen=True)
class Group:
    family: FamilyId
    params: tuple
    S2: Isometry
    T: Isometry

    @property
    def S1(self) -> Isometry:
        return self.T * self.S2.inverse()

    @property
    def generators(self) -> dict:
        return {"S2": self.S2, "S2^-1": self.S2.inverse(), "T": self.T}

    @property
    def q(self) -> int:
        return self.S2.linear.order()

    @property
    def p_linear(self) -> int:
        return self.S1.linear.order()

    @property
    def base_vertex(self):
        return ZERO

    def linear_generators(self) -> list:
        return [self.S1.linear, self.S2.linear]

    def label(self) -> str:
        return "%s(%s)" % (self.family.value, ",".join(str(p) for p in self.params))


def normalize_params(family: FamilyId, params) -> tuple:
    if isinstance(params, (int, Fraction, str)):
        params = (params,)
    params = tuple(rat(p) for p in params)
    want = 1 if family.one_parameter else 2
    if len(params) != want:
        raise ValueError("%s takes %d parameter(s)" % (family.value, want))
    return params


def build_group(family, params) -> Group:
    family = FamilyId.parse(family)
    params = normalize_params(family, params)
    if not any(params):
        raise DegenerateParams("%s with all parameters zero" % family.value)
    p = params[0]
    q = params[1] if len(params) > 1 else Fraction(0)
    s2, s2t, t, tt = _GENERATORS[family]

    def trans(coeffs):
        return tuple(a * p + b * q for a, b in coeffs)

    return Group(family, params,
                 Isometry(signed_perm(s2), trans(s2t)),
                 Isometry(signed_perm(t), trans(tt)))


# -- words ------------------------------------------------------------------

def reduce_word(word, q: int) -> tuple:
    """Cancel T T and collapse runs of S2 modulo its order q."""
    out = []
    for tok in word:
        out.append(tok)
        while True:
            if len(out) >= 2 and out[-1] == "T" and out[-2] == "T":
                del out[-2:]
                continue
            if len(out) >= 2 and {out[-1], out[-2]} == {"S2", "S2^-1"}:
                del out[-2:]
                continue
            run = 0
            while run < len(out) and out[-1 - run] == out[-1] and out[-1] != "T":
                run += 1
            if run and run >= q:
                del out[-q:]
                continue
            break
    return tuple(out)


def invert_word(word) -> tuple:
    return tuple(_INVERSE_TOKEN[t] for t in reversed(word))


def evaluate_word(G: Group, word) -> Isometry:
    gens = G.generators
    g = Isometry.identity()
    for tok in word:
        g = g * gens[tok]
    return g


def format_word(word) -> str:
    return " ".join(word) if word else "1"


# -- special groups ---------------------------------------------------------

@dataclass(frozen=True)
class SpecialGroup:
    name: Optional[str]
    elements: tuple

    @property
    def order(self) -> int:
        return len(self.elements)


def closure(gens, identity) -> list:
    """All products of ``gens`` in breadth-first order, starting at ``identity``."""
    seen = {identity}
    order = [identity]
    queue = deque([identity])
    while queue:
        g = queue.popleft()
        for h in gens:
            gh = g * h
            if gh not in seen:
                seen.add(gh)
                order.append(gh)
                queue.append(gh)
    return order


def name_signed_perm_group(elements) -> Optional[str]:
    n = len(elements)
    minus_i = SignedPerm((0, 1, 2), (-1, -1, -1))
    direct = all(g.det() == 1 for g in elements)
    if n == 12 and direct:
        return "T33_PLUS"
    if n == 24 and direct:
        return "O34_PLUS"
    if n == 24 and minus_i in elements:
        return "T33_STAR"
    if n == 24:
        return "T33"
    if n == 48:
        return "O34"
    return None


def special_group_closure(gens) -> SpecialGroup:
    if isinstance(gens, Group):
        gens = gens.linear_generators()
    gens = list(gens)
    ident = SignedPerm((0, 1, 2), (1, 1, 1))
    elements = closure(gens, ident)
    return SpecialGroup(name_signed_perm_group(elements), tuple(elements))


# -- translation lattices ---------------------------------------------------

def _primitive_scale(c: Fraction, d: Fraction) -> Fraction:
    """The rational s with (c, d) = s (c0, d0) and c0, d0 coprime integers, s > 0."""
    den = c.denominator * d.denominator // gcd(c.denominator, d.denominator)
    g = gcd(int(c * den), int(d * den))
    return Fraction(g, den)


def claimed_translation_lattice(family, params) -> Optional[Lattice]:
    """Closed-form translation lattice, or None where no closed form is claimed."""
    family = FamilyId.parse(family)
    params = normalize_params(family, params)
    if family == FamilyId.P1:
        a, b = params
        return Lattice(LatticeKind.BCC, b - a)
    if family == FamilyId.P2:
        return Lattice(LatticeKind.Z3, 4 * params[0])
    if family == FamilyId.P3:
        return Lattice(LatticeKind.BCC, params[1])
    if family == FamilyId.Q46:
        # 2*fcc only holds for primitive c odd, d even; elsewhere T(G) is discovered
        c, d = params
        s = _primitive_scale(c, d)
        if (c / s) % 2 == 1 and (d / s) % 2 == 0:
            return Lattice(LatticeKind.FCC, 2 * s)
        return None
    if family in (FamilyId.SONEROT_33STAR, FamilyId.SONEROT_34):
        return Lattice.trivial()
    return None


@dataclass
class QuotientGroup:
    """G modulo a normal translation subgroup, tabulated.

    ``reps[i]`` is an honest element of G reached by ``words[i]``; ``keys[i]``
    is its class.  ``table[i][j]`` indexes the class of reps[i] * reps[j].
    """

    group: Group
    lattice: object
    keys: list
    reps: list
    words: list
    table: list = field(default_factory=list)
    index: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.keys)

    def key(self, g: Isometry):
        return _class_key(self.lattice, g)

    def find(self, g: Isometry) -> int:
        return self.index[self.key(g)]

    def linear(self, i) -> SignedPerm:
        return self.keys[i][0]


def _reduce(lattice, v):
    if lattice is None:
        return None
    if isinstance(lattice, Lattice):
        if lattice.kind == LatticeKind.TRIVIAL:
            return v
        return lattice.reduce(v)
    if lattice.rank == 0:
        return v
    return lattice.reduce(v)


def _class_key(lattice, g: Isometry):
    if lattice is None:  # linear part only
        return (g.linear,)
    return (g.linear, _reduce(lattice, g.trans))


def _coset_bfs(G: Group, lattice, bound: int):
    gens = G.generators
    ident = Isometry.identity()
    keys = [_class_key(lattice, ident)]
    reps = [ident]
    words = [()]
    index = {keys[0]: 0}
    frontier = [0]
    depth = 0
    while frontier:
        if depth >= bound:
            raise NoClosure("no closure within %d letters for %s" % (bound, G.label()))
        nxt = []
        for i in frontier:
            for tok in TOKENS:
                g = reps[i] * gens[tok]
                k = _class_key(lattice, g)
                if k not in index:
                    index[k] = len(keys)
                    keys.append(k)
                    reps.append(g)
                    words.append(words[i] + (tok,))
                    nxt.append(index[k])
        frontier = nxt
        depth += 1
    return keys, reps, words, index


def quotient_mod_lattice(G: Group, lattice, bound: Optional[int] = None) -> QuotientGroup:
    """Breadth-first closure of G modulo ``lattice``; raises NoClosure past ``bound`` letters."""
    bound = word_bound() if bound is None else bound
    keys, reps, words, index = _coset_bfs(G, lattice, bound)
    Q = QuotientGroup(G, lattice, keys, reps, words, index=index)
    Q.table = [[index[_class_key(lattice, a * b)] for b in reps] for a in reps]
    return Q


def _schreier_translations(G: Group, lattice, bound: int):
    """Pure translations rep_i * s * rep_j^-1 with their words."""
    keys, reps, words, index = _coset_bfs(G, lattice, bound)
    gens = G.generators
    out = []
    for i, r in enumerate(reps):
        for tok in TOKENS:
            g = r * gens[tok]
            j = index[_class_key(lattice, g)]
            t = g * reps[j].inverse()
            assert t.is_translation()
            if any(t.trans):
                w = reduce_word(words[i] + (tok,) + invert_word(words[j]), G.q)
                out.append((w, t.trans))
    return keys, out


def discover_translation_lattice(G: Group, bound: Optional[int] = None) -> IntModuleBasis:
    """T(G) from Schreier generators of the kernel of G -> G0 (linear parts)."""
    bound = word_bound() if bound is None else bound
    _, trans = _schreier_translations(G, None, bound)
    return module_basis([t for _, t in trans])


def lattice_of(G: Group):
    claimed = claimed_translation_lattice(G.family, G.params)
    if claimed is not None:
        return claimed
    return discover_translation_lattice(G)


def _lattice_generators(lattice):
    if isinstance(lattice, Lattice):
        return lattice.generators()
    return list(lattice.basis)


def _word_power(word, n):
    if n < 0:
        word, n = invert_word(word), -n
    return word * n


@dataclass
class LatticeReport:
    family: FamilyId
    params: tuple
    lattice: object
    quotient_order: int
    linear_order: int
    generator_words: list  # (word, vector) per lattice generator
    twist_word: tuple
    twist_vector: tuple
    pure_translation_classes: int
    discovered: IntModuleBasis

    @property
    def ok(self) -> bool:
        return (self.quotient_order == self.linear_order
                and self.pure_translation_classes == 0)


def verify_translation_lattice(G: Group, lattice=None, bound: Optional[int] = None) -> LatticeReport:
    """Check T(G) == lattice.

    (i) every lattice generator is an explicit word in S2, T;
    (ii) G mod lattice closes with |G0| classes;
    (iii) no non-identity class has identity linear part.
    Raises Refuted on failure.
    """
    bound = word_bound() if bound is None else bound
    if lattice is None:
        lattice = lattice_of(G)
    G0 = special_group_closure(G)
    keys, schreier = _schreier_translations(G, lattice, bound)
    if isinstance(lattice, Lattice) and lattice.kind == LatticeKind.TRIVIAL:
        span = module_basis([])
    else:
        span = module_basis([t for _, t in schreier])
    gen_words = []
    for g in _lattice_generators(lattice):
        c = span.coords(g)
        if c is None:
            raise Refuted("lattice generator %s is not a word in S2, T" % (g,), witness=g)
        coeff = [0] * len(schreier)
        for ci, cert in zip(c, span.certificates):
            for j, k in enumerate(cert):
                coeff[j] += ci * k
        word = ()
        for (w, _), n in zip(schreier, coeff):
            word += _word_power(w, n)
        word = reduce_word(word, G.q)
        ev = evaluate_word(G, word)
        if not (ev.is_translation() and ev.trans == g):
            raise Refuted("word for %s evaluates to %s" % (g, ev), witness=word)
        gen_words.append((word, g))
    pure = [k for k in keys if k[0].is_identity() and any(k[1])]
    twist_word = ("T", "S2^-1") * G.p_linear
    twist = evaluate_word(G, twist_word)
    report = LatticeReport(G.family, G.params, lattice, len(keys), G0.order,
                           gen_words, twist_word, twist.trans, len(pure),
                           discover_translation_lattice(G, bound))
    if len(keys) != G0.order:
        raise Refuted("%s: %d classes modulo %s, |G0| = %d"
                      % (G.label(), len(keys), lattice, G0.order), witness=len(keys))
    if pure:
        raise Refuted("%s: translation %s outside %s" % (G.label(), pure[0][1], lattice),
                      witness=pure[0])
    return report


# -- vertices ---------------------------------------------------------------

@dataclass
class VertexLabels:
    """Vertex classes of the Wythoff polyhedron modulo the translation lattice.

    A label is a coset H q in the quotient, where H is the stabiliser of the
    base vertex together with its vertex-star.  ``rep_index[l]`` points into
    ``quotient.reps``; ``position[l]`` is the base vertex moved by that rep.
    """

    quotient: QuotientGroup
    label_of: list
    rep_index: list
    position: list
    star0: list

    @property
    def count(self) -> int:
        return len(self.rep_index)

    def star(self, l) -> list:
        lin = self.quotient.reps[self.rep_index[l]].linear
        return [lin.apply(w) for w in self.star0]

    def reduce(self, v):
        return _reduce(self.quotient.lattice, v)


def vertex_labels(G: Group, lattice=None) -> VertexLabels:
    if lattice is None:
        lattice = lattice_of(G)
    Q = quotient_mod_lattice(G, lattice)
    o = G.base_vertex
    v = G.T.apply(o)
    star0 = [(G.S2 ** j).apply(v) for j in range(G.q)]
    star_set = frozenset(star0)
    H = [i for i, r in enumerate(Q.reps)
         if _reduce(lattice, r.apply(o)) == _reduce(lattice, o)
         and frozenset(r.linear.apply(w) for w in star0) == star_set]
    label_of = [-1] * len(Q)
    rep_index, position = [], []
    for i in range(len(Q)):
        if label_of[i] >= 0:
            continue
        lab = len(rep_index)
        for h in H:
            label_of[Q.table[h][i]] = lab
        rep_index.append(i)
        position.append(Q.reps[i].apply(o))
    return VertexLabels(Q, label_of, rep_index, position, star0)


def lemma_vertex_points(family, params) -> list:
    """Representative vertices in the listing order preferred when classes merge."""
    family = FamilyId.parse(family)
    x, y = normalize_params(family, params)
    if family == FamilyId.P1:
        a, b = x, y
        pts = [(0, 0, 0), (a, 0, b), (0, b, a), (b, a, 0)]
    elif family == FamilyId.P2:
        c, d = x, y
        pts = [(0, 0, 0), (c, -c, d), (d, c, -c), (-c, d, c),
               (c + d, 2 * c, -c + d), (-c + d, c + d, 2 * c), (2 * c, -c + d, c + d),
               (2 * c + d, 2 * c + d, 2 * c + d)]
    elif family == FamilyId.P3:
        c, d = x, y
        pts = [(0, 0, 0), (c, -c, d), (-c, -c, d), (0, -2 * c, 0), (d, -c, c), (d, -c, -c)]
    else:
        raise ValueError("no listed vertex classes for %s" % family.value)
    return [vec(p) for p in pts]


def vertex_coset_reps(family, params) -> list:
    """One point per translation class of vertices.

    The classes are computed from the group; each is named by the first
    listed representative that falls in it.
    """
    G = build_group(family, params)
    VL = vertex_labels(G)
    classes = []
    for p in VL.position:
        k = VL.reduce(p)
        if k not in classes:
            classes.append(k)
    named = {}
    for p in lemma_vertex_points(family, params):
        named.setdefault(VL.reduce(p), p)
    out = [named[k] for k in sorted(classes, key=lambda k: _listing_rank(named, k))
           if k in named]
    missing = [k for k in classes if k not in named]
    if missing:
        raise Refuted("vertex classes not among the listed points: %s" % (missing,),
                      witness=missing)
    return out


def _listing_rank(named, k):
    keys = list(named)
    return keys.index(k) if k in named else len(keys)


def finite_fixed_point(G: Group):
    """The common fixed point of S2 and T, or None when there is none."""
    rows, rhs = [], []
    for g in (G.S2, G.T):
        m = g.linear.matrix()
        # x (M - I) = -t, one equation per output coordinate
        for j in range(3):
            rows.append([m[i][j] - (1 if i == j else 0) for i in range(3)])
            rhs.append(-g.trans[j])
    sol = solve_linear(rows, rhs)
    if sol is None:
        return None
    x, nullity = sol
    return tuple(x) if nullity == 0 else None
