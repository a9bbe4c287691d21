"""Mixing operations on generator pairs: duality, facetting, and the eta map."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Optional

from .errors import UnsupportedSource
from .exact import Isometry, SignedPerm, all_signed_perms, solve_linear
from .groups import FamilyId, Group, build_group, closure, special_group_closure

__all__ = [
    "GeneratorPair", "pair_of", "apply_delta", "apply_phi2", "phi2_target", "apply_eta",
    "EtaWitness", "conjugation_witness", "subgroup_obstruction", "special_group",
    "verify_q_covering",
]


@dataclass(frozen=True)
class GeneratorPair:
    S1: Isometry
    S2: Isometry

    @property
    def T(self) -> Isometry:
        return self.S1 * self.S2


def pair_of(G) -> GeneratorPair:
    if isinstance(G, GeneratorPair):
        return G
    return GeneratorPair(G.S1, G.S2)


def apply_delta(G) -> GeneratorPair:
    """Dual pair (S2^-1, S1^-1)."""
    p = pair_of(G)
    return GeneratorPair(p.S2.inverse(), p.S1.inverse())


def apply_phi2(G: Group) -> GeneratorPair:
    """Facetting by holes: (S1 S2^-1, S2^2)."""
    if G.family not in (FamilyId.P66, FamilyId.Q46):
        raise UnsupportedSource("phi2 is defined here for P66 and Q46 only, not %s" % G.family.value)
    return GeneratorPair(G.S1 * G.S2.inverse(), G.S2 * G.S2)


def phi2_target(G: Group) -> Group:
    fam = FamilyId.P1 if G.family == FamilyId.P66 else FamilyId.P2
    return build_group(fam, G.params)


@dataclass
class EtaWitness:
    conjugator: Isometry   # C with C^-1 A C = B for both generators
    target: Group
    # True when B is the target's other base-flag pair (S1 S2^2, S2^-1); same group either way
    flag_change: bool


def conjugation_witness(A: GeneratorPair, B: GeneratorPair) -> Optional[Isometry]:
    """First C = (M, u) over the 48 linear parts M, with u solved exactly, such that
    C^-1 A.S1 C = B.S1 and C^-1 A.S2 C = B.S2."""
    for M in all_signed_perms():
        Mi = M.inverse()
        rows, rhs = [], []
        ok = True
        for a, b in ((A.S1, B.S1), (A.S2, B.S2)):
            if Mi * a.linear * M != b.linear:
                ok = False
                break
            # translation of C^-1 a C is u - u.L_b + t_a.M
            ta = M.apply(a.trans)
            for j in range(3):
                row = [0, 0, 0]
                row[j] += 1
                row[b.linear.perm[j]] -= b.linear.signs[j]
                rows.append(row)
                rhs.append(b.trans[j] - ta[j])
        if not ok:
            continue
        sol = solve_linear(rows, rhs)
        if sol is None:
            continue
        C = Isometry(M, tuple(sol[0]))
        Ci = C.inverse()
        if Ci * A.S1 * C == B.S1 and Ci * A.S2 * C == B.S2:
            return C
    return None


def apply_eta(G: Group) -> EtaWitness:
    """eta: (S1, S2) -> (S1^2 S2, S2^-1), matched against P66(c-d, c+d) by conjugation."""
    if G.family != FamilyId.Q46:
        raise UnsupportedSource("eta is applied to Q46 only, not %s" % G.family.value)
    pair = GeneratorPair(G.S1 * G.S1 * G.S2, G.S2.inverse())
    c, d = G.params
    target = build_group(FamilyId.P66, (c - d, c + d))
    B = pair_of(target)
    for flip, cand in ((False, B), (True, GeneratorPair(B.S1 * B.S2 * B.S2, B.S2.inverse()))):
        C = conjugation_witness(pair, cand)
        if C is not None:
            return EtaWitness(C, target, flip)
    raise UnsupportedSource("no signed-permutation conjugator for %s" % G.label())


# -- special groups as abstract groups ---------------------------------------

_SPECIAL_SOURCES = {
    "T33_PLUS": (FamilyId.P1, (0, 1)),
    "O34_PLUS": (FamilyId.P2, (0, 1)),
    "T33_STAR": (FamilyId.P66, (0, 1)),
    "T33": (FamilyId.TWI_33, (1,)),
    "O34": (FamilyId.Q46, (0, 1)),
}


def special_group(name: str) -> list:
    fam, params = _SPECIAL_SOURCES[name]
    G = special_group_closure(build_group(fam, params))
    assert G.name == name
    return list(G.elements)


def _elements(x) -> list:
    return special_group(x) if isinstance(x, str) else list(x)


def _gen_set(elements) -> list:
    """A small generating set, greedily."""
    ident = SignedPerm((0, 1, 2), (1, 1, 1))
    n = len(elements)
    for k in range(1, 4):
        for gens in product(elements, repeat=k):
            if len(closure(list(gens), ident)) == n:
                return list(gens)
    raise ValueError("needs more than three generators")


def _extends(gens, images, ident_h, ident_g, n) -> bool:
    """Does gens[i] -> images[i] extend to an injective homomorphism?"""
    phi = {ident_h: ident_g}
    queue = deque([ident_h])
    while queue:
        h = queue.popleft()
        for a, b in zip(gens, images):
            ha, hb = h * a, phi[h] * b
            if ha in phi:
                if phi[ha] != hb:
                    return False
            else:
                phi[ha] = hb
                queue.append(ha)
    return len(set(phi.values())) == n


def subgroup_obstruction(H0, G0) -> bool:
    """True when H0 is isomorphic to a subgroup of G0 (no obstruction), else False."""
    H = _elements(H0)
    G = _elements(G0)
    if len(G) % len(H):
        return False
    ident = SignedPerm((0, 1, 2), (1, 1, 1))
    gens = _gen_set(H)
    orders = [g.order() for g in gens]
    cands = [[g for g in G if g.order() == k] for k in orders]
    for images in product(*cands):
        if _extends(gens, images, ident, ident, len(H)):
            return True
    return False


def verify_q_covering(c, d) -> bool:
    """|G0| = 48 for Q(c, d), and conjugation by the mirror in x1 = x2 maps
    S1' -> S1' S2'^2 and S2' -> S2'^-1, an automorphism of G0."""
    G = build_group(FamilyId.Q46, (c, d))
    G0 = special_group_closure(G)
    R = SignedPerm((1, 0, 2), (1, 1, 1))
    s1, s2 = G.S1.linear, G.S2.linear
    return (G0.order == 48
            and R * s1 * R == s1 * s2 * s2
            and R * s2 * R == s2.inverse()
            and all(R * g * R in G0.elements for g in G0.elements))
