from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from chirahedra.exact import (
    Isometry, Lattice, SignedPerm, TrivialLatticeError, all_signed_perms, compose, invert,
    iso_power, lattice_contains, lattice_reduce, module_basis, signed_perm, translation, vec,
)
from chirahedra.groups import build_group

perms = st.sampled_from(all_signed_perms())
rats = st.fractions(min_value=-6, max_value=6, max_denominator=4)
vecs = st.tuples(rats, rats, rats)
isos = st.builds(Isometry, perms, vecs)


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)] for i in range(3)]


def test_signed_perm_parse_and_print():
    s = signed_perm("-3,-1,2")
    assert s.apply(vec(1, 2, 3)) == vec(-3, -1, 2)
    assert str(s) == "(-x3,-x1,x2)"


def test_there_are_48_signed_perms():
    assert len(set(all_signed_perms())) == 48


@given(perms, perms)
def test_product_matches_matrix_product(a, b):
    # row vectors: x (A B) = (x A) B
    assert (a * b).matrix() == matmul(a.matrix(), b.matrix())


@given(perms)
def test_det_matches_matrix(a):
    m = a.matrix()
    det = (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
           - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
           + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
    assert a.det() == det


@given(isos, isos, isos, vecs)
def test_isometry_group_axioms(f, g, h, x):
    assert (f * g) * h == f * (g * h)
    assert (f * f.inverse()).is_identity()
    assert (f * g).apply(x) == g.apply(f.apply(x))


@given(isos, st.integers(-5, 5), st.integers(-5, 5))
def test_powers_add(f, m, n):
    assert iso_power(f, m) * iso_power(f, n) == iso_power(f, m + n)


def test_compose_gives_t_of_p1():
    G = build_group("P1", (1, 3))
    T = compose(G.S1, G.S2)
    assert T.linear == signed_perm("-1,2,-3")
    assert T.trans == vec(1, 0, 3)


def test_invert_s2():
    G = build_group("P1", (1, 3))
    assert invert(G.S2) == Isometry(signed_perm("3,1,2"), vec(0, 0, 0))


@pytest.mark.parametrize("fam,params,n,t", [
    ("P1", (1, 3), 3, (2, -2, -2)),
    ("P2", (1, 4), 4, (0, 4, 0)),
    ("P3", (1, 2), 3, (-2, -2, -2)),
])
def test_iso_power_twists(fam, params, n, t):
    p = iso_power(build_group(fam, params).S1, n)
    assert p.is_translation() and p.trans == vec(t)


def test_lattice_membership_examples():
    assert lattice_contains(Lattice("BCC", 1), (1, 1, 1))
    assert not lattice_contains(Lattice("BCC", 1), (1, 0, 0))
    assert lattice_contains(Lattice("FCC", 2), (2, 2, 0))
    assert not lattice_contains(Lattice("FCC", 2), (2, 0, 0))
    assert lattice_contains(Lattice("Z3", Fraction(1, 2)), (Fraction(1, 2), 0, 3))


def test_lattice_reduce_examples():
    assert lattice_reduce(Lattice("BCC", 2), (2, -2, -2)) == vec(0, 0, 0)
    assert lattice_reduce(Lattice("Z3", 4), (5, 2, 3)) == vec(1, 2, 3)
    assert lattice_reduce(Lattice("BCC", 2), (3, 1, 0)) == vec(1, 3, 2)


def test_trivial_lattice_reduce_is_an_error():
    with pytest.raises(TrivialLatticeError):
        lattice_reduce(Lattice.trivial(), (1, 0, 0))
    assert Lattice("BCC", 0).kind == "TRIVIAL"


kinds = st.sampled_from(["Z3", "BCC", "FCC"])
scales = st.fractions(min_value=Fraction(1, 3), max_value=5, max_denominator=3)


@given(kinds, scales, vecs, st.tuples(*[st.integers(-3, 3)] * 3))
def test_reduce_is_canonical(kind, s, v, k):
    L = Lattice(kind, s)
    lam = [0, 0, 0]
    for c, g in zip(k, L.generators()):
        lam = [a + c * b for a, b in zip(lam, g)]
    assert L.contains(lam)
    r = L.reduce(v)
    assert L.contains([a - b for a, b in zip(v, r)])
    assert L.reduce(r) == r
    assert L.reduce([a + b for a, b in zip(v, lam)]) == r


@given(kinds, scales, vecs, vecs)
def test_lattice_closed_under_sums(kind, s, u, v):
    L = Lattice(kind, s)
    a, b = L.reduce(u), L.reduce(v)
    x, y = [p - q for p, q in zip(u, a)], [p - q for p, q in zip(v, b)]
    assert L.contains([p + q for p, q in zip(x, y)])
    assert L.contains([-p for p in x])


def test_module_basis_examples():
    G = build_group("P1", (1, 0))
    v = G.T.apply(vec(0, 0, 0))
    star = [(G.S2 ** j).linear.apply(v) for j in range(3)]
    star = star + [tuple(-x for x in w) for w in star]
    # the base star and its negatives for (a, b) = (1, 0) span Z^3
    assert module_basis(star).basis == (vec(1, 0, 0), vec(0, 1, 0), vec(0, 0, 1))
    m = module_basis([(2, 0, 0)])
    assert m.rank == 1 and m.basis == (vec(2, 0, 0),)


def _span_oracle(gens, bound=4):
    """Integer combinations with small coefficients, by enumeration."""
    out = set()
    for coeffs in product(range(-bound, bound + 1), repeat=len(gens)):
        out.add(tuple(sum(c * g[i] for c, g in zip(coeffs, gens)) for i in range(3)))
    return out


small_int_vecs = st.tuples(*[st.integers(-3, 3)] * 3)


@given(st.lists(small_int_vecs, min_size=1, max_size=3))
def test_module_basis_certificates_and_membership(gens):
    gens = [vec(g) for g in gens]
    m = module_basis(gens)
    for b, cert in zip(m.basis, m.certificates):
        assert tuple(sum(c * g[i] for c, g in zip(cert, gens)) for i in range(3)) == b
    for g, coords in zip(gens, m.coordinates):
        assert tuple(sum(c * b[i] for c, b in zip(coords, m.basis)) for i in range(3)) == g
    for x in _span_oracle(gens, 2):
        assert m.contains(x)


@given(st.lists(small_int_vecs, min_size=1, max_size=3), small_int_vecs)
def test_module_membership_agrees_with_enumeration(gens, x):
    gens = [vec(g) for g in gens]
    m = module_basis(gens)
    if m.contains(x):
        c = m.coords(x)
        assert tuple(sum(k * b[i] for k, b in zip(c, m.basis)) for i in range(3)) == vec(x)
    else:
        assert vec(x) not in _span_oracle(gens, 3)


def test_translation_helper():
    assert translation((1, 2, 3)).apply(vec(0, 0, 0)) == vec(1, 2, 3)
