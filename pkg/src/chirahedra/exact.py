"""Exact rational geometry on signed-permutation isometries of R^3.

Points are row vectors (tuples of three Fractions).  An isometry acts on the
right, ``x -> x.L + t``, and ``f * g`` means "apply f, then g".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import floor, lcm
from typing import Iterable, Sequence

__all__ = [
    "Rat", "Vec3", "rat", "vec", "ZERO",
    "SignedPerm", "Isometry", "signed_perm", "all_signed_perms",
    "compose", "invert", "iso_power", "translation",
    "Lattice", "LatticeKind", "lattice_contains", "lattice_reduce",
    "IntModuleBasis", "module_basis", "det3", "solve_linear",
]

Rat = Fraction
Vec3 = tuple  # tuple[Fraction, Fraction, Fraction]


def rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction or a string")
    return Fraction(x)


def vec(*xs) -> Vec3:
    if len(xs) == 1 and not isinstance(xs[0], (int, Fraction, str)):
        xs = tuple(xs[0])
    if len(xs) != 3:
        raise ValueError("a point needs three coordinates")
    return tuple(rat(x) for x in xs)


ZERO = vec(0, 0, 0)


def add(u, v):
    return (u[0] + v[0], u[1] + v[1], u[2] + v[2])


def sub(u, v):
    return (u[0] - v[0], u[1] - v[1], u[2] - v[2])


def scale(k, v):
    return (k * v[0], k * v[1], k * v[2])


def dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def cross(u, v):
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def det3(u, v, w) -> Fraction:
    return dot(u, cross(v, w))


def max_norm(v) -> Fraction:
    return max(abs(x) for x in v)


@dataclass(frozen=True, order=True)
class SignedPerm:
    """Linear map ``x -> (s0*x[p0], s1*x[p1], s2*x[p2])``.

    ``signed_perm("-3,-1,2")`` is the map written (-x3, -x1, x2).
    """

    perm: tuple
    signs: tuple

    def apply(self, x):
        p, s = self.perm, self.signs
        return (s[0] * x[p[0]], s[1] * x[p[1]], s[2] * x[p[2]])

    def __mul__(self, other: "SignedPerm") -> "SignedPerm":
        # self first, then other
        p, s = self.perm, self.signs
        q, r = other.perm, other.signs
        return SignedPerm(tuple(p[q[j]] for j in range(3)),
                          tuple(r[j] * s[q[j]] for j in range(3)))

    def inverse(self) -> "SignedPerm":
        perm = [0, 0, 0]
        signs = [1, 1, 1]
        for i in range(3):
            perm[self.perm[i]] = i
            signs[self.perm[i]] = self.signs[i]
        return SignedPerm(tuple(perm), tuple(signs))

    def det(self) -> int:
        p = self.perm
        inversions = sum(1 for i in range(3) for j in range(i + 1, 3) if p[i] > p[j])
        return (-1) ** inversions * self.signs[0] * self.signs[1] * self.signs[2]

    def is_identity(self) -> bool:
        return self.perm == (0, 1, 2) and self.signs == (1, 1, 1)

    def order(self) -> int:
        g, n = self, 1
        while not g.is_identity():
            g, n = g * self, n + 1
        return n

    def matrix(self):
        """Matrix M with x.M equal to ``apply(x)``."""
        m = [[0] * 3 for _ in range(3)]
        for i in range(3):
            m[self.perm[i]][i] = self.signs[i]
        return m

    def __str__(self):
        parts = []
        for p, s in zip(self.perm, self.signs):
            parts.append(("-" if s < 0 else "") + "x%d" % (p + 1))
        return "(" + ",".join(parts) + ")"


def signed_perm(text: str) -> SignedPerm:
    perm, signs = [], []
    for tok in text.replace("(", "").replace(")", "").split(","):
        tok = tok.strip().lstrip("x")
        sign = -1 if tok.startswith("-") else 1
        idx = int(tok.lstrip("+-").lstrip("x")) - 1
        perm.append(idx)
        signs.append(sign)
    if sorted(perm) != [0, 1, 2]:
        raise ValueError("not a signed permutation: %r" % text)
    return SignedPerm(tuple(perm), tuple(signs))


IDENTITY_PERM = SignedPerm((0, 1, 2), (1, 1, 1))


def all_signed_perms() -> list:
    """The 48 signed permutations in a fixed order."""
    return [SignedPerm(p, s) for p in permutations(range(3))
            for s in product((1, -1), repeat=3)]


@dataclass(frozen=True)
class Isometry:
    linear: SignedPerm
    trans: tuple

    def apply(self, x):
        return add(self.linear.apply(x), self.trans)

    __call__ = apply

    def __mul__(self, other: "Isometry") -> "Isometry":
        return Isometry(self.linear * other.linear,
                        add(other.linear.apply(self.trans), other.trans))

    def inverse(self) -> "Isometry":
        li = self.linear.inverse()
        return Isometry(li, scale(-1, li.apply(self.trans)))

    def __pow__(self, n: int) -> "Isometry":
        base = self if n >= 0 else self.inverse()
        result, n = Isometry.identity(), abs(n)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_identity(self) -> bool:
        return self.linear.is_identity() and not any(self.trans)

    def is_translation(self) -> bool:
        return self.linear.is_identity()

    def period(self):
        """Order of the isometry, or None when some power is a non-zero translation."""
        k = self.linear.order()
        p = self ** k
        return k if p.is_identity() else None

    @staticmethod
    def identity() -> "Isometry":
        return Isometry(IDENTITY_PERM, ZERO)

    def __str__(self):
        return "%s + (%s)" % (self.linear, ", ".join(str(x) for x in self.trans))


def translation(v) -> Isometry:
    return Isometry(IDENTITY_PERM, vec(v))


def compose(f: Isometry, g: Isometry) -> Isometry:
    """``f`` then ``g``."""
    return f * g


def invert(f: Isometry) -> Isometry:
    return f.inverse()


def iso_power(f: Isometry, n: int) -> Isometry:
    return f ** n


# -- lattices ---------------------------------------------------------------

class LatticeKind:
    Z3 = "Z3"
    FCC = "FCC"
    BCC = "BCC"
    TRIVIAL = "TRIVIAL"


_COSET_SHIFTS = {
    LatticeKind.BCC: [(1, 1, 1)],
    LatticeKind.FCC: [(1, 1, 0), (1, 0, 1), (0, 1, 1)],
}

_GENERATORS = {
    LatticeKind.Z3: [(1, 0, 0), (0, 1, 0), (0, 0, 1)],
    LatticeKind.BCC: [(1, 1, 1), (1, -1, -1), (-1, 1, -1)],
    LatticeKind.FCC: [(1, 1, 0), (1, 0, 1), (0, 1, 1)],
}


class TrivialLatticeError(ValueError):
    pass


@dataclass(frozen=True)
class Lattice:
    """``scale`` times Z^3, the body-centred or the face-centred cubic lattice."""

    kind: str
    scale: Fraction = Fraction(0)

    def __post_init__(self):
        s = abs(rat(self.scale))
        kind = LatticeKind.TRIVIAL if s == 0 else self.kind
        object.__setattr__(self, "scale", s)
        object.__setattr__(self, "kind", kind)

    @staticmethod
    def trivial() -> "Lattice":
        return Lattice(LatticeKind.TRIVIAL, Fraction(0))

    def generators(self) -> list:
        if self.kind == LatticeKind.TRIVIAL:
            return []
        return [scale(self.scale, vec(g)) for g in _GENERATORS[self.kind]]

    def contains(self, v) -> bool:
        return lattice_contains(self, v)

    def reduce(self, v):
        return lattice_reduce(self, v)

    def __str__(self):
        if self.kind == LatticeKind.TRIVIAL:
            return "TRIVIAL"
        return "%s(%s)" % (self.kind, self.scale)


def lattice_contains(L: Lattice, v) -> bool:
    v = vec(v)
    if L.kind == LatticeKind.TRIVIAL:
        return not any(v)
    q = [x / L.scale for x in v]
    if any(x.denominator != 1 for x in q):
        return False
    if L.kind == LatticeKind.BCC:
        return len({x.numerator % 2 for x in q}) == 1
    if L.kind == LatticeKind.FCC:
        return sum(x.numerator for x in q) % 2 == 0
    return True


def _mod(x: Fraction, m: Fraction) -> Fraction:
    return x - m * floor(x / m)


def lattice_reduce(L: Lattice, v):
    """Canonical representative of ``v`` modulo ``L``.

    Reduce into the box [0, m)^3 (m = s for Z3, 2s otherwise) and take the
    lexicographically least of the box points congruent modulo L.
    """
    v = vec(v)
    if L.kind == LatticeKind.TRIVIAL:
        raise TrivialLatticeError("cannot reduce modulo the trivial lattice")
    s = L.scale
    if L.kind == LatticeKind.Z3:
        return tuple(_mod(x, s) for x in v)
    m = 2 * s
    base = tuple(_mod(x, m) for x in v)
    candidates = [base]
    for shift in _COSET_SHIFTS[L.kind]:
        candidates.append(tuple(_mod(x + s * k, m) for x, k in zip(base, shift)))
    return min(candidates)


# -- integer modules --------------------------------------------------------

@dataclass(frozen=True)
class IntModuleBasis:
    """Hermite-normal-form basis of the integer span of some rational vectors.

    ``certificates[i]`` lists integer coefficients expressing ``basis[i]``
    in the input generators; ``coordinates[j]`` expresses generator j in the
    basis.
    """

    basis: tuple
    generators: tuple
    certificates: tuple
    coordinates: tuple

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coords(self, v):
        """Integer coordinates of ``v`` in the basis, or None if ``v`` is not in the span."""
        v = list(vec(v))
        out = []
        for b in self.basis:
            j = next(i for i in range(3) if b[i] != 0)
            k = v[j] / b[j]
            if k.denominator != 1:
                return None
            out.append(int(k))
            v = [x - k * y for x, y in zip(v, b)]
        return out if not any(v) else None

    def contains(self, v) -> bool:
        return self.coords(v) is not None

    def reduce(self, v):
        """Canonical representative modulo a full-rank module."""
        if self.rank != 3:
            raise ValueError("reduction needs a rank-3 module")
        v = list(vec(v))
        for b in self.basis:
            j = next(i for i in range(3) if b[i] != 0)
            k = floor(v[j] / b[j])
            v = [x - k * y for x, y in zip(v, b)]
        return tuple(v)

    def same_span(self, other) -> bool:
        return self.basis == _as_module(other).basis

    def __str__(self):
        return "<" + "; ".join("(" + ",".join(str(x) for x in b) + ")" for b in self.basis) + ">"


def _as_module(x) -> IntModuleBasis:
    if isinstance(x, IntModuleBasis):
        return x
    if isinstance(x, Lattice):
        return module_basis(x.generators())
    return module_basis(x)


def module_basis(vectors: Iterable) -> IntModuleBasis:
    gens = [vec(v) for v in vectors]
    m = len(gens)
    den = 1
    for g in gens:
        for x in g:
            den = lcm(den, x.denominator)
    rows = [[int(x * den) for x in g] for g in gens]
    U = [[int(i == j) for j in range(m)] for i in range(m)]

    def swap(i, j):
        rows[i], rows[j] = rows[j], rows[i]
        U[i], U[j] = U[j], U[i]

    def axpy(dst, k, src):  # row dst -= k * row src
        rows[dst] = [a - k * b for a, b in zip(rows[dst], rows[src])]
        U[dst] = [a - k * b for a, b in zip(U[dst], U[src])]

    r = 0
    pivots = []
    for col in range(3):
        while True:
            live = [i for i in range(r, m) if rows[i][col] != 0]
            if not live:
                break
            i = min(live, key=lambda i: abs(rows[i][col]))
            swap(r, i)
            done = True
            for i in range(r + 1, m):
                if rows[i][col]:
                    axpy(i, rows[i][col] // rows[r][col], r)
                    if rows[i][col]:
                        done = False
            if done:
                break
        if r < m and rows[r][col] != 0:
            if rows[r][col] < 0:
                rows[r] = [-a for a in rows[r]]
                U[r] = [-a for a in U[r]]
            for i in range(r):
                axpy(i, rows[i][col] // rows[r][col], r)
            pivots.append(col)
            r += 1
    basis = tuple(tuple(Fraction(a, den) for a in rows[i]) for i in range(r))
    certs = tuple(tuple(U[i]) for i in range(r))
    mod = IntModuleBasis(basis, tuple(gens), certs, ())
    coords = tuple(tuple(mod.coords(g)) for g in gens)
    return IntModuleBasis(basis, tuple(gens), certs, coords)


# -- small exact linear algebra --------------------------------------------

def solve_linear(rows: Sequence[Sequence], rhs: Sequence):
    """Solve ``A x = b`` exactly.  Returns (particular solution, nullity) or None."""
    A = [[rat(a) for a in row] + [rat(b)] for row, b in zip(rows, rhs)]
    n = len(A[0]) - 1
    r = 0
    where = [-1] * n
    for col in range(n):
        piv = next((i for i in range(r, len(A)) if A[i][col] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        pv = A[r][col]
        A[r] = [a / pv for a in A[r]]
        for i in range(len(A)):
            if i != r and A[i][col] != 0:
                k = A[i][col]
                A[i] = [a - k * b for a, b in zip(A[i], A[r])]
        where[col] = r
        r += 1
    if any(all(a == 0 for a in row[:n]) and row[n] != 0 for row in A):
        return None
    x = [A[where[c]][n] if where[c] >= 0 else Fraction(0) for c in range(n)]
    return x, n - r
