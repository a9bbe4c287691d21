"""Closed-form vertex-stars of the three families, as listed formulas in the parameters.

Used as the reference side when checking the stars computed from the groups.
"""

from .exact import vec
from .groups import FamilyId, normalize_params


def _p1(a, b):
    return [
        [(a, 0, b), (0, b, a), (b, a, 0)],
        [(a, 0, -b), (0, -b, -a), (b, -a, 0)],
        [(-a, 0, -b), (0, b, -a), (-b, a, 0)],
        [(-a, 0, b), (0, -b, a), (-b, -a, 0)],
    ]


def _p2(c, d):
    return [
        [(c, -c, d), (-c, d, c), (d, c, -c)],
        [(-c, -c, -d), (c, d, -c), (-d, c, c)],
        [(-c, c, d), (c, -d, c), (-d, -c, -c)],
        [(c, c, -d), (-c, -d, -c), (d, -c, c)],
        [(-c, -c, d), (c, -d, -c), (d, c, c)],
        [(c, -c, -d), (-c, -d, c), (-d, c, -c)],
        [(-c, c, -d), (c, d, c), (d, -c, -c)],
        [(c, c, d), (-c, d, -c), (-d, -c, c)],
    ]


def _p3(c, d):
    return [
        [(c, -c, d), (d, -c, -c), (-c, -c, -d), (-d, -c, c)],
        [(-c, c, -d), (-c, d, c), (-c, -c, d), (-c, -d, -c)],
        [(c, c, d), (c, d, -c), (c, -c, -d), (c, -d, c)],
        [(d, c, c), (-c, c, d), (-d, c, -c), (c, c, -d)],
        [(d, c, -c), (-c, d, -c), (-d, -c, -c), (c, -d, -c)],
        [(-d, c, c), (c, d, c), (d, -c, c), (-c, -d, c)],
    ]


_LISTS = {FamilyId.P1: _p1, FamilyId.P2: _p2, FamilyId.P3: _p3}

# star index pairs that coincide on the regular loci
COINCIDENCES = {
    FamilyId.P2: [(0, 5), (1, 4), (2, 6), (3, 7)],   # d = 0
    FamilyId.P3: [(0, 3), (1, 2), (4, 5)],           # c = 0
}


def listed_stars(family, params) -> list:
    fam = FamilyId.parse(family)
    x, y = normalize_params(fam, params)
    return [[vec(v) for v in star] for star in _LISTS[fam](x, y)]
