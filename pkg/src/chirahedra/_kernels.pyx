# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: integer orbit enumeration inside a box."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def orbit_in_box(cnp.int64_t[:, ::1] gens, cnp.int64_t[::1] start, long bound):
    """Breadth-first orbit of ``start`` under signed-permutation maps, kept inside [-bound, bound]^3.

    Each row of ``gens`` is (p0, p1, p2, s0, s1, s2, t0, t1, t2) for the map
    x -> (s0*x[p0] + t0, s1*x[p1] + t1, s2*x[p2] + t2).
    """
    cdef long side = 2 * bound + 1
    cdef long ngen = gens.shape[0]
    cdef long i, g, head = 0, tail = 1, idx, cap = 1024
    cdef cnp.int64_t x[3]
    cdef cnp.int64_t y[3]
    cdef bint inside
    if bound < 0 or abs(start[0]) > bound or abs(start[1]) > bound or abs(start[2]) > bound:
        return np.zeros((0, 3), dtype=np.int64)
    seen_arr = np.zeros(side * side * side, dtype=np.uint8)
    cdef cnp.uint8_t[::1] seen = seen_arr
    out_arr = np.empty((cap, 3), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] out = out_arr
    for i in range(3):
        out[0, i] = start[i]
    seen[((start[0] + bound) * side + start[1] + bound) * side + start[2] + bound] = 1
    while head < tail:
        for i in range(3):
            x[i] = out[head, i]
        head += 1
        for g in range(ngen):
            inside = True
            for i in range(3):
                y[i] = gens[g, 3 + i] * x[gens[g, i]] + gens[g, 6 + i]
                if y[i] > bound or y[i] < -bound:
                    inside = False
            if not inside:
                continue
            idx = ((y[0] + bound) * side + y[1] + bound) * side + y[2] + bound
            if seen[idx]:
                continue
            seen[idx] = 1
            if tail == cap:
                cap *= 2
                out_arr = np.resize(out_arr, (cap, 3))
                out = out_arr
            for i in range(3):
                out[tail, i] = y[i]
            tail += 1
    return np.asarray(out_arr[:tail]).copy()


def apply_map(cnp.int64_t[::1] gen, cnp.int64_t[:, ::1] pts):
    """Apply one map (same row layout as in ``orbit_in_box``) to every row of ``pts``."""
    cdef long n = pts.shape[0], k, i
    res = np.empty((n, 3), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] r = res
    for k in range(n):
        for i in range(3):
            r[k, i] = gen[3 + i] * pts[k, gen[i]] + gen[6 + i]
    return res
