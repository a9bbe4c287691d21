"""Time the vertex-orbit kernel: compiled extension against the pure-Python twin.

    python benchmarks/bench_kernels.py [--radius 12] [--repeat 3]
"""

import argparse
import time

import numpy as np

from chirahedra import kernels
from chirahedra.groups import build_group
from chirahedra.wythoff import _denominator, _int_row

CASES = [("P1", (1, 3)), ("P2", (1, 4)), ("P3", (1, 2))]


def inputs(family, params, radius):
    G = build_group(family, params)
    D = _denominator(G)
    gens = np.array([_int_row(g, D) for g in G.generators.values()], dtype=np.int64)
    return gens, np.zeros(3, dtype=np.int64), radius * D


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--radius", type=int, default=12)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = [("python", kernels.python_backend)]
    if kernels.compiled_backend is not None:
        backends.insert(0, ("cython", kernels.compiled_backend))
    print("%-8s %6s %8s  %s" % ("family", "radius", "points",
                                "  ".join("%10s" % b for b, _ in backends)))
    for fam, p in CASES:
        gens, start, bound = inputs(fam, p, args.radius)
        cols, ref = [], None
        for _, mod in backends:
            t, out = best_of(lambda: mod.orbit_in_box(gens, start, bound), args.repeat)
            if ref is None:
                ref = out
            assert out.tolist() == ref.tolist()
            cols.append("%9.4fs" % t)
        print("%-8s %6d %8d  %s" % (fam, args.radius, len(ref), "  ".join(cols)))


if __name__ == "__main__":
    main()
