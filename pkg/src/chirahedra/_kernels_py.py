"""Pure-Python twins of the compiled kernels, with identical output order."""

from collections import deque

import numpy as np


def orbit_in_box(gens, start, bound):
    gens = [tuple(int(v) for v in row) for row in gens]
    start = tuple(int(v) for v in start)
    if bound < 0 or max(abs(v) for v in start) > bound:
        return np.zeros((0, 3), dtype=np.int64)
    seen = {start}
    out = [start]
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for p0, p1, p2, s0, s1, s2, t0, t1, t2 in gens:
            y = (s0 * x[p0] + t0, s1 * x[p1] + t1, s2 * x[p2] + t2)
            if max(abs(v) for v in y) > bound or y in seen:
                continue
            seen.add(y)
            out.append(y)
            queue.append(y)
    return np.array(out, dtype=np.int64).reshape(-1, 3)


def apply_map(gen, pts):
    p0, p1, p2, s0, s1, s2, t0, t1, t2 = (int(v) for v in gen)
    return np.array([(s0 * x[p0] + t0, s1 * x[p1] + t1, s2 * x[p2] + t2) for x in pts.tolist()],
                    dtype=np.int64).reshape(-1, 3)
