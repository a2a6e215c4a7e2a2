"""Random instances and brute-force references shared by the tests."""
from __future__ import annotations

import itertools

import numpy as np

from dfrechet.geometry import Norm, dist


def random_curve(rng, n, d=2, kind="gauss"):
    if kind == "gauss":
        return rng.normal(size=(n, d))
    if kind == "walk":
        return np.cumsum(rng.normal(size=(n, d)), axis=0)
    if kind == "int":
        # small integer coordinates create many distance ties
        return rng.integers(-3, 4, size=(n, d)).astype(float)
    raise ValueError(kind)


def random_pair(rng, max_n=20, d=None, kinds=("gauss", "walk", "int")):
    d = int(rng.integers(1, 4)) if d is None else d
    kind = kinds[int(rng.integers(len(kinds)))]
    n, m = (int(x) for x in rng.integers(1, max_n + 1, 2))
    return random_curve(rng, n, d, kind), random_curve(rng, m, d, kind)


def random_delta(rng, a, b, norm=Norm.L2):
    """Either an exact pair distance (tie case) or a uniform draw."""
    from dfrechet.geometry import pairwise

    d = pairwise(np.asarray(a, float), np.asarray(b, float), norm)
    if rng.random() < 0.5:
        return float(d.flat[int(rng.integers(d.size))])
    return float(rng.uniform(0, d.max() * 1.1 + 1e-9))


def couplings(n, m):
    """Every monotone coupling from (0, 0) to (n-1, m-1); exponential, tiny sizes only."""
    def walk(i, j):
        if (i, j) == (n - 1, m - 1):
            yield ((i, j),)
            return
        for di, dj in ((1, 0), (0, 1), (1, 1)):
            if i + di < n and j + dj < m:
                for rest in walk(i + di, j + dj):
                    yield ((i, j),) + rest
    return list(walk(0, 0))


def dfd_brute(a, b, norm=Norm.L2):
    return min(max(dist(a[i], b[j], norm) for i, j in c) for c in couplings(len(a), len(b)))


def ulp_tol(*values, ulps=4):
    return ulps * float(np.spacing(max(abs(v) for v in values)))


def all_pairs(n):
    return itertools.combinations(range(n), 2)
