"""Greedy mu-simplification of a polygonal curve."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import Norm, as_curve, edge_lengths, norm_of_diff


@dataclass(frozen=True)
class Simplification:
    curve: np.ndarray
    index_map: tuple[int, ...]
    mu: float


def greedy_simplify(c, mu: float, norm: Norm | str = Norm.L2) -> Simplification:
    """Greedy mu-simplification.

    From the current kept vertex ``p_j`` the scan stops at the first vertex
    leaving the closed ball ``ball(p_j, mu)``; that vertex is kept next.
    When no vertex leaves the ball the last vertex is appended (once).

    >>> s = greedy_simplify([(0, 0), (0.4, 0), (1.2, 0), (2.0, 0)], 1.0)
    >>> s.index_map
    (0, 2, 3)
    """
    if mu < 0:
        raise ValueError("mu must be nonnegative")
    c = as_curve(c)
    norm = Norm.parse(norm)
    n = c.shape[0]
    if n == 1:
        return Simplification(c, (0,), float(mu))
    # an edge longer than mu means the scan exits right away
    jumps = (edge_lengths(c, norm) > mu).tolist()
    keep = [0]
    j = 0
    while True:
        if jumps[j]:
            nxt = j + 1
        else:
            nxt = _first_exit(c, j, mu, norm)
            if nxt is None:
                if keep[-1] != n - 1:
                    keep.append(n - 1)
                break
        keep.append(nxt)
        if nxt == n - 1:
            break
        j = nxt
    curve = c[keep]
    curve.flags.writeable = False
    return Simplification(curve, tuple(keep), float(mu))


def _first_exit(c: np.ndarray, j: int, mu: float, norm: Norm) -> int | None:
    n = c.shape[0]
    start, block = j + 1, 16
    while start < n:
        stop = min(n, start + block)
        far = np.flatnonzero(norm_of_diff(c[start:stop] - c[j], norm) > mu)
        if far.size:
            return start + int(far[0])
        start, block = stop, block * 2
    return None
