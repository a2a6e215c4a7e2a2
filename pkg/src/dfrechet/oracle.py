"""Reference implementations used as ground truth by the test-suite.

Nothing here is clever: the distance DP fills the whole ``n x m`` table and
the decision oracle runs a boolean reachability pass over the full matrix.
Both are O(nm) in time and memory.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import Norm, as_curve, pairwise


@dataclass(frozen=True)
class FrechetResult:
    value: float
    witness: tuple[tuple[int, int], ...] | None
    witness_pair: tuple[int, int]


def _dp_table(d: np.ndarray) -> np.ndarray:
    """Coupling table T[i, j] = max(d[i, j], min(T[i-1, j], T[i, j-1], T[i-1, j-1])).

    Filled one anti-diagonal at a time; every cell of diagonal ``k`` only
    depends on diagonals ``k - 1`` and ``k - 2``.
    """
    n, m = d.shape
    t = np.full((n + 1, m + 1), np.inf)
    t[0, 0] = -np.inf
    for k in range(n + m - 1):
        i = np.arange(max(0, k - m + 1), min(n, k + 1))
        j = k - i
        best = np.minimum(np.minimum(t[i, j + 1], t[i + 1, j]), t[i, j])
        t[i + 1, j + 1] = np.maximum(d[i, j], best)
    return t


def dfd_dp(a, b, norm: Norm | str = Norm.L2, witness: bool = True) -> FrechetResult:
    """Exact discrete Fréchet distance by dynamic programming.

    The witness is an optimal coupling ``((0, 0), ..., (n-1, m-1))`` found
    by backtracking; ``witness_pair`` is a coupled pair attaining the value.
    """
    a = as_curve(a)
    b = as_curve(b)
    norm = Norm.parse(norm)
    d = pairwise(a, b, norm)
    t = _dp_table(d)
    n, m = d.shape
    value = float(t[n, m])
    if not witness:
        flat = int(np.flatnonzero(d == value)[0])
        return FrechetResult(value, None, divmod(flat, m))
    path = [(n - 1, m - 1)]
    i, j = n - 1, m - 1
    while (i, j) != (0, 0):
        moves = [(i - 1, j - 1), (i - 1, j), (i, j - 1)]
        i, j = min((mv for mv in moves if mv[0] >= 0 and mv[1] >= 0),
                   key=lambda mv: t[mv[0] + 1, mv[1] + 1])
        path.append((i, j))
    path.reverse()
    pair = max(path, key=lambda ij: d[ij])
    return FrechetResult(value, tuple(path), pair)


def _reachable(a, b, delta: float, norm: Norm) -> np.ndarray:
    a = as_curve(a)
    b = as_curve(b)
    white = (pairwise(a, b, norm) <= delta).tolist()
    n, m = len(white), len(white[0])
    reach = [[False] * m for _ in range(n)]
    for i in range(n):
        for j in range(m):
            if not white[i][j]:
                continue
            if i == 0 and j == 0:
                reach[i][j] = True
                continue
            reach[i][j] = ((i > 0 and reach[i - 1][j]) or (j > 0 and reach[i][j - 1])
                           or (i > 0 and j > 0 and reach[i - 1][j - 1]))
    return np.array(reach, dtype=bool)


def dfd_decision_naive(a, b, delta: float, norm: Norm | str = Norm.L2) -> bool:
    """Is there a viable path through the full free-space matrix at ``delta``?"""
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    reach = _reachable(a, b, delta, Norm.parse(norm))
    return bool(reach[-1, -1])


def reachable_column_naive(a, b, delta: float, norm: Norm | str, i: int) -> set[int]:
    """Rows ``j`` with cell ``(i, j)`` reachable from ``(0, 0)``."""
    reach = _reachable(a, b, delta, Norm.parse(norm))
    if not 0 <= i < reach.shape[0]:
        raise IndexError(f"column {i} out of range")
    return set(np.flatnonzero(reach[i]).tolist())


def reachable_matrix_naive(a, b, delta: float, norm: Norm | str = Norm.L2) -> np.ndarray:
    """Full boolean reachability matrix (rows of the result are columns ``i``)."""
    return _reachable(a, b, delta, Norm.parse(norm))
