"""Free-space diagram, viable-path decision and the binary-search exact DFD.

Column ``i`` of the diagram belongs to vertex ``a[i]``, row ``j`` to ``b[j]``;
cell ``(i, j)`` is white when ``dist(a[i], b[j]) <= delta``.  A viable path
moves from ``(i, j)`` to ``(i, j+1)``, ``(i+1, j)`` or ``(i+1, j+1)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import Norm, as_curve, pairwise

Intervals = list[tuple[int, int]]


@dataclass(frozen=True)
class WhiteCellSet:
    """Sorted white rows of every column."""

    columns: tuple[list[int], ...]
    n: int
    m: int

    @property
    def size(self) -> int:
        return sum(len(c) for c in self.columns)

    @classmethod
    def from_mask(cls, mask: np.ndarray) -> "WhiteCellSet":
        n, m = mask.shape
        _, jj = np.nonzero(mask)
        return cls(split_by(jj, np.cumsum(mask.sum(axis=1))[:-1]), n, m)

    @classmethod
    def from_pairs(cls, ii: np.ndarray, jj: np.ndarray, n: int, m: int) -> "WhiteCellSet":
        """Build from unordered (column, row) index arrays; duplicates are not expected."""
        order = np.lexsort((jj, ii))
        ii, jj = ii[order], jj[order]
        return cls(split_by(jj, np.searchsorted(ii, np.arange(1, n))), n, m)


def split_by(values: np.ndarray, cuts: np.ndarray) -> tuple[list, ...]:
    """``values`` cut at ``cuts`` into Python lists (cheaper than ``np.split`` for many parts)."""
    flat = values.tolist()
    bounds = [0] + cuts.tolist() + [len(flat)]
    return tuple(flat[lo:hi] for lo, hi in zip(bounds, bounds[1:]))


def build_white_cells(a, b, delta: float, norm: Norm | str = Norm.L2) -> WhiteCellSet:
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    return WhiteCellSet.from_mask(pairwise(as_curve(a), as_curve(b), Norm.parse(norm)) <= delta)


def viable_path_exists(w: WhiteCellSet, n: int | None = None, m: int | None = None) -> bool:
    """Reachability of ``(n-1, m-1)`` from ``(0, 0)`` through white cells.

    Column-by-column propagation; each white cell is touched once.
    """
    n = w.n if n is None else n
    m = w.m if m is None else m
    if len(w.columns) != n:
        raise ValueError("white cell set was built for a different number of columns")
    prev: set[int] = set()
    for i, rows in enumerate(w.columns):
        cur: set[int] = set()
        if i == 0:
            for j in rows:
                if j == 0 or j - 1 in cur:
                    cur.add(j)
        else:
            for j in rows:
                if j in prev or j - 1 in prev or j - 1 in cur:
                    cur.add(j)
        if not cur:
            return False
        prev = cur
    return m - 1 in prev


def intervals_from_column(w: WhiteCellSet, i: int) -> Intervals:
    """Maximal runs of consecutive white rows in column ``i``."""
    return runs(w.columns[i])


def runs(rows) -> Intervals:
    out: Intervals = []
    for j in rows:
        if out and out[-1][1] == j - 1:
            out[-1] = (out[-1][0], j)
        else:
            out.append((j, j))
    return out


def dfd_binary_search(a, b, norm: Norm | str = Norm.L2) -> float:
    """Exact DFD: binary search over the sorted vertex-pair distances.

    The decision at each probe is :func:`viable_path_exists` on a freshly
    thresholded free-space diagram.
    """
    a = as_curve(a)
    b = as_curve(b)
    d = pairwise(a, b, Norm.parse(norm))
    cand = np.unique(d)
    lo, hi = 0, len(cand) - 1  # the largest candidate always admits a path
    while lo < hi:
        mid = (lo + hi) // 2
        if viable_path_exists(WhiteCellSet.from_mask(d <= cand[mid])):
            hi = mid
        else:
            lo = mid + 1
    return float(cand[lo])
