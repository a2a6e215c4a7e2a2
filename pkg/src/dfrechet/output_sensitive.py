"""Exact DFD driven by switching cells.

Each column of the free-space diagram is kept as its list of maximal white
runs.  The run endpoints are exactly the switching cells (white cells with
a black vertical neighbour, rows outside ``0..m-1`` counting as black), so
the diagram never has to be materialized.  Column reachability is pushed
left to right with :func:`merge_col`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ContractViolation
from .freespace import Intervals, split_by
from .geometry import Norm, as_curve, check_same_dim, norm_of_diff, pairwise
from .spatial_index import GridIndex
from .stats import ProbeStats


@dataclass(frozen=True)
class SwitchingCellSet:
    """Switching rows per column, with which side of each is black.

    ``lows[i][k]`` is set when the cell below ``rows[i][k]`` is black (the
    row opens a white run), ``highs[i][k]`` when the cell above is black.
    """

    rows: tuple[list[int], ...]
    lows: tuple[list[bool], ...]
    highs: tuple[list[bool], ...]
    white_count: int

    @property
    def total_count(self) -> int:
        return sum(len(r) for r in self.rows)


def _grid_cell_size(a: np.ndarray, b: np.ndarray, delta: float) -> float:
    # any size >= delta works with a one-cell reach; keep keys in range for tiny delta
    scale = 1.0 + max(float(np.max(np.abs(a))), float(np.max(np.abs(b))))
    return max(delta, scale * 2.0 ** -40)


def compute_switching_cells(a, b, delta: float, norm: Norm | str = Norm.L2) -> SwitchingCellSet:
    """Switching cells of the diagram at ``delta``.

    Vertices of ``b`` go into a uniform grid with cells at least ``delta``
    wide; for each ``a[i]`` the 3^d surrounding cells give the candidates,
    which are filtered to the ball and then to those with a neighbouring
    vertex (``j - 1`` or ``j + 1``) outside it.
    """
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    a = as_curve(a)
    b = as_curve(b)
    check_same_dim(a, b)
    norm = Norm.parse(norm)
    n, m = a.shape[0], b.shape[0]
    grid = GridIndex(b, _grid_cell_size(a, b, delta))
    qi, pj = grid.candidate_pairs(a, reach=1)
    inside = norm_of_diff(a[qi] - b[pj], norm) <= delta
    qi, pj = qi[inside], pj[inside]
    white_count = len(qi)
    low = pj == 0
    check = ~low
    low[check] = norm_of_diff(a[qi[check]] - b[pj[check] - 1], norm) > delta
    high = pj == m - 1
    check = ~high
    high[check] = norm_of_diff(a[qi[check]] - b[pj[check] + 1], norm) > delta
    keep = low | high
    qi, pj, low, high = qi[keep], pj[keep], low[keep], high[keep]
    order = np.lexsort((pj, qi))
    qi, pj, low, high = qi[order], pj[order], low[order], high[order]
    cuts = np.searchsorted(qi, np.arange(1, n))
    return SwitchingCellSet(split_by(pj, cuts), split_by(low, cuts), split_by(high, cuts),
                            white_count)


def columns_from_switching(s: SwitchingCellSet) -> list[Intervals]:
    """White runs of every column, paired up from the switching cells alone."""
    out: list[Intervals] = []
    for i, (rows, lows, highs) in enumerate(zip(s.rows, s.lows, s.highs)):
        col: Intervals = []
        start = None
        for j, is_low, is_high in zip(rows, lows, highs):
            if is_low:
                if start is not None:
                    raise ContractViolation(f"column {i}: run opened twice (row {j})")
                start = j
            if is_high:
                if start is None:
                    raise ContractViolation(f"column {i}: run closed before it opened (row {j})")
                col.append((start, j))
                start = None
        if start is not None:
            raise ContractViolation(f"column {i}: run starting at row {start} never closes")
        out.append(col)
    return out


def merge_col(r_prev: Intervals, c_i: Intervals) -> Intervals:
    """Reachable runs of column ``i`` from those of column ``i - 1`` and its white runs.

    A white run ``[c, d]`` is entered at the lowest row ``e`` reachable from
    the previous column, directly or diagonally, and everything in ``[e, d]``
    is then reachable by moving up.  The diagonal move is folded in by
    widening each previous interval ``[a, b]`` to ``[a, b + 1]``.

    One bottom-up pass over the merged endpoints, tracking whether we are
    inside a widened previous interval (``potential``) and inside a white
    run not yet entered (``want``).  Compared with the textbook formulation
    of this scan, ``want`` is cleared once a run has been entered so a
    second previous interval inside the same run cannot reopen it, and a
    run's upper end is emitted only if the run was entered.
    """
    # event = (row, is_upper_end, source) with source 0 = previous column, 1 = white run;
    # lower ends sort before upper ends on the same row since intervals are closed
    prev_events = []
    for lo, hi in r_prev:
        prev_events.append((lo, 0, 0))
        prev_events.append((hi + 1, 1, 0))
    run_events = []
    for lo, hi in c_i:
        run_events.append((lo, 0, 1))
        run_events.append((hi, 1, 1))
    potential = want = False
    entered = None
    out: Intervals = []
    # both lists are already sorted, so this is a linear merge
    for row, upper, source in sorted(prev_events + run_events):
        if source == 0 and not upper:
            potential = True
            if want:
                entered, want = row, False
        elif source == 0:
            potential = False
        elif not upper:
            if potential:
                entered = row
            else:
                want = True
        else:
            want = False
            if entered is not None:
                out.append((entered, row))
                entered = None
    return out


def reachable_columns(a, b, delta: float, norm: Norm | str = Norm.L2,
                      stop_early: bool = False) -> list[Intervals]:
    """Reachable runs ``R[i]`` of every column (trailing columns empty once nothing is reachable)."""
    s = compute_switching_cells(a, b, delta, norm)
    return _propagate(columns_from_switching(s), stop_early)


def _propagate(cols: list[Intervals], stop_early: bool) -> list[Intervals]:
    first = cols[0]
    reach = [[first[0]] if first and first[0][0] == 0 else []]
    for c_i in cols[1:]:
        if not reach[-1] and stop_early:
            break
        reach.append(merge_col(reach[-1], c_i) if reach[-1] else [])
    reach.extend([] for _ in range(len(cols) - len(reach)))
    return reach


def decision_switching(a, b, delta: float, norm: Norm | str = Norm.L2,
                       stats: ProbeStats | None = None) -> bool:
    """Is DFD(a, b) <= delta?  Decided from the switching cells only."""
    a = as_curve(a)
    b = as_curve(b)
    s = compute_switching_cells(a, b, delta, norm)
    if stats is not None:
        stats.record(white=s.white_count, switching=s.total_count)
    last = _propagate(columns_from_switching(s), stop_early=True)[-1]
    m = b.shape[0]
    return bool(last) and last[-1][1] == m - 1


class PairwiseDistanceSelector:
    """k-th smallest of the ``n * m`` vertex-pair distances (k is 1-based).

    Sorts all distances once; each query is then a lookup.
    """

    def __init__(self, a, b, norm: Norm | str = Norm.L2):
        self.sorted = np.sort(pairwise(as_curve(a), as_curve(b), Norm.parse(norm)), axis=None)

    def __len__(self) -> int:
        return self.sorted.size

    def select(self, k: int) -> float:
        if not 1 <= k <= self.sorted.size:
            raise IndexError(f"rank {k} outside 1..{self.sorted.size}")
        return float(self.sorted[k - 1])


def select_pairwise_distance(a, b, k: int, norm: Norm | str = Norm.L2) -> float:
    return PairwiseDistanceSelector(a, b, norm).select(k)


class OutputSensitiveResult(NamedTuple):
    value: float
    max_switching_cells: int


def dfd_output_sensitive(a, b, norm: Norm | str = Norm.L2,
                         stats: ProbeStats | None = None) -> OutputSensitiveResult:
    """Exact DFD by binary search over distance ranks with :func:`decision_switching`.

    Also reports the largest switching-cell count met at any probed
    threshold, an empirical stand-in for the worst case over all thresholds.
    """
    a = as_curve(a)
    b = as_curve(b)
    norm = Norm.parse(norm)
    stats = stats if stats is not None else ProbeStats()
    selector = PairwiseDistanceSelector(a, b, norm)
    lo, hi = 1, len(selector)
    while lo < hi:
        mid = (lo + hi) // 2
        if decision_switching(a, b, selector.select(mid), norm, stats):
            hi = mid
        else:
            lo = mid + 1
    value = selector.select(lo)
    # the last rank is never probed when it is the answer; count its cells too
    decision_switching(a, b, value, norm, stats)
    return OutputSensitiveResult(value, stats.max_switching)
