"""Approximate DFD for kappa-bounded and backbone curves, and continuous FD by densification.

Both curve classes share one fuzzy decision procedure: simplify the two
curves at ``mu = eps * delta / 2``, mark the white cells of the simplified
diagram with grid range queries, and look for a viable path.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation
from .freespace import WhiteCellSet, viable_path_exists
from .fuzzy_search import SearchTrace, fuzzy_optimize
from .geometry import Norm, as_curve, check_backbone, check_same_dim, edge_lengths, norm_of_diff
from .oracle import dfd_dp
from .simplify import greedy_simplify
from .spatial_index import GridIndex, UniformGrid
from .stats import ProbeStats


@dataclass(frozen=True)
class ApproxParams:
    eps: float
    kappa: float = 1.0
    c1: float = 0.5
    c2: float = 2.0
    beta: float = 0.5

    def __post_init__(self):
        if not 0 < self.eps < 1:
            raise ValueError("eps must lie in (0, 1)")
        if not self.kappa >= 1:
            raise ValueError("kappa must be at least 1")
        if not 0 < self.c1 <= self.c2:
            raise ValueError("need 0 < c1 <= c2")
        if not 0 < self.beta <= 1:
            raise ValueError("beta must lie in (0, 1]")


def fuzzy_decide_simplified(a, b, delta: float, eps: float, beta: float = 0.5,
                            norm: Norm | str = Norm.L2, stats: ProbeStats | None = None) -> bool:
    """eps-fuzzy answer to "is DFD(a, b) <= delta?".

    ``True`` guarantees DFD <= (1 + eps) delta, ``False`` guarantees
    DFD > (1 - eps / 2) delta.  In between either answer may come back.
    """
    if not delta > 0:
        raise ValueError("delta must be positive")
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    a = as_curve(a)
    b = as_curve(b)
    check_same_dim(a, b)
    norm = Norm.parse(norm)
    mu = eps * delta / 2.0
    sa = greedy_simplify(a, mu, norm).curve
    sb = greedy_simplify(b, mu, norm).curve
    grid = UniformGrid(sb, beta * delta)
    qi, pj = grid.query_many(sa, delta, beta, norm)
    # the grid may return points up to (1 + beta) delta away; keep the true ball only
    inside = norm_of_diff(sa[qi] - sb[pj], norm) <= delta
    w = WhiteCellSet.from_pairs(qi[inside], pj[inside], sa.shape[0], sb.shape[0])
    if stats is not None:
        stats.record(white=w.size)
    return viable_path_exists(w)


def _collapse(c: np.ndarray) -> np.ndarray:
    keep = np.ones(c.shape[0], dtype=bool)
    keep[1:] = np.any(c[1:] != c[:-1], axis=1)
    return c[keep]


def approx_dfd_kbounded(a, b, params: ApproxParams, norm: Norm | str = Norm.L2,
                        trace: SearchTrace | None = None,
                        stats: ProbeStats | None = None) -> float:
    """eps-approximate DFD(a, b) where ``b`` is kappa-bounded (not checked).

    The optimum is one of the distances between the two vertex sets, so the
    fuzzy search runs over the pair decomposition of their union.
    """
    a = as_curve(a)
    b = as_curve(b)
    check_same_dim(a, b)
    norm = Norm.parse(norm)
    ca, cb = _collapse(a), _collapse(b)
    # zero iff the curves agree once repeated vertices are merged
    if ca.shape == cb.shape and np.array_equal(ca, cb):
        return 0.0

    def decide(delta: float, acc: float) -> bool:
        return fuzzy_decide_simplified(a, b, delta, acc, params.beta, norm, stats)

    return fuzzy_optimize(np.vstack([a, b]), decide, params.eps, norm, trace)


def small_exact(a, b, beta_cap: float = 2.0, norm: Norm | str = Norm.L2) -> float | None:
    """Exact DFD if it is below ``beta_cap``, else ``None``.

    Only vertex pairs closer than ``beta_cap`` can matter, and those are
    found with a grid of that cell size; for backbone curves there are
    O(n + m) of them.
    """
    if not beta_cap > 0:
        raise ValueError("beta_cap must be positive")
    a = as_curve(a)
    b = as_curve(b)
    check_same_dim(a, b)
    norm = Norm.parse(norm)
    n, m = a.shape[0], b.shape[0]
    qi, pj = GridIndex(b, beta_cap).candidate_pairs(a, reach=1)
    d = norm_of_diff(a[qi] - b[pj], norm)
    near = d < beta_cap
    qi, pj, d = qi[near], pj[near], d[near]
    cand = np.unique(d)
    if cand.size == 0:
        return None

    def feasible(k: int) -> bool:
        mask = d <= cand[k]
        return viable_path_exists(WhiteCellSet.from_pairs(qi[mask], pj[mask], n, m))

    if not feasible(cand.size - 1):
        return None
    lo, hi = 0, cand.size - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible(mid):
            hi = mid
        else:
            lo = mid + 1
    return float(cand[lo])


def _diameter_bound(a: np.ndarray, b: np.ndarray, norm: Norm) -> float:
    lo = np.minimum(a.min(axis=0), b.min(axis=0))
    hi = np.maximum(a.max(axis=0), b.max(axis=0))
    return float(norm_of_diff(hi - lo, norm))


def appr_f_backbone(a, b, eps: float, norm: Norm | str = Norm.L2, c1: float = 0.5,
                    c2: float = 2.0, beta: float = 0.5, trace: SearchTrace | None = None,
                    stats: ProbeStats | None = None) -> float:
    """eps-approximate DFD of two backbone curves.

    Geometric search from 1 in steps of ``1 + eps / 3``: downwards while the
    answers are yes, upwards while they are no, stopping at the first
    opposite answer.  Once the probe would drop below 1 the exact small-value
    routine takes over.
    """
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    a = as_curve(a)
    b = as_curve(b)
    check_same_dim(a, b)
    norm = Norm.parse(norm)
    for name, c in (("a", a), ("b", b)):
        if not check_backbone(c, c1, c2):
            raise ValueError(f"curve {name} is not a backbone curve for c1={c1}, c2={c2}")
    trace = trace if trace is not None else SearchTrace()
    acc = eps / 3.0
    step = 1.0 + acc
    cap = _diameter_bound(a, b, norm)

    def decide(delta: float, accuracy: float) -> bool:
        return fuzzy_decide_simplified(a, b, delta, accuracy, beta, norm, stats)

    d_old = d_new = 1.0
    first = None
    while True:
        if d_new < 1.0:
            value = small_exact(a, b, 2.0, norm)
            if value is None:
                raise ContractViolation("small_exact found no value below 2 after a yes at 1")
            trace.result = value
            return value
        answer = trace.ask(decide, d_new, acc)
        if first is None:
            first = answer
        elif answer != first:
            trace.result = d_new
            return d_new
        if not answer and (1.0 - acc) * d_new > cap:
            raise ContractViolation(f"decider said no at {d_new}, above the diameter {cap}")
        d_old = d_new
        d_new = d_old / step if answer else d_old * step


def densify(c, max_edge: float, norm: Norm | str = Norm.L2) -> np.ndarray:
    """Subdivide every edge evenly so no edge is longer than ``max_edge``.

    >>> densify([(0, 0), (3, 0)], 1.0).tolist()
    [[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [3.0, 0.0]]
    """
    if not max_edge > 0:
        raise ValueError("max_edge must be positive")
    c = as_curve(c)
    norm = Norm.parse(norm)
    if c.shape[0] == 1:
        return c
    lengths = edge_lengths(c, norm)
    pieces = np.maximum(np.ceil(lengths / max_edge), 1).astype(np.int64)
    # ceil can land one short when lengths / max_edge rounds down onto an integer
    pieces += lengths / pieces > max_edge
    start = np.repeat(np.arange(len(pieces)), pieces)
    step = np.arange(pieces.sum()) - np.repeat(np.cumsum(pieces) - pieces, pieces)
    t = (step / np.repeat(pieces, pieces))[:, None]
    p, q = c[start], c[start + 1]
    out = np.vstack([p + t * (q - p), c[-1:]])
    out[:-1][step == 0] = c[:-1]  # original vertices exactly
    out.flags.writeable = False
    return out


def _dfd_by_name(name: str):
    from .freespace import dfd_binary_search
    from .output_sensitive import dfd_output_sensitive

    table = {
        "dp": lambda a, b, norm: dfd_dp(a, b, norm, witness=False).value,
        "binsearch": dfd_binary_search,
        "output-sensitive": lambda a, b, norm: dfd_output_sensitive(a, b, norm).value,
    }
    if name not in table:
        raise ValueError(f"unknown DFD algorithm {name!r}; choose from {sorted(table)}")
    return table[name]


def approx_fd_continuous(a, b, eps: float, norm: Norm | str = Norm.L2,
                         dfd_algorithm: str = "dp", max_vertices: int = 3000,
                         max_rounds: int = 8) -> float:
    """Upper estimate ``v`` of the continuous Fréchet distance with ``v <= FD + eps * v``.

    The DFD of any subdivision of the two curves is at least FD and at most
    FD plus the longest edge.  Starting from the DFD of the input curves,
    both curves are subdivided at ``eps * v / 4`` and the smallest DFD seen
    so far is kept, until the last subdivision used edges no longer than
    ``eps * v``.  If the vertex budget stops the refinement early a warning
    is issued and the bound is only ``v <= FD + (longest edge)``.
    """
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    a = as_curve(a)
    b = as_curve(b)
    check_same_dim(a, b)
    norm = Norm.parse(norm)
    dfd = _dfd_by_name(dfd_algorithm)
    best = dfd(a, b, norm)
    longest = max(float(np.max(edge_lengths(c, norm), initial=0.0)) for c in (a, b))
    for _ in range(max_rounds):
        if best == 0.0 or longest <= eps * best:
            return best
        h = eps * best / 4.0
        total = max(_pieces_needed(c, h, norm) for c in (a, b))
        if total > max_vertices:
            h *= total / max_vertices
        da, db = densify(a, h, norm), densify(b, h, norm)
        longest = max(float(np.max(edge_lengths(c, norm), initial=0.0)) for c in (da, db))
        best = min(best, dfd(da, db, norm))
        if total > max_vertices:
            break
    if not (best == 0.0 or longest <= eps * best):
        warnings.warn("vertex budget reached before the eps bound was certified", RuntimeWarning)
    return best


def _pieces_needed(c: np.ndarray, h: float, norm: Norm) -> int:
    return int(np.sum(np.ceil(edge_lengths(c, norm) / h))) + 1
