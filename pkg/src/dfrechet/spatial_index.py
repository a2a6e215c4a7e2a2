"""Uniform-grid approximate range queries and the well-separated pair decomposition."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .geometry import Norm, as_curve, check_same_dim, norm_of_diff

# keys are floor(coord / cell_size); beyond this the int64 / float round-trip is lossy
_KEY_LIMIT = 2.0 ** 52


def _expand_ranges(starts: np.ndarray, counts: np.ndarray) -> np.ndarray:
    """Concatenate ``arange(s, s + c)`` for every (s, c)."""
    total = int(counts.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64)
    ends = np.cumsum(counts)
    shift = np.repeat(starts - (ends - counts), counts)
    return shift + np.arange(total, dtype=np.int64)


class GridIndex:
    """Points hashed into a uniform grid, with vectorized cell lookups.

    The occupied cells are kept as a sorted array of mixed-radix codes so a
    batch of cell keys resolves with one ``searchsorted``; a dict fallback
    covers grids whose key range does not fit the code space.
    """

    def __init__(self, points: np.ndarray, cell_size: float):
        if not cell_size > 0 or not math.isfinite(cell_size):
            raise ValueError(f"cell_size must be a positive finite number, got {cell_size}")
        pts = np.asarray(points, dtype=np.float64)
        if pts.ndim != 2:
            raise ValueError("points must be an (n, d) array")
        self.points = pts
        self.cell_size = float(cell_size)
        self.dim = pts.shape[1]
        scaled = np.floor(pts / self.cell_size)
        if scaled.size and np.max(np.abs(scaled)) > _KEY_LIMIT:
            raise ValueError("cell_size too small for the coordinate range")
        self.keys = scaled.astype(np.int64)
        n = pts.shape[0]
        if n == 0:
            self._base = np.zeros(self.dim, dtype=np.int64)
            self._width = np.ones(self.dim, dtype=np.int64)
        else:
            self._base = self.keys.min(axis=0)
            self._width = self.keys.max(axis=0) - self._base + 1
        self._dict = None
        if float(np.prod(self._width.astype(np.float64))) < 2.0 ** 62:
            self._strides = np.ones(self.dim, dtype=np.int64)
            for k in range(self.dim - 2, -1, -1):
                self._strides[k] = self._strides[k + 1] * self._width[k + 1]
            codes = (self.keys - self._base) @ self._strides if n else np.empty(0, np.int64)
            self.order = np.argsort(codes, kind="stable")
            sorted_codes = codes[self.order]
            self._codes, self._starts, counts = np.unique(
                sorted_codes, return_index=True, return_counts=True)
            self._ends = self._starts + counts
        else:
            self._strides = None
            self.order = np.lexsort(self.keys.T[::-1]) if n else np.empty(0, np.int64)
            self._dict = {}
            for pos, idx in enumerate(self.order):
                key = tuple(self.keys[idx].tolist())
                lo, _ = self._dict.get(key, (pos, pos))
                self._dict[key] = (lo, pos + 1)

    def lookup(self, cell_keys: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Ranges into ``order`` for each row of ``cell_keys``; empty cells give (0, 0)."""
        q = cell_keys.shape[0]
        starts = np.zeros(q, dtype=np.int64)
        ends = np.zeros(q, dtype=np.int64)
        if q == 0 or self.points.shape[0] == 0:
            return starts, ends
        if self._dict is not None:
            for row in range(q):
                hit = self._dict.get(tuple(cell_keys[row].tolist()))
                if hit is not None:
                    starts[row], ends[row] = hit
            return starts, ends
        rel = cell_keys - self._base
        inside = np.all((rel >= 0) & (rel < self._width), axis=1)
        codes = rel[inside] @ self._strides
        pos = np.searchsorted(self._codes, codes)
        pos_c = np.minimum(pos, len(self._codes) - 1)
        found = self._codes[pos_c] == codes
        rows = np.flatnonzero(inside)[found]
        starts[rows] = self._starts[pos_c[found]]
        ends[rows] = self._ends[pos_c[found]]
        return starts, ends

    def query_keys(self, queries: np.ndarray) -> np.ndarray:
        scaled = np.floor(np.asarray(queries, dtype=np.float64) / self.cell_size)
        if scaled.size and np.max(np.abs(scaled)) > _KEY_LIMIT:
            raise ValueError("query coordinates out of the grid's key range")
        return scaled.astype(np.int64)

    def offsets(self, reach: int) -> np.ndarray:
        axes = [np.arange(-reach, reach + 1, dtype=np.int64)] * self.dim
        return np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, self.dim)

    def candidate_pairs(self, queries: np.ndarray, reach: int) -> tuple[np.ndarray, np.ndarray]:
        """All (query, point) index pairs whose cells differ by at most ``reach`` per axis."""
        qi, cells = self.neighbour_cells(self.query_keys(queries), reach)
        starts, ends = self.lookup(cells)
        counts = ends - starts
        return np.repeat(qi, counts), self.order[_expand_ranges(starts, counts)]

    def neighbour_cells(self, qkeys: np.ndarray, reach: int) -> tuple[np.ndarray, np.ndarray]:
        """Every cell within ``reach`` of each query cell, with the owning query index."""
        offs = self.offsets(reach)
        cells = (qkeys[:, None, :] + offs[None, :, :]).reshape(-1, self.dim)
        qi = np.repeat(np.arange(len(qkeys), dtype=np.int64), len(offs))
        return qi, cells


class UniformGrid:
    """Points thrown into axis-aligned cells of side ``cell_size``."""

    def __init__(self, points, cell_size: float):
        self.points = as_curve(points)
        self.cell_size = float(cell_size)
        self.index = GridIndex(self.points, self.cell_size)

    def __repr__(self) -> str:
        return f"UniformGrid(cell_size={self.cell_size}, points={len(self.points)})"

    @cached_property
    def cells(self) -> dict[tuple[int, ...], list[int]]:
        out: dict[tuple[int, ...], list[int]] = {}
        for i, key in enumerate(self.index.keys.tolist()):
            out.setdefault(tuple(key), []).append(i)
        return out

    def cell_of(self, p) -> tuple[int, ...]:
        return tuple(int(k) for k in np.floor(np.asarray(p, dtype=np.float64) / self.cell_size))

    def query_many(self, centers, delta: float, beta: float = 0.5,
                   norm: Norm | str = Norm.L2) -> tuple[np.ndarray, np.ndarray]:
        """Batched beta-approximate ball queries.

        Returns index arrays ``(center_idx, point_idx)``.  Every point within
        ``delta`` of a center is reported; no point farther than
        ``(1 + beta) * delta`` is.  Cells lying entirely within the outer
        radius are reported wholesale, cells straddling it are filtered per
        point, cells missing the inner ball are skipped.
        """
        norm = Norm.parse(norm)
        if delta < 0:
            raise ValueError("delta must be nonnegative")
        if not 0 < beta <= 1:
            raise ValueError("beta must lie in (0, 1]")
        centers = np.asarray(centers, dtype=np.float64)
        if centers.ndim == 1:
            centers = centers[None, :]
        check_same_dim(centers, self.points)
        outer = (1.0 + beta) * delta
        h = self.cell_size
        # guards against the cell box k*h disagreeing with floor(p / h) by an ulp
        slack = 1e-12 * (outer + h + float(np.max(np.abs(centers), initial=0.0)))
        grid = self.index
        reach = int(math.ceil(delta / h)) if delta > 0 else 0
        qi_parts, pj_parts = [], []
        # bound the (query, cell) table size
        chunk = max(1, 2_000_000 // (2 * reach + 1) ** self.points.shape[1])
        for first in range(0, len(centers), chunk):
            qi, pj = self._query_chunk(centers[first:first + chunk], delta, outer, slack, reach, norm)
            qi_parts.append(qi + first)
            pj_parts.append(pj)
        if not qi_parts:
            return np.empty(0, np.int64), np.empty(0, np.int64)
        return np.concatenate(qi_parts), np.concatenate(pj_parts)

    def _query_chunk(self, centers, delta, outer, slack, reach, norm):
        grid = self.index
        h = self.cell_size
        qi, cell = grid.neighbour_cells(grid.query_keys(centers), reach)
        starts, ends = grid.lookup(cell)
        occupied = ends > starts
        qi, cell, starts, ends = qi[occupied], cell[occupied], starts[occupied], ends[occupied]
        c = centers[qi]
        lo = cell * h
        below = lo - c
        above = c - (lo + h)
        gap = np.maximum(np.maximum(below, above), 0.0)
        far = np.maximum(np.abs(below), np.abs(lo + h - c))
        near = norm_of_diff(gap, norm) <= delta + slack
        counts = np.where(near, ends - starts, 0)
        partial_cell = norm_of_diff(far, norm) > outer - slack
        pj = grid.order[_expand_ranges(starts, counts)]
        partial = np.repeat(partial_cell, counts)
        qi = np.repeat(qi, counts)
        if partial.any():
            idx = np.flatnonzero(partial)
            d = norm_of_diff(self.points[pj[idx]] - centers[qi[idx]], norm)
            keep = np.ones(len(qi), dtype=bool)
            keep[idx[d > outer]] = False
            qi, pj = qi[keep], pj[keep]
        return qi, pj


def build_grid(points, cell_size: float) -> UniformGrid:
    """Hash ``points`` into a uniform grid of side ``cell_size`` (floor convention)."""
    return UniformGrid(points, cell_size)


def approx_range_query(g: UniformGrid, center, delta: float, beta: float = 0.5,
                       norm: Norm | str = Norm.L2) -> list[tuple[np.ndarray, int]]:
    """Points of ``g`` near ``center`` as ``(point, index)`` pairs, sorted by index.

    Superset of the points within ``delta``, subset of those within
    ``(1 + beta) * delta``.  The grid is expected to have cell size
    ``beta * delta``; other sizes stay correct but probe more or fewer cells.
    """
    _, pj = g.query_many(np.asarray(center, dtype=np.float64)[None, :], delta, beta, norm)
    return [(g.points[j], int(j)) for j in np.sort(pj)]


# --------------------------------------------------------------------------
# Well-separated pair decomposition


@dataclass(frozen=True)
class WspdPair:
    set_a: np.ndarray
    set_b: np.ndarray
    rep_a: int
    rep_b: int


class _Node:
    __slots__ = ("start", "end", "lo", "hi", "diam", "rep", "children")

    def __init__(self, start, end, lo, hi, diam, rep):
        self.start = start
        self.end = end
        self.lo = lo
        self.hi = hi
        self.diam = diam
        self.rep = rep
        self.children = ()


def _box_gap(u: _Node, v: _Node, norm: Norm) -> float:
    gaps = [max(0.0, vl - uh, ul - vh) for ul, uh, vl, vh in zip(u.lo, u.hi, v.lo, v.hi)]
    if norm is Norm.L2:
        return math.sqrt(sum(g * g for g in gaps))
    if norm is Norm.L1:
        return sum(gaps)
    return max(gaps)


def _extent_norm(lo, hi, norm: Norm) -> float:
    ext = [h - l for l, h in zip(lo, hi)]
    if norm is Norm.L2:
        return math.sqrt(sum(e * e for e in ext))
    if norm is Norm.L1:
        return sum(ext)
    return max(ext)


class CompressedQuadtree:
    """Compressed 2^d-ary quadtree; each node owns a contiguous slice of ``perm``.

    Chains of cells holding all their points in a single child are
    collapsed, and a node whose points all coincide is a leaf.
    """

    def __init__(self, points: np.ndarray, norm: Norm = Norm.L2):
        self.points = points
        self.norm = norm
        n, d = points.shape
        self.perm = np.arange(n, dtype=np.int64)
        lo = points.min(axis=0)
        side = float(np.max(points.max(axis=0) - lo))
        self.root = self._make(0, n)
        weights = 1 << np.arange(d, dtype=np.int64)
        stack = [(self.root, lo.copy(), side)]
        while stack:
            node, corner, side = stack.pop()
            if node.diam == 0.0 or node.end - node.start < 2:
                continue
            idx = self.perm[node.start:node.end]
            pts = points[idx]
            for _ in range(2200):
                half = side / 2.0
                bits = pts >= corner + half
                codes = bits @ weights
                if codes.min() != codes.max() or half == 0.0:
                    break
                corner = corner + bits[0] * half
                side = half
            if codes.min() == codes.max():
                # cell arithmetic ran out of precision; split the widest axis instead
                ax = int(np.argmax(np.asarray(node.hi) - np.asarray(node.lo)))
                codes = (pts[:, ax] > node.lo[ax]).astype(np.int64)
                corner, half = np.asarray(node.lo), 0.0
            order = np.argsort(codes, kind="stable")
            self.perm[node.start:node.end] = idx[order]
            codes = codes[order]
            cuts = np.flatnonzero(np.diff(codes)) + 1
            bounds = np.concatenate(([0], cuts, [len(codes)]))
            kids = []
            for a, b in zip(bounds[:-1], bounds[1:]):
                child = self._make(node.start + int(a), node.start + int(b))
                kids.append(child)
                child_bits = ((int(codes[a]) >> np.arange(d)) & 1).astype(np.float64)
                stack.append((child, corner + child_bits * half, half))
            node.children = tuple(kids)

    def _make(self, start: int, end: int) -> _Node:
        pts = self.points[self.perm[start:end]]
        lo = pts.min(axis=0).tolist()
        hi = pts.max(axis=0).tolist()
        rep = int(self.perm[start:end].min())
        return _Node(start, end, lo, hi, _extent_norm(lo, hi, self.norm), rep)

    def members(self, node: _Node) -> np.ndarray:
        return np.sort(self.perm[node.start:node.end])

    def nodes(self):
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(node.children)


def build_wspd(points, separation: float = 10.0, norm: Norm | str = Norm.L2) -> list[WspdPair]:
    """Well-separated pair decomposition of ``points``.

    Every pair of points at distinct locations is covered by exactly one
    returned pair ``(A, B)``; for each pair the minimum distance between
    ``A`` and ``B`` is at least ``separation`` times the larger diameter.
    Separation is certified on bounding boxes, which is conservative.
    Representatives are the smallest input index of each set.
    """
    if separation < 1:
        raise ValueError("separation must be at least 1")
    pts = as_curve(points)
    if pts.shape[0] < 2:
        raise ValueError("a WSPD needs at least two points")
    norm = Norm.parse(norm)
    tree = CompressedQuadtree(pts, norm)
    out: list[WspdPair] = []
    for node in tree.nodes():
        kids = node.children
        for x in range(len(kids)):
            for y in range(x + 1, len(kids)):
                stack = [(kids[x], kids[y])]
                while stack:
                    u, v = stack.pop()
                    if _box_gap(u, v, norm) >= separation * max(u.diam, v.diam):
                        out.append(WspdPair(tree.members(u), tree.members(v), u.rep, v.rep))
                        continue
                    if u.diam < v.diam or not u.children:
                        u, v = v, u
                    stack.extend((c, v) for c in u.children)
    return out


def wspd_candidate_values(pairs: list[WspdPair], points, norm: Norm | str = Norm.L2) -> np.ndarray:
    """Sorted multiset ``{0.8 d, 1.2 d}`` over the representative distances ``d``."""
    if not pairs:
        raise ValueError("need at least one WSPD pair")
    pts = as_curve(points)
    ra = np.array([p.rep_a for p in pairs])
    rb = np.array([p.rep_b for p in pairs])
    d = norm_of_diff(pts[ra] - pts[rb], Norm.parse(norm))
    return np.sort(np.concatenate((0.8 * d, 1.2 * d)))
