"""Points, norms, curves and curve-class predicates.

A curve is an ``(n, d)`` float64 numpy array, read-only once validated by
:func:`as_curve`.  Indices are 0-based throughout the package.

All distance evaluations go through :func:`norm_of_diff`, which combines
coordinates with elementwise operations only.  That makes a distance
bit-identical whether it is computed for one pair or as part of a whole
matrix, which lets the exact algorithms be compared with ``==``.
"""
from __future__ import annotations

import enum
import math

import numpy as np

from .errors import DimensionMismatchError

MAX_DIM = 8


class Norm(enum.Enum):
    L1 = "l1"
    L2 = "l2"
    LINF = "linf"

    @classmethod
    def parse(cls, value: "Norm | str") -> "Norm":
        if isinstance(value, Norm):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown norm {value!r}; expected one of l1, l2, linf") from None


def as_point(p) -> np.ndarray:
    arr = np.asarray(p, dtype=np.float64)
    if arr.ndim != 1 or not 1 <= arr.shape[0] <= MAX_DIM:
        raise ValueError(f"a point needs 1..{MAX_DIM} coordinates, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("point coordinates must be finite")
    return arr


def as_curve(c) -> np.ndarray:
    """Validate ``c`` and return it as a read-only ``(n, d)`` float64 array."""
    if (isinstance(c, np.ndarray) and c.dtype == np.float64 and c.ndim == 2
            and not c.flags.writeable and c.shape[0] >= 1 and 1 <= c.shape[1] <= MAX_DIM):
        return c
    try:
        arr = np.array(c, dtype=np.float64)
    except ValueError as exc:
        raise ValueError(f"vertices must share one dimension: {exc}") from None
    if arr.ndim != 2:
        raise ValueError(f"a curve must be a sequence of points, got array of shape {arr.shape}")
    n, d = arr.shape
    if n < 1:
        raise ValueError("a curve needs at least one vertex")
    if not 1 <= d <= MAX_DIM:
        raise ValueError(f"dimension must be in 1..{MAX_DIM}, got {d}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("curve coordinates must be finite")
    arr.flags.writeable = False
    return arr


def check_same_dim(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape[-1] != b.shape[-1]:
        raise DimensionMismatchError(f"dimension mismatch: {a.shape[-1]} vs {b.shape[-1]}")


def norm_of_diff(diff: np.ndarray, norm: Norm) -> np.ndarray:
    """Norm of difference vectors along the last axis."""
    d = diff.shape[-1]
    if norm is Norm.L2:
        acc = diff[..., 0] * diff[..., 0]
        for k in range(1, d):
            acc = acc + diff[..., k] * diff[..., k]
        return np.sqrt(acc)
    if norm is Norm.L1:
        acc = np.abs(diff[..., 0])
        for k in range(1, d):
            acc = acc + np.abs(diff[..., k])
        return acc
    acc = np.abs(diff[..., 0])
    for k in range(1, d):
        acc = np.maximum(acc, np.abs(diff[..., k]))
    return acc


def dist(p, q, norm: Norm | str = Norm.L2) -> float:
    """Distance between two points under ``norm``.

    >>> dist((0, 0), (3, 4))
    5.0
    >>> dist((0, 0), (3, 4), "linf")
    4.0
    """
    p = as_point(p)
    q = as_point(q)
    check_same_dim(p, q)
    return float(norm_of_diff(p - q, Norm.parse(norm)))


def pairwise(a: np.ndarray, b: np.ndarray, norm: Norm = Norm.L2) -> np.ndarray:
    """``(n, m)`` matrix of distances between the vertices of ``a`` and ``b``."""
    check_same_dim(a, b)
    return norm_of_diff(a[:, None, :] - b[None, :, :], norm)


def to_points(a: np.ndarray, idx: np.ndarray, b: np.ndarray, jdx: np.ndarray,
              norm: Norm) -> np.ndarray:
    """Distances ``dist(a[idx[k]], b[jdx[k]])`` for index arrays of equal length."""
    return norm_of_diff(a[idx] - b[jdx], norm)


def edge_lengths(c: np.ndarray, norm: Norm = Norm.L2) -> np.ndarray:
    return norm_of_diff(np.diff(c, axis=0), norm)


def check_backbone(c, c1: float, c2: float) -> bool:
    """True iff ``c`` satisfies the backbone properties under L2.

    Every pair of non-consecutive vertices is at distance at least 1 and
    every edge length lies in ``[c1, c2]``.
    """
    if not (c1 > 0 and c2 > 0):
        raise ValueError("c1 and c2 must be positive")
    c = as_curve(c)
    n = c.shape[0]
    if n == 1:
        return True
    lengths = edge_lengths(c)
    if np.any(lengths < c1) or np.any(lengths > c2):
        return False
    if n < 3:
        return True
    # Only pairs closer than 1 can fail, so probe a unit grid instead of all pairs.
    from .spatial_index import GridIndex

    grid = GridIndex(c, 1.0)
    i, j = grid.candidate_pairs(c, reach=1)
    keep = j >= i + 2
    i, j = i[keep], j[keep]
    return not np.any(to_points(c, i, c, j, Norm.L2) < 1.0)


def estimate_kappa(c, samples: int | None = None, seed: int = 0) -> float:
    """Vertex-restricted lower bound on the kappa-bounded constant of ``c``.

    For every vertex pair ``(x, y)`` and every vertex ``u`` strictly between
    them, ``u`` must lie in one of the two balls of radius ``kappa/2 * |xy|``
    around ``x`` and ``y``; the smallest admissible kappa for that triple is
    ``2 * min(|xu|, |yu|) / |xy|``.  The maximum over triples is returned,
    floored at 1.  Returns ``inf`` if a pair of coincident vertices encloses
    a vertex at positive distance.

    With ``samples`` set, only that many random pairs are checked.
    """
    c = as_curve(c)
    n = c.shape[0]
    if n < 2:
        raise ValueError("estimate_kappa needs at least two vertices")
    m = pairwise(c, c, Norm.L2)
    best = 1.0
    if samples is None:
        for s in range(n - 2):
            # rows t > s + 1, columns u in (s, t)
            block = np.minimum(m[s, s + 1:][None, :], m[s + 2:, s + 1:])
            t_idx = np.arange(s + 2, n)[:, None]
            u_idx = np.arange(s + 1, n)[None, :]
            block = np.where(u_idx < t_idx, block, 0.0)
            worst = block.max(axis=1)
            span = m[s, s + 2:]
            best = max(best, _ratio_max(worst, span))
        return best
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        s, t = sorted(rng.choice(n, size=2, replace=False))
        if t - s < 2:
            continue
        worst = np.minimum(m[s, s + 1:t], m[t, s + 1:t]).max()
        best = max(best, _ratio_max(np.array([worst]), np.array([m[s, t]])))
    return best


def _ratio_max(worst: np.ndarray, span: np.ndarray) -> float:
    if np.any((span == 0) & (worst > 0)):
        return math.inf
    ok = span > 0
    if not np.any(ok):
        return 1.0
    return float(np.max(2.0 * worst[ok] / span[ok]))
