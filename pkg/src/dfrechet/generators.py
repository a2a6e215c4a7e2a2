"""Seeded synthetic curves for the specialised algorithms and the benchmarks."""
from __future__ import annotations

import math

import numpy as np

from .errors import GenerationError
from .geometry import as_curve, check_backbone

_MAX_RESTARTS = 200
_MAX_STEP_TRIES = 50
# cos 60 deg: headings stay within 60 degrees of +x
_MIN_FORWARD = 0.5


def _unit(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v)


def _too_close(cells: dict, p: np.ndarray, skip: int) -> bool:
    key = np.floor(p).astype(np.int64)
    for off in np.ndindex(*(3,) * len(p)):
        for j, q in cells.get(tuple(key + np.asarray(off) - 1), ()):
            if j != skip and np.sum((p - q) ** 2) < 1.0:
                return True
    return False


def generate_backbone(n: int, c1: float = 0.5, c2: float = 2.0, seed: int = 0,
                      dim: int = 2) -> np.ndarray:
    """Random chain with edge lengths in ``[c1, c2]`` and non-consecutive vertices >= 1 apart.

    A persistent random walk drifting along +x; each step is resampled
    until it keeps unit clearance from every earlier vertex but its
    predecessor, and the walk restarts if a step cannot be placed.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if not 0 < c1 <= c2:
        raise ValueError("need 0 < c1 <= c2")
    if dim < 2:
        raise ValueError("backbone curves need dim >= 2")
    rng = np.random.default_rng(seed)
    for _ in range(_MAX_RESTARTS):
        pts = [np.zeros(dim)]
        cells: dict[tuple, list] = {tuple(np.zeros(dim, np.int64)): [(0, pts[0])]}
        heading = np.eye(dim)[0]
        ok = True
        for i in range(1, n):
            for _ in range(_MAX_STEP_TRIES):
                d = _unit(heading + 0.8 * rng.standard_normal(dim))
                if d[0] < _MIN_FORWARD:
                    continue
                p = pts[-1] + rng.uniform(c1, c2) * d
                if not _too_close(cells, p, i - 1):
                    break
            else:
                ok = False
                break
            heading = d
            pts.append(p)
            cells.setdefault(tuple(np.floor(p).astype(np.int64)), []).append((i, p))
        if ok:
            c = as_curve(np.array(pts))
            if check_backbone(c, c1, c2):
                return c
    raise GenerationError(f"no backbone chain with n={n}, c1={c1}, c2={c2} after "
                          f"{_MAX_RESTARTS} attempts")


def generate_backbone_pair(n: int, m: int | None = None, c1: float = 0.5, c2: float = 2.0,
                           seed: int = 0, noise: float = 0.3, offset: float = 0.5,
                           dim: int = 2) -> tuple[np.ndarray, np.ndarray]:
    """Two backbone curves that follow each other closely.

    The second curve resamples the first at ``m`` points evenly spaced by
    arc length, then is shifted by ``offset`` and jittered.  Every edge of
    the first curve heads within 60 degrees of +x, so a spacing ``s``
    between ``max(1, 2 c1)`` and ``c2`` gives chords in ``[s / 2, s]`` and
    keeps non-consecutive vertices at least ``s`` apart.  Jitter that
    breaks the backbone properties is redrawn smaller, falling back to the
    bare shift.
    """
    m = n if m is None else m
    if m < 1:
        raise ValueError("m must be positive")
    rng = np.random.default_rng([seed, 1])
    # short chains are often too short for m well spaced samples: redraw the chain
    for attempt in range(_MAX_RESTARTS):
        a = generate_backbone(n, c1, c2, seed if attempt == 0 else [seed, 2, attempt], dim)
        base = _resample(a, m, c1, c2)
        if base is not None:
            break
    else:
        raise GenerationError(f"cannot resample a backbone chain of {n} vertices to {m}")
    base = base + _unit(rng.standard_normal(dim)) * offset
    scale = noise
    for attempt in range(40):
        if attempt % 10 == 9:
            scale /= 2.0
        cand = as_curve(base + scale * rng.standard_normal(base.shape))
        if check_backbone(cand, c1, c2):
            return a, cand
    b = as_curve(base)
    if not check_backbone(b, c1, c2):
        raise GenerationError("resampled curve is not a backbone curve")
    return a, b


def _resample(c: np.ndarray, m: int, c1: float, c2: float) -> np.ndarray | None:
    if m == 1:
        return c[:1].copy()
    seg = np.linalg.norm(np.diff(c, axis=0), axis=1)
    arc = np.concatenate([[0.0], np.cumsum(seg)])
    spacing = arc[-1] / (m - 1)
    if not max(1.0, 2.0 * c1) <= spacing <= c2:
        return None
    t = np.minimum(np.arange(m) * spacing, arc[-1])
    k = np.clip(np.searchsorted(arc, t, side="right") - 1, 0, len(seg) - 1)
    frac = ((t - arc[k]) / seg[k])[:, None]
    out = c[k] + frac * (c[k + 1] - c[k])
    out[-1] = c[-1]
    return out


def generate_kbounded(n: int, kappa: float, seed: int = 0, dim: int = 2,
                      scale: float = 10.0) -> np.ndarray:
    """Curve whose vertex kappa is at most ``kappa``.

    Below sqrt(2) the vertices are sorted samples of one segment (kappa 1).
    Otherwise the curve is a staircase increasing in every coordinate: the
    part between two vertices stays in their bounding box, and every point
    of that box is within ``|xy| / sqrt(2)`` of ``x`` or ``y``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if not kappa >= 1:
        raise ValueError("kappa must be at least 1")
    rng = np.random.default_rng(seed)
    start = rng.uniform(-scale, scale, dim)
    if kappa < math.sqrt(2):
        direction = _unit(rng.standard_normal(dim))
        t = np.sort(rng.uniform(0.0, scale, n))
        return as_curve(start + t[:, None] * direction)
    # one coordinate moves per step, by a positive amount
    axis = rng.integers(0, dim, n - 1)
    steps = np.zeros((n - 1, dim))
    steps[np.arange(n - 1), axis] = rng.uniform(0.1, 1.0, n - 1) * scale / max(n - 1, 1) * dim
    return as_curve(np.vstack([start, start + np.cumsum(steps, axis=0)]))


def generate_lattice_sigma(n: int) -> tuple[np.ndarray, float]:
    """Boustrophedon walk through the ``s x s x s`` integer lattice, ``s**3 == n``.

    Returns the curve and the suggested threshold ``s / 2``.
    """
    s = round(n ** (1.0 / 3.0))
    if s < 1 or s ** 3 != n:
        raise ValueError(f"n must be a perfect cube, got {n}")
    if n < 27:
        raise ValueError("n must be at least 27")
    layer = []
    for y in range(s):
        xs = range(s) if y % 2 == 0 else range(s - 1, -1, -1)
        layer.extend((x, y) for x in xs)
    pts = []
    for z in range(s):
        seq = layer if z % 2 == 0 else layer[::-1]
        pts.extend((x, y, z) for x, y in seq)
    return as_curve(np.array(pts, dtype=np.float64)), s / 2.0


def lattice_center(n: int, copies: int = 1) -> np.ndarray:
    """The centre of the lattice of :func:`generate_lattice_sigma`, repeated ``copies`` times."""
    s = round(n ** (1.0 / 3.0))
    return as_curve(np.full((copies, 3), (s - 1) / 2.0))
