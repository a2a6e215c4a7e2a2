"""Approximate optimization driven by an approximate (fuzzy) decision procedure.

A decider is any callable ``decide(delta, accuracy) -> bool`` (``True`` means
"yes, the optimum is at most delta").  It must honour the fuzzy contract

    yes  =>  opt <= (1 + accuracy) * delta
    no   =>  opt >= (1 - accuracy) * delta

and may answer either way when ``delta`` is within that band of the optimum.
:class:`SearchTrace` records every probe and raises
:class:`~dfrechet.errors.ContractViolation` as soon as the answers seen so far
cannot be explained by any single optimum.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import ContractViolation
from .geometry import Norm, as_curve
from .spatial_index import build_wspd, wspd_candidate_values

FuzzyDecider = Callable[[float, float], bool]

STAGE1_ACCURACY = 0.1
# consecutive-bracket ratio above which stage 1 keeps bisecting geometrically
MAX_BRACKET_RATIO = 1.4


@dataclass
class SearchTrace:
    probes: list[tuple[float, float, bool]] = field(default_factory=list)
    result: float | None = None
    lower: float = 0.0
    upper: float = math.inf

    def ask(self, decider: FuzzyDecider, delta: float, accuracy: float) -> bool:
        answer = bool(decider(delta, accuracy))
        self.probes.append((delta, accuracy, answer))
        if answer:
            self.upper = min(self.upper, (1.0 + accuracy) * delta)
        else:
            self.lower = max(self.lower, (1.0 - accuracy) * delta)
        if self.lower > self.upper * (1.0 + 1e-12):
            raise ContractViolation(
                f"decider answers are inconsistent: optimum must be >= {self.lower} "
                f"and <= {self.upper}")
        return answer

    @property
    def answers(self) -> list[bool]:
        return [p[2] for p in self.probes]


def bracket_from_candidates(candidates, decider: FuzzyDecider,
                            trace: SearchTrace | None = None) -> tuple[float, float]:
    """Bracket ``(a, b)`` with ``a <= opt <= b`` and ``b / a <= 1.54 / 0.9``.

    Binary search over the sorted candidates at accuracy 1/10 yields
    consecutive values ``x < y`` answered no / yes.  The contract then gives
    ``0.9 x <= opt <= 1.1 y``; while ``y / x`` exceeds 1.4 the gap is split
    at the geometric mean.  If the smallest candidate already answers yes
    (largest answers no) the missing side is taken as ``0.8 x`` (``1.4 x``),
    which assumes the optimum lies within the candidates' span.
    """
    trace = trace if trace is not None else SearchTrace()
    c = np.asarray(candidates, dtype=np.float64)
    if c.ndim != 1 or c.size == 0:
        raise ValueError("need a nonempty 1-d array of candidates")
    if np.any(c <= 0):
        raise ValueError("candidates must be positive")
    c = np.unique(c)
    acc = STAGE1_ACCURACY
    if trace.ask(decider, float(c[0]), acc):
        x, y = 0.8 * float(c[0]), float(c[0])
    elif not trace.ask(decider, float(c[-1]), acc):
        x, y = float(c[-1]), 1.4 * float(c[-1])
    else:
        lo, hi = 0, len(c) - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if trace.ask(decider, float(c[mid]), acc):
                hi = mid
            else:
                lo = mid
        x, y = float(c[lo]), float(c[hi])
    while y > MAX_BRACKET_RATIO * x:
        z = math.sqrt(x * y)
        if trace.ask(decider, z, acc):
            y = z
        else:
            x = z
    return (1.0 - acc) * x, (1.0 + acc) * y


def refine(a: float, b: float, decider: FuzzyDecider, eps: float,
           trace: SearchTrace | None = None) -> float:
    """Bisection inside a bracket ``a <= opt <= b`` down to an eps-approximation.

    Keeps ``k_lo`` answered no and ``k_hi`` answered yes at accuracy eps/4
    (the initial ends ``a / (1 + eps)`` and ``b / (1 - eps)`` satisfy this
    by the contract without being asked) until ``k_hi - k_lo <= (b - a) eps / 3``.
    """
    trace = trace if trace is not None else SearchTrace()
    k_lo = a / (1.0 + eps)
    k_hi = b / (1.0 - eps)
    threshold = (b - a) * eps / 3.0
    acc = eps / 4.0
    while k_hi - k_lo > threshold:
        mid = 0.5 * (k_lo + k_hi)
        if mid <= k_lo or mid >= k_hi:
            break  # bracket exhausted floating-point resolution
        if trace.ask(decider, mid, acc):
            k_hi = mid
        else:
            k_lo = mid
    return k_lo


def fuzzy_optimize(points, decider: FuzzyDecider, eps: float, norm: Norm | str = Norm.L2,
                   trace: SearchTrace | None = None) -> float:
    """eps-approximate an optimum known to be a positive distance between two of ``points``."""
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    norm = Norm.parse(norm)
    pts = np.unique(as_curve(points), axis=0)
    if pts.shape[0] < 2:
        raise ValueError("need at least two distinct points")
    trace = trace if trace is not None else SearchTrace()
    candidates = wspd_candidate_values(build_wspd(pts, 10.0, norm), pts, norm)
    a, b = bracket_from_candidates(candidates, decider, trace)
    trace.result = refine(a, b, decider, eps, trace)
    return trace.result
