"""Real pole placement maximizing the evenness factor F1.

The objective is log F1 = Σ_{i<j} log|λ_j - λ_i| - log(1 - λ_iλ_j), so
large pole counts do not underflow. Moving one pole with the others fixed,
the objective is -inf at every other pole, so the line search runs
golden-section separately in each gap between neighbours.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .factors import evenness_factor
from .geometry import PlotData
from .model import CtrlVolError

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class SearchResult:
    poles: tuple
    f1: float
    history: tuple  # best log F1 after each sweep of the winning start
    starts: int


def log_evenness(poles: Sequence[float]) -> float:
    p = np.asarray(poles, dtype=float)
    total = 0.0
    for i in range(len(p)):
        d = p[i + 1:] - p[i]
        if np.any(d == 0.0):
            return -math.inf
        total += float(np.sum(np.log(np.abs(d)) - np.log1p(-p[i] * p[i + 1:])))
    return total


def _coordinate_objective(x: float, others: np.ndarray) -> float:
    d = np.abs(others - x)
    if np.any(d == 0.0):
        return -math.inf
    return float(np.sum(np.log(d) - np.log1p(-x * others)))


def golden_max(f, a: float, b: float, xtol: float = 1e-12, max_iter: int = 200):
    """Golden-section maximization of ``f`` on [a, b]; returns (x, f(x))."""
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= xtol * max(1.0, abs(a) + abs(b)):
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    return (c, fc) if fc >= fd else (d, fd)


def _best_position(others: np.ndarray, lo: float, hi: float):
    """Best placement of one pole in [lo, hi] given the other poles."""
    f = lambda x: _coordinate_objective(x, others)
    cuts = np.unique(np.concatenate([[lo, hi], others[(others > lo) & (others < hi)]]))
    best = max(((lo, f(lo)), (hi, f(hi))), key=lambda t: t[1])
    for a, b in zip(cuts[:-1], cuts[1:]):
        x, fx = golden_max(f, a, b)
        if fx > best[1]:
            best = (x, fx)
    return best


def _ascent(x0, fixed, lo, hi, tol, xtol, max_sweeps):
    x = x0.copy()
    cur = log_evenness(np.concatenate([fixed, x]))
    history = [cur]
    for _ in range(max_sweeps):
        before, start = cur, x.copy()
        for k in range(len(x)):
            others = np.concatenate([fixed, np.delete(x, k)])
            pos, _ = _best_position(others, lo, hi)
            trial = x.copy()
            trial[k] = pos
            val = log_evenness(np.concatenate([fixed, trial]))
            if val > cur:
                x, cur = trial, val
        history.append(cur)
        # F1 is flat at its maximum, so a small gain alone leaves the poles
        # ~sqrt(tol) away; also require the sweep to have stopped moving them
        f_gain = math.exp(cur) - (math.exp(before) if before > -math.inf else 0.0)
        if f_gain < tol and np.max(np.abs(x - start)) < xtol:
            break
    return x, cur, history


def maximize_evenness(
    n: int,
    bounds: tuple = (-0.9, 0.9),
    fixed: Optional[Sequence[float]] = None,
    seed: int = 42,
    starts: int = 20,
    tol: float = 1e-10,
    xtol: float = 1e-9,
    max_sweeps: int = 5000,
) -> SearchResult:
    """Search n real poles in the closed interval ``bounds`` maximizing F1.

    ``fixed`` poles are kept in place and count toward n. Multi-start
    coordinate ascent from stratified random seeds; the winner is chosen by
    (F1, then lexicographic pole order), so the result depends only on
    ``seed``.

    Raises
    ------
    CtrlVolError
        Bad bounds, more fixed poles than n, fixed poles outside the bounds
        or repeated.
    """
    lo, hi = (float(b) for b in bounds)
    if not (-1.0 < lo < hi < 1.0):
        raise CtrlVolError(f"bounds must satisfy -1 < lo < hi < 1, got {bounds}")
    if n < 1:
        raise CtrlVolError("need at least one pole")
    fixed_arr = np.asarray(sorted(fixed or []), dtype=float)
    if len(fixed_arr) > n:
        raise CtrlVolError("more fixed poles than n")
    if np.any((fixed_arr < lo) | (fixed_arr > hi)):
        raise CtrlVolError("fixed poles must lie inside the bounds")
    if len(np.unique(fixed_arr)) != len(fixed_arr):
        raise CtrlVolError("fixed poles contain duplicates")
    free = n - len(fixed_arr)
    if free == 0:
        poles = tuple(float(v) for v in fixed_arr)
        return SearchResult(poles, math.exp(log_evenness(poles)), (log_evenness(poles),), 0)

    rng = np.random.default_rng(seed)
    width = (hi - lo) / free
    candidates = []
    for _ in range(max(1, starts)):
        # one uniform draw per stratum of [lo, hi]
        x0 = lo + width * (np.arange(free) + rng.random(free))
        x, val, hist = _ascent(x0, fixed_arr, lo, hi, tol, xtol, max_sweeps)
        poles = tuple(sorted(float(v) for v in np.concatenate([fixed_arr, x])))
        candidates.append((val, poles, tuple(hist)))

    best_val = max(c[0] for c in candidates)
    # ties within rounding: smallest lexicographic pole tuple
    tied = [c for c in candidates if c[0] >= best_val - 1e-12 * max(1.0, abs(best_val))]
    val, poles, hist = min(tied, key=lambda c: c[1])
    return SearchResult(poles, math.exp(val), hist, len(candidates))


def evenness_landscape(lambdas: Sequence[complex], index: int, grid: int) -> PlotData:
    """F1 as pole ``index`` sweeps an open grid over (-1, 1)."""
    lam = np.asarray(lambdas, dtype=complex).copy()
    if not 0 <= index < len(lam):
        raise CtrlVolError(f"index {index} out of range")
    if grid < 1:
        raise CtrlVolError("grid must be positive")
    xs = np.linspace(-1.0, 1.0, grid + 2)[1:-1]
    pts = np.empty((grid, 2))
    for k, x in enumerate(xs):
        lam[index] = x
        pts[k] = (x, evenness_factor(lam))
    return PlotData(2, pts, f"F1 sweep of pole {index}", (index,), header=("pole", "F1"))
