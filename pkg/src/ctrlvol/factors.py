"""Shape factors deconstructed from the volume formula.

The pairwise factor is the pseudo-hyperbolic distance of the unit disk,
|a - b| / |1 - a·conj(b)|, which lies in [0, 1) for |a|, |b| < 1. Its
product over all pairs is the evenness factor F1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .model import DiagonalForm


def pairwise_factor(li: complex, lj: complex) -> float:
    li, lj = complex(li), complex(lj)
    return abs(lj - li) / abs(1.0 - li * lj.conjugate())


def pairwise_table(lambdas) -> np.ndarray:
    """Symmetric n×n table of pairwise factors with ones on the diagonal."""
    lam = np.asarray(lambdas, dtype=complex).ravel()
    T = np.abs(lam[None, :] - lam[:, None]) / np.abs(1.0 - lam[:, None] * lam.conj()[None, :])
    T = (T + T.T) / 2
    np.fill_diagonal(T, 1.0)
    return T


def evenness_factor(lambdas) -> float:
    """F1, the product of pairwise factors over i < j (1 for a single pole)."""
    lam = np.asarray(lambdas, dtype=complex).ravel()
    log_f = 0.0
    for i in range(len(lam)):
        for j in range(i + 1, len(lam)):
            f = pairwise_factor(lam[i], lam[j])
            if f == 0.0:
                return 0.0
            log_f += math.log(f)
    return math.exp(log_f)


def axis_half_length(lam: complex, bhat_entry: complex) -> float:
    """F_2 = |b̂| / sqrt(1 - |λ|²), half the box side along one eigen-axis."""
    return abs(bhat_entry) / math.sqrt(1.0 - abs(lam) ** 2)


def conjugate_pair_factor(lam: complex) -> float:
    """Section factor 2·Im λ / (1 - |λ|²) of a conjugate pair (λ, conj λ).

    This is the non-conjugated Möbius form and can exceed 1; it is not the
    entry of :func:`pairwise_table` for the pair.
    """
    lam = complex(lam)
    if lam.imag < 0:
        raise ValueError("pass the member of the pair with Im(λ) >= 0")
    if abs(lam) >= 1.0:
        raise ValueError("|λ| must be < 1")
    return 2.0 * lam.imag / (1.0 - abs(lam) ** 2)


@dataclass(frozen=True)
class EvennessReport:
    f1: float
    worst_pair: Optional[tuple]
    min_pairwise: float
    per_axis: tuple
    pairwise: np.ndarray
    conjugate_pairs: tuple = ()


def build_evenness_report(diag: DiagonalForm) -> EvennessReport:
    lam = diag.lambdas
    n = len(lam)
    table = pairwise_table(lam)
    table.setflags(write=False)
    worst, worst_val = None, math.inf
    for i in range(n):
        for j in range(i + 1, n):
            if table[i, j] < worst_val:
                worst, worst_val = (i, j), float(table[i, j])
    pairs = []
    for i in range(n):
        if lam[i].imag > 0:
            # conjugate partner: closest eigenvalue to conj(λ_i)
            j = int(np.argmin(np.abs(lam - np.conj(lam[i]))))
            pairs.append(((min(i, j), max(i, j)), conjugate_pair_factor(lam[i])))
    return EvennessReport(
        f1=evenness_factor(lam),
        worst_pair=worst,
        min_pairwise=worst_val if worst is not None else math.nan,
        per_axis=tuple(axis_half_length(l, b) for l, b in zip(lam, diag.bhat)),
        pairwise=table,
        conjugate_pairs=tuple(pairs),
    )
