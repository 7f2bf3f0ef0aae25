"""Closed-form determinant and volume of the infinite-horizon ellipsoid.

Every product is accumulated as a sum of logarithms and only exponentiated
when the report is built, so n up to ~50 neither underflows nor overflows.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .model import (
    CtrlVolError,
    DiagonalForm,
    LdtSystem,
    MultiInputError,
    Spectrum,
    UnstableError,
)

Path = Literal["diagonal", "general", "complex"]
_ZERO_B = 1e-13


def log_cauchy_determinant(lambdas) -> float:
    """log of det[1/(1 - λ_iλ_j)] via the product identity; -inf if degenerate."""
    lam = np.asarray(lambdas, dtype=float).ravel()
    if np.iscomplexobj(lambdas) and np.any(np.imag(lambdas) != 0):
        raise CtrlVolError("cauchy_determinant takes real eigenvalues")
    if np.any(np.abs(lam) >= 1.0):
        raise UnstableError("all eigenvalues must lie in (-1, 1)")
    total = -float(np.sum(np.log1p(-lam * lam)))
    for i in range(len(lam)):
        for j in range(i + 1, len(lam)):
            gap = lam[j] - lam[i]
            if gap == 0.0:
                return -math.inf
            total += 2.0 * (math.log(abs(gap)) - math.log1p(-lam[i] * lam[j]))
    return total


def cauchy_determinant(lambdas) -> float:
    """det of the matrix with entries 1/(1 - λ_iλ_j), λ_i in (-1, 1).

    Evaluated as

        Π_{i<j} ((λ_j - λ_i)/(1 - λ_iλ_j))² · Π_i 1/(1 - λ_i²)

    and never through a dense factorization. Repeated eigenvalues give an
    exact 0.0.

    >>> round(cauchy_determinant([0.6, 0.8]), 5)
    0.642
    """
    logdet = log_cauchy_determinant(lambdas)
    return 0.0 if logdet == -math.inf else math.exp(logdet)


def hypersphere_coefficient(n: int) -> float:
    """Volume of the unit n-ball, π^{n/2} / Γ(n/2 + 1)."""
    if n < 1:
        raise ValueError("dimension must be >= 1")
    return math.exp(0.5 * n * math.log(math.pi) - math.lgamma(0.5 * n + 1.0))


@dataclass(frozen=True)
class VolumeReport:
    det_g_infinity: float
    volume: float
    f1: float
    per_axis: tuple
    det_p_magnitude: float
    path: Path
    hypersphere_coeff: float
    uncontrollable: bool = False
    degenerate: bool = False
    log_volume: float = -math.inf


def _report(lam: np.ndarray, bhat: np.ndarray, det_p_mag: float, path: Path) -> VolumeReport:
    n = len(lam)
    if np.any(np.abs(lam) >= 1.0):
        raise UnstableError("infinite-horizon volume needs all |λ_i| < 1")
    H = hypersphere_coefficient(n)
    one_minus = 1.0 - np.abs(lam) ** 2
    abs_b = np.abs(bhat)
    per_axis = tuple(float(v) for v in abs_b / np.sqrt(one_minus))

    log_pairs = 0.0
    degenerate = False
    for i in range(n):
        for j in range(i + 1, n):
            gap = abs(lam[j] - lam[i])
            if gap == 0.0:
                degenerate = True
                continue
            log_pairs += math.log(gap) - math.log(abs(1.0 - lam[i] * np.conj(lam[j])))
    f1 = 0.0 if degenerate else math.exp(log_pairs)

    uncontrollable = bool(np.any(abs_b <= _ZERO_B * max(abs_b.max(), np.finfo(float).tiny)))
    if degenerate or uncontrollable or det_p_mag == 0.0:
        return VolumeReport(0.0, 0.0, f1, per_axis, det_p_mag, path, H,
                            uncontrollable=uncontrollable, degenerate=degenerate)

    log_half_det = (
        math.log(det_p_mag)
        + log_pairs
        + float(np.sum(np.log(abs_b)))
        - 0.5 * float(np.sum(np.log(one_minus)))
    )
    return VolumeReport(
        det_g_infinity=math.exp(2.0 * log_half_det),
        volume=H * math.exp(log_half_det),
        f1=f1,
        per_axis=per_axis,
        det_p_magnitude=det_p_mag,
        path=path,
        hypersphere_coeff=H,
        log_volume=math.log(H) + log_half_det,
    )


def _require_real(diag: DiagonalForm):
    if not np.all(diag.lambdas.imag == 0.0):
        raise CtrlVolError("real-eigenvalue path called with complex eigenvalues; use volume_complex")


def volume_diagonal(diag: DiagonalForm) -> VolumeReport:
    """Volume of the ellipsoid of the diagonal pair (diag λ, b̂).

    det G_∞ = cauchy_determinant(λ) · Π b̂_i²  and  vol = H_n · sqrt(det G_∞).
    """
    _require_real(diag)
    return _report(diag.lambdas.real, diag.bhat, 1.0, "diagonal")


def _check_pair(sys: LdtSystem, spec: Spectrum, diag: DiagonalForm):
    if sys.r != 1:
        raise MultiInputError(f"analytic volume needs r = 1, got r = {sys.r}")
    if spec.n != sys.n or diag.n != sys.n:
        raise CtrlVolError("system, spectrum and diagonal form disagree on n")


def volume_general(sys: LdtSystem, spec: Spectrum, diag: DiagonalForm) -> VolumeReport:
    """Volume for a general real-spectrum system, |det P| included.

    The value does not depend on how the eigenvectors are scaled: any
    rescaling of P's columns is undone by the matching rows of P⁻¹ in b̂.
    """
    _check_pair(sys, spec, diag)
    _require_real(diag)
    return _report(diag.lambdas.real, diag.bhat, abs(spec.det_p), "general")


def volume_complex(sys: LdtSystem, spec: Spectrum, diag: DiagonalForm) -> VolumeReport:
    """Volume for spectra with conjugate pairs.

    Pair factors are |λ_j - λ_i| / |1 - λ_i conj(λ_j)| and axis factors
    |b̂_i| / sqrt(1 - |λ_i|²), the determinant of the Hermitian eigen-space
    Grammian. On a real spectrum this is the same computation as
    ``volume_general``.
    """
    _check_pair(sys, spec, diag)
    return _report(diag.lambdas, diag.bhat, abs(spec.det_p), "complex")


def analytic_volume(sys: LdtSystem, spec: Spectrum, diag: DiagonalForm) -> VolumeReport:
    """Dispatch to the real or complex path depending on the spectrum."""
    if np.all(diag.lambdas.imag == 0.0):
        return volume_general(sys, spec, diag)
    return volume_complex(sys, spec, diag)
