"""Finite- and infinite-horizon controllability Grammians.

Eigen-space Grammians use the Hermitian pairing

    Ḡ_ij = b̂_i conj(b̂_j) (1 - (λ_i conj λ_j)^N) / (1 - λ_i conj λ_j),

which for real spectra is the textbook b̂_i b̂_j (1 - (λ_iλ_j)^N)/(1 - λ_iλ_j).
"""
from __future__ import annotations

from typing import Literal

import numpy as np

from .model import (
    DiagonalForm,
    DimensionError,
    GrammianOverflowError,
    GrammianResult,
    LdtSystem,
    ResonanceError,
    Spectrum,
    UnstableError,
    validate_system,
)

HORIZON_CAP = 10**6
COND_WARN = 1e12


def _kahan_series(A: np.ndarray, B: np.ndarray, N: int) -> np.ndarray:
    n = A.shape[0]
    total = np.zeros((n, n))
    comp = np.zeros((n, n))
    term = B.copy()
    for _ in range(N):
        y = term @ term.T - comp
        t = total + y
        comp = (t - total) - y
        total = t
        term = A @ term
    return total


def _doubling_series(A: np.ndarray, B: np.ndarray, N: int) -> np.ndarray:
    # G_{a+b} = G_a + A^a G_b A^aᵀ, driven by the binary expansion of N
    G_pow = B @ B.T  # G_{2^k}
    A_pow = A.copy()  # A^{2^k}
    G = None
    shift = None  # A^{(bits consumed so far)}
    while N:
        if N & 1:
            if G is None:
                G, shift = G_pow.copy(), A_pow.copy()
            else:
                G = G + shift @ G_pow @ shift.T
                shift = shift @ A_pow
        N >>= 1
        if N:
            G_pow = G_pow + A_pow @ G_pow @ A_pow.T
            A_pow = A_pow @ A_pow
    return G


def finite_series(sys: LdtSystem, N: int) -> GrammianResult:
    """G_N = Σ_{i<N} AⁱB (AⁱB)ᵀ in the original basis.

    Terms are accumulated with Kahan compensation. Horizons beyond
    ``HORIZON_CAP`` are evaluated exactly by binary doubling instead.

    Raises
    ------
    GrammianOverflowError
        If the entries leave the double range (unstable A, large N).
    """
    validate_system(sys)
    if int(N) != N or N < 1:
        raise DimensionError(f"horizon must be an integer >= 1, got {N!r}")
    N = int(N)
    with np.errstate(over="ignore", invalid="ignore"):
        if N > HORIZON_CAP:
            G = _doubling_series(sys.A, sys.B, N)
        else:
            G = _kahan_series(sys.A, sys.B, N)
    if not np.all(np.isfinite(G)):
        raise GrammianOverflowError(f"Grammian overflows at horizon N={N}")
    return GrammianResult((G + G.T) / 2, horizon=N, basis="original")


def _products(diag: DiagonalForm):
    lam = diag.lambdas
    return np.outer(lam, lam.conj()), np.outer(diag.bhat, diag.bhat.conj())


def _hermitian(M: np.ndarray) -> np.ndarray:
    M = (M + M.conj().T) / 2
    return M.real if np.all(M.imag == 0.0) else M


def closed_form_finite(diag: DiagonalForm, N: int) -> GrammianResult:
    """Eigen-space G_N from the geometric-sum entries."""
    if int(N) != N or N < 1:
        raise DimensionError(f"horizon must be an integer >= 1, got {N!r}")
    N = int(N)
    lam_prod, b_prod = _products(diag)
    denom = 1.0 - lam_prod
    if np.any(np.abs(denom) <= 1e-14):
        raise ResonanceError("λ_i·conj(λ_j) = 1 for some pair; use finite_series")
    with np.errstate(over="ignore", invalid="ignore"):
        G = b_prod * (1.0 - lam_prod**N) / denom
    if not np.all(np.isfinite(G)):
        raise GrammianOverflowError(f"closed form overflows at horizon N={N}")
    return GrammianResult(_hermitian(G), horizon=N, basis="eigen")


def infinite_grammian(diag: DiagonalForm) -> GrammianResult:
    """Eigen-space G_∞ with entries b̂_i conj(b̂_j) / (1 - λ_i conj λ_j)."""
    if np.any(np.abs(diag.lambdas) >= 1.0):
        raise UnstableError("infinite Grammian needs all |λ_i| < 1")
    lam_prod, b_prod = _products(diag)
    return GrammianResult(_hermitian(b_prod / (1.0 - lam_prod)), horizon=None, basis="eigen")


def transform_grammian(
    G: GrammianResult,
    spec: Spectrum,
    direction: Literal["toEigen", "toOriginal"],
) -> GrammianResult:
    """Change basis with the eigenvector matrix P.

    ``toEigen`` gives P⁻¹ G P⁻ᴴ, ``toOriginal`` gives P Ḡ Pᴴ. A condition
    number of P above 1e12 is reported in ``warnings``; the result is still
    returned.
    """
    P = spec.right.real if np.all(spec.right.imag == 0.0) else spec.right
    warnings = list(G.warnings)
    cond = np.linalg.cond(P)
    if not np.isfinite(cond) or cond > COND_WARN:
        warnings.append(f"ill-conditioned eigenvector matrix (cond {cond:.3g})")
    if direction == "toEigen":
        if G.basis != "original":
            raise DimensionError("toEigen expects an original-basis Grammian")
        X = np.linalg.solve(P, G.G)
        M = np.linalg.solve(P, X.conj().T)
        basis = "eigen"
    elif direction == "toOriginal":
        if G.basis != "eigen":
            raise DimensionError("toOriginal expects an eigen-basis Grammian")
        M = P @ G.G @ P.conj().T
        scale = max(np.abs(M).max(), np.finfo(float).tiny)
        if np.iscomplexobj(M) and np.abs(M.imag).max() > 1e-8 * scale:
            warnings.append("original-basis Grammian has a non-negligible imaginary part")
        else:
            M = M.real
        basis = "original"
    else:
        raise ValueError(f"unknown direction {direction!r}")
    return GrammianResult(_hermitian(M), horizon=G.horizon, basis=basis, warnings=tuple(warnings))

