"""Independent numerical referees.

Nothing here may import the closed-form modules; the referees only use
dense linear algebra and iteration on the original system.
"""
from __future__ import annotations

import math
import warnings

import numpy as np
import scipy.linalg

from ..model import ConvergenceError, GrammianResult, LdtSystem, validate_system

MAX_DOUBLINGS = 64


def log_abs_determinant(M) -> tuple[float, float]:
    """(sign, log|det M|) from an LU factorization with partial pivoting.

    ``sign`` is ±1 (or a unit complex number); a singular matrix gives
    (0.0, -inf).
    """
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("determinant needs a square matrix")
    if M.shape[0] == 0:
        return 1.0, 0.0
    with warnings.catch_warnings():
        # exact singularity is reported through the zero pivot below
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(M, check_finite=True)
    diag = np.diag(lu)
    if np.any(diag == 0):
        return 0.0, -math.inf
    swaps = int(np.sum(piv != np.arange(len(piv))))
    sign = (-1.0) ** swaps * np.prod(diag / np.abs(diag))
    if not np.iscomplexobj(M):
        sign = float(np.real(sign))
    return sign, float(np.sum(np.log(np.abs(diag))))


def dense_determinant(M) -> float:
    sign, logabs = log_abs_determinant(M)
    if logabs == -math.inf:
        return 0.0
    return sign * math.exp(logabs)


def cauchy_matrix(lambdas) -> np.ndarray:
    """The matrix [1 / (1 - λ_i λ_j)]."""
    lam = np.asarray(lambdas, dtype=float).ravel()
    return 1.0 / (1.0 - np.outer(lam, lam))


def stein_doubling(A: np.ndarray, Q: np.ndarray, rtol: float = 1e-14):
    """Solve G = A G Aᵀ + Q by Smith doubling.

    Returns ``(G, update_norms)``; iteration k adds A^{2^k} G (A^{2^k})ᵀ,
    which doubles the number of series terms each step.
    """
    G = np.array(Q, dtype=float)
    Ak = np.array(A, dtype=float)
    norms = []
    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(MAX_DOUBLINGS):
            upd = Ak @ G @ Ak.T
            G = G + upd
            Ak = Ak @ Ak
            un = float(np.linalg.norm(upd))
            norms.append(un)
            if not (np.all(np.isfinite(G)) and np.isfinite(un)):
                raise ConvergenceError("Stein iteration diverged (spectral radius >= 1?)")
            if un < rtol * np.linalg.norm(G):
                return (G + G.T) / 2, norms
    raise ConvergenceError(f"Stein iteration did not converge in {MAX_DOUBLINGS} doublings")


def stein_solve(sys: LdtSystem) -> GrammianResult:
    """Infinite-horizon Grammian as the fixed point of G = A G Aᵀ + B Bᵀ."""
    validate_system(sys)
    rho = float(np.max(np.abs(np.linalg.eigvals(sys.A))))
    if rho >= 1.0:
        raise ConvergenceError(f"spectral radius {rho:.6g} >= 1: no infinite Grammian")
    G, _ = stein_doubling(sys.A, sys.B @ sys.B.T)
    return GrammianResult(G, horizon=None, basis="original")


def series_reference(sys: LdtSystem, N: int) -> np.ndarray:
    """Plain left-to-right partial sum Σ_{i<N} AⁱB(AⁱB)ᵀ, no compensation."""
    G = np.zeros((sys.n, sys.n))
    term = np.array(sys.B, dtype=float)
    for _ in range(N):
        G += term @ term.T
        term = sys.A @ term
    return G
