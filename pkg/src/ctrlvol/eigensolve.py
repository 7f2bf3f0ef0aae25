"""Eigen-decomposition of A and the single-input diagonal canonical form."""
from __future__ import annotations

import numpy as np

from .model import (
    DiagonalForm,
    EigenConvergenceError,
    LdtSystem,
    MultiInputError,
    RepeatedEigenvalueError,
    Spectrum,
    distinct_threshold,
    min_pairwise_distance,
    validate_system,
)

_TIE = 1e-12


def _sort_order(w: np.ndarray) -> np.ndarray:
    return np.lexsort((w.imag, w.real))


def _normalize(v: np.ndarray) -> np.ndarray:
    """Unit 2-norm, largest-magnitude entry made real and positive.

    Among entries whose magnitude ties with the maximum (to 1e-12 relative),
    the first one wins, so the choice does not depend on rounding noise.
    """
    v = v / np.linalg.norm(v)
    mag = np.abs(v)
    k = int(np.flatnonzero(mag >= mag.max() * (1 - _TIE))[0])
    return v * (abs(v[k]) / v[k])


def _inverse_step(M: np.ndarray, lam: complex, v: np.ndarray) -> np.ndarray:
    n = M.shape[0]
    shift = M - lam * np.eye(n)
    try:
        y = np.linalg.solve(shift, v)
    except np.linalg.LinAlgError:
        eps = np.finfo(float).eps * max(np.linalg.norm(M, 1), 1.0)
        y = np.linalg.solve(shift - eps * np.eye(n), v)
    if not np.all(np.isfinite(y)) or np.linalg.norm(y) == 0:
        return v
    return y / np.linalg.norm(y)


def _pair(targets: np.ndarray, candidates: np.ndarray) -> list[int]:
    """Greedy nearest-match of each target to an unused candidate index."""
    used: set[int] = set()
    out = []
    for t in targets:
        order = np.argsort(np.abs(candidates - t), kind="stable")
        k = next(int(j) for j in order if int(j) not in used)
        used.add(k)
        out.append(k)
    return out


def decompose(sys: LdtSystem) -> Spectrum:
    """Eigenvalues with unit right/left eigenvectors of ``sys.A``.

    Eigenvalues come back sorted by (real, imag) ascending, so conjugate
    pairs sit next to each other. Each eigenpair gets one inverse-iteration
    step on both sides followed by a two-sided Rayleigh quotient.

    Raises
    ------
    RepeatedEigenvalueError
        If two eigenvalues are closer than 1e-8 * max(1, spectral radius).
    EigenConvergenceError
        If LAPACK fails to converge.
    """
    validate_system(sys)
    A = sys.A
    n = sys.n
    try:
        w, V = np.linalg.eig(A)
        wl, U = np.linalg.eig(A.T)
    except np.linalg.LinAlgError as exc:
        raise EigenConvergenceError(str(exc)) from None
    w = w.astype(complex)
    order = _sort_order(w)
    w, V = w[order], V[:, order].astype(complex)
    U = U[:, _pair(w, wl.astype(complex))].astype(complex)

    sep = min_pairwise_distance(w)
    if sep <= distinct_threshold(w):
        raise RepeatedEigenvalueError(
            f"eigenvalues not distinct (min separation {sep:.3g})"
        )

    lams = np.empty(n, dtype=complex)
    P = np.empty((n, n), dtype=complex)
    Q = np.empty((n, n), dtype=complex)
    done = np.zeros(n, dtype=bool)
    for i in range(n):
        if done[i]:
            continue
        lam = w[i]
        real = lam.imag == 0.0
        M = A if real else A.astype(complex)
        p = _inverse_step(M, lam, V[:, i].real if real else V[:, i])
        q = _inverse_step(M.T, lam, U[:, i].real if real else U[:, i])
        lam_ref = (q @ A @ p) / (q @ p)
        if real:
            lam_ref = complex(lam_ref.real, 0.0)
        lams[i], P[:, i], Q[i] = lam_ref, _normalize(p), _normalize(q)
        done[i] = True
        if not real:
            # partner is the exact conjugate so the spectrum stays closed
            j = min(
                (k for k in range(n) if not done[k]),
                key=lambda k: abs(w[k] - np.conj(lam)),
                default=None,
            )
            if j is not None and abs(w[j] - np.conj(lam)) <= 1e-6 * max(1.0, abs(lam)):
                lams[j] = np.conj(lam_ref)
                P[:, j] = np.conj(P[:, i])
                Q[j] = np.conj(Q[i])
                done[j] = True

    order = _sort_order(lams)
    lams, P, Q = lams[order], P[:, order], Q[order]
    norm_a = max(np.linalg.norm(A, 2), np.finfo(float).tiny)
    resid = max(
        np.linalg.norm(A @ P - P * lams[None, :], axis=0).max(),
        np.linalg.norm(Q @ A - lams[:, None] * Q, axis=1).max(),
    ) / norm_a
    return Spectrum(
        eigenvalues=lams,
        right=P,
        left=Q,
        det_p=complex(np.linalg.det(P)),
        min_separation=min_pairwise_distance(lams),
        stable=bool(np.all(np.abs(lams) < 1.0)),
        residual=float(resid),
    )


def to_diagonal_form(sys: LdtSystem, spec: Spectrum) -> DiagonalForm:
    """Transformed input b̂ = P⁻¹B of a single-input system.

    Row i of P⁻¹ is the left eigenvector q_i rescaled so that q_i p_i = 1,
    hence b̂_i = (q_i B) / (q_i p_i). This pairing keeps |det P|·Π|b̂_i|
    independent of how the eigenvectors are scaled.
    """
    if sys.r != 1:
        raise MultiInputError(f"diagonal form needs r = 1, got r = {sys.r}")
    b = sys.B[:, 0]
    qp = np.einsum("ij,ji->i", spec.left, spec.right)
    bhat = (spec.left @ b) / qp
    real = spec.is_real and np.all(np.abs(bhat.imag) <= 1e-14 * np.abs(bhat).max(initial=1.0))
    lambdas = spec.eigenvalues.real if spec.is_real else spec.eigenvalues
    return DiagonalForm(lambdas, bhat.real if real else bhat)
