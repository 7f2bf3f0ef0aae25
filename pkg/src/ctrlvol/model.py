"""Domain records: systems, spectra, diagonal forms, Grammians.

All records are frozen dataclasses holding read-only numpy arrays, so they
can be shared freely between threads.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal, Optional

import numpy as np

DEFAULT_TOL = 1e-9
DISTINCT_REL = 1e-8

Basis = Literal["original", "eigen"]


class CtrlVolError(ValueError):
    """Base class for all precondition failures in this package."""


class DimensionError(CtrlVolError):
    pass


class NonFiniteError(CtrlVolError):
    pass


class RepeatedEigenvalueError(CtrlVolError):
    pass


class EigenConvergenceError(CtrlVolError):
    pass


class UnstableError(CtrlVolError):
    """An eigenvalue lies on or outside the unit circle."""


class MultiInputError(CtrlVolError):
    """The analytic path needs a single-input system."""


class ResonanceError(CtrlVolError):
    """Some product λ_i·conj(λ_j) equals 1; the geometric-sum formula is singular."""


class GrammianOverflowError(CtrlVolError):
    pass


class ConvergenceError(CtrlVolError):
    pass


def _frozen(a, dtype=None) -> np.ndarray:
    arr = np.array(a, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class LdtSystem:
    """Linear discrete-time system x_{k+1} = A x_k + B u_k."""

    A: np.ndarray
    B: np.ndarray
    name: str = ""

    def __post_init__(self):
        A = np.asarray(self.A, dtype=float)
        B = np.asarray(self.B, dtype=float)
        if B.ndim == 1:
            B = B.reshape(-1, 1)
        object.__setattr__(self, "A", _frozen(A))
        object.__setattr__(self, "B", _frozen(B))

    @property
    def n(self) -> int:
        return self.A.shape[0] if self.A.ndim == 2 else 0

    @property
    def r(self) -> int:
        return self.B.shape[1] if self.B.ndim == 2 else 0

    @property
    def single_input(self) -> bool:
        return self.r == 1


def validate_system(sys: LdtSystem) -> LdtSystem:
    """Check shapes and finiteness; return ``sys`` unchanged when valid."""
    A, B = sys.A, sys.B
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionError(f"A must be square, got shape {A.shape}")
    if A.shape[0] == 0:
        raise DimensionError("state dimension n must be at least 1")
    if B.ndim != 2 or B.shape[0] != A.shape[0]:
        raise DimensionError(f"B must have {A.shape[0]} rows, got shape {B.shape}")
    if B.shape[1] == 0:
        raise DimensionError("input dimension r must be at least 1")
    if not (np.all(np.isfinite(A)) and np.all(np.isfinite(B))):
        raise NonFiniteError("system matrices contain NaN or infinite entries")
    return sys


@dataclass(frozen=True)
class Spectrum:
    """Eigen-decomposition of a state matrix with distinct eigenvalues.

    ``right`` holds unit right eigenvectors as columns (the transform P),
    ``left`` holds unit left eigenvectors as rows (q_i A = λ_i q_i).
    """

    eigenvalues: np.ndarray
    right: np.ndarray
    left: np.ndarray
    det_p: complex
    min_separation: float
    stable: bool
    residual: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "eigenvalues", _frozen(self.eigenvalues, complex))
        object.__setattr__(self, "right", _frozen(self.right, complex))
        object.__setattr__(self, "left", _frozen(self.left, complex))

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    @property
    def is_real(self) -> bool:
        return bool(np.all(self.eigenvalues.imag == 0.0))

    @property
    def spectral_radius(self) -> float:
        return float(np.max(np.abs(self.eigenvalues)))

    def rescaled(self, scales) -> "Spectrum":
        """Copy with right eigenvectors multiplied column-wise by ``scales``.

        The result no longer has unit columns; it exists to exercise the
        scale invariance of the volume formulas.
        """
        scales = np.asarray(scales, dtype=complex)
        P = self.right * scales[None, :]
        return Spectrum(
            eigenvalues=self.eigenvalues,
            right=P,
            left=self.left,
            det_p=complex(np.linalg.det(P)),
            min_separation=self.min_separation,
            stable=self.stable,
            residual=self.residual,
        )


@dataclass(frozen=True)
class DiagonalForm:
    """Single-input diagonal canonical form (diag(λ), b̂)."""

    lambdas: np.ndarray
    bhat: np.ndarray
    basis_note: str = "bhat = inv(P) B, P with unit-norm right eigenvectors"

    def __post_init__(self):
        lam = np.atleast_1d(np.asarray(self.lambdas, dtype=complex))
        b = np.atleast_1d(np.asarray(self.bhat, dtype=complex))
        if lam.shape != b.shape or lam.ndim != 1:
            raise DimensionError("lambdas and bhat must be equal-length vectors")
        object.__setattr__(self, "lambdas", _frozen(lam))
        object.__setattr__(self, "bhat", _frozen(b))

    @classmethod
    def from_real(cls, lambdas, bhat) -> "DiagonalForm":
        return cls(np.asarray(lambdas, float), np.asarray(bhat, float), basis_note="given")

    @property
    def n(self) -> int:
        return len(self.lambdas)

    @property
    def is_real(self) -> bool:
        return bool(np.all(self.lambdas.imag == 0.0) and np.all(self.bhat.imag == 0.0))

    def as_system(self) -> LdtSystem:
        """The real system (diag λ, b̂); only defined for real forms."""
        if not self.is_real:
            raise CtrlVolError("complex diagonal form has no real system realization")
        return LdtSystem(np.diag(self.lambdas.real), self.bhat.real.reshape(-1, 1))


@dataclass(frozen=True)
class GrammianResult:
    """A controllability Grammian with its horizon and basis tags.

    ``horizon`` is ``None`` for the infinite-horizon Grammian.
    """

    G: np.ndarray
    horizon: Optional[int]
    basis: Basis
    warnings: tuple = field(default=())

    def __post_init__(self):
        G = np.asarray(self.G)
        if np.iscomplexobj(G) and np.all(G.imag == 0.0):
            G = G.real
        object.__setattr__(self, "G", _frozen(G))

    @property
    def n(self) -> int:
        return self.G.shape[0]

    @property
    def infinite(self) -> bool:
        return self.horizon is None

    def horizon_tag(self):
        return "infinite" if self.horizon is None else self.horizon

    def check(self, tol: float = DEFAULT_TOL) -> bool:
        """True when G is Hermitian and positive semidefinite within ``tol``."""
        G = self.G
        scale = max(np.linalg.norm(G, 2), np.finfo(float).tiny)
        if np.linalg.norm(G - G.conj().T) > tol * scale:
            return False
        w = np.linalg.eigvalsh((G + G.conj().T) / 2)
        return bool(w.min() >= -tol * scale)


def min_pairwise_distance(values) -> float:
    v = np.asarray(values, dtype=complex)
    if len(v) < 2:
        return math.inf
    d = np.abs(v[:, None] - v[None, :])
    d[np.diag_indices(len(v))] = np.inf
    return float(d.min())


def distinct_threshold(values) -> float:
    v = np.asarray(values, dtype=complex)
    rho = float(np.max(np.abs(v))) if len(v) else 0.0
    return DISTINCT_REL * max(1.0, rho)


# ---------------------------------------------------------------- JSON files


def system_from_dict(data: dict) -> LdtSystem:
    """Build a validated system from the JSON object layout.

    ``{"A": [[...], ...], "B": [...] | [[...], ...], "name": "..."}``
    """
    if not isinstance(data, dict) or "A" not in data or "B" not in data:
        raise DimensionError('system object needs "A" and "B" fields')
    try:
        A = np.array(data["A"], dtype=float)
        B = np.array(data["B"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise DimensionError(f"malformed matrix: {exc}") from None
    name = data.get("name", "")
    if not isinstance(name, str):
        raise DimensionError('"name" must be a string')
    if B.ndim == 1:
        B = B.reshape(-1, 1)
    return validate_system(LdtSystem(A, B, name=name))


def system_to_dict(sys: LdtSystem) -> dict:
    B = sys.B[:, 0].tolist() if sys.r == 1 else sys.B.tolist()
    out = {"A": sys.A.tolist(), "B": B}
    if sys.name:
        out["name"] = sys.name
    return out


def load_system(path) -> LdtSystem:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DimensionError(f"{path}: not valid JSON ({exc})") from None
    return system_from_dict(data)


def dumps_system(sys: LdtSystem) -> str:
    # json uses repr(float): shortest string that round-trips exactly
    return json.dumps(system_to_dict(sys), indent=2)
