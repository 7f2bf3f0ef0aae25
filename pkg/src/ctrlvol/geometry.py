"""Ellipsoid realization: boundary samples, radii, circumscribed box.

The ellipsoid of a Grammian G is {G^{1/2} z : ‖z‖ ≤ 1}, equivalently
xᵀ G⁻¹ x ≤ 1 when G is nonsingular. Restricting to a coordinate subset uses
the principal submatrix, i.e. the projection of the ellipsoid onto those
coordinates.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .model import CtrlVolError, DiagonalForm, DimensionError, GrammianResult, Spectrum

_GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


@dataclass(frozen=True)
class PlotData:
    dimension: int
    points: np.ndarray
    label: str
    axes: tuple
    header: tuple = ()
    degenerate: bool = False

    def to_csv(self) -> str:
        head = self.header or ("x", "y", "z")[: self.dimension]
        lines = [",".join(head)]
        for p in self.points:
            lines.append(",".join(f"{float(v):.12g}" for v in p))
        return "\n".join(lines) + "\n"


def _sym_sqrt(M: np.ndarray):
    w, V = np.linalg.eigh(M)
    scale = max(abs(w).max(), np.finfo(float).tiny)
    singular = bool(w.min() <= 1e-12 * scale)
    w = np.clip(w, 0.0, None)
    return (V * np.sqrt(w)[None, :]) @ V.T, singular


def unit_directions(dimension: int, count: int) -> np.ndarray:
    """Uniform angle grid on the circle or a Fibonacci lattice on the sphere."""
    if count < 1:
        raise ValueError("count must be positive")
    k = np.arange(count)
    if dimension == 2:
        t = 2.0 * np.pi * k / count
        return np.column_stack([np.cos(t), np.sin(t)])
    if dimension == 3:
        z = 1.0 - 2.0 * (k + 0.5) / count
        rho = np.sqrt(1.0 - z * z)
        phi = _GOLDEN_ANGLE * k
        return np.column_stack([rho * np.cos(phi), rho * np.sin(phi), z])
    raise DimensionError("only 2-D and 3-D sampling is supported")


def _real_grammian(G: GrammianResult) -> np.ndarray:
    M = G.G
    if np.iscomplexobj(M):
        raise CtrlVolError("complex eigen-space Grammian has no real ellipsoid; use the original basis")
    return M


def sample_boundary(G: GrammianResult, axes: Sequence[int], count: int, label: str = "") -> PlotData:
    """Points x = S u on the boundary of the (projected) ellipsoid.

    ``S`` is the symmetric square root of the principal submatrix selected
    by ``axes`` (0-based). A singular section yields the flattened
    ellipse/segment that S maps the unit sphere to, flagged ``degenerate``.
    """
    M = _real_grammian(G)
    axes = tuple(int(a) for a in axes)
    if len(axes) not in (2, 3) or len(set(axes)) != len(axes):
        raise DimensionError("axes must be 2 or 3 distinct indices")
    if min(axes) < 0 or max(axes) >= M.shape[0]:
        raise DimensionError(f"axis index out of range for n = {M.shape[0]}")
    S, singular = _sym_sqrt(M[np.ix_(axes, axes)])
    pts = unit_directions(len(axes), count) @ S.T
    return PlotData(len(axes), pts, label, axes, degenerate=singular)


def principal_radii(G: GrammianResult) -> np.ndarray:
    """Semi-axis lengths, sqrt of the Grammian eigenvalues, descending."""
    w = np.linalg.eigvalsh((G.G + G.G.conj().T) / 2)
    return np.sqrt(np.clip(w, 0.0, None))[::-1]


def support_point(G: GrammianResult, axis: int) -> np.ndarray:
    """Boundary point maximizing coordinate ``axis``: G e_i / sqrt(G_ii)."""
    M = _real_grammian(G)
    return M[:, axis] / math.sqrt(M[axis, axis])


def polygon_area(points: np.ndarray) -> float:
    x, y = points[:, 0], points[:, 1]
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))


@dataclass(frozen=True)
class BoxReport:
    half_lengths: tuple
    rhomboid_edges: np.ndarray
    box_volume: float


def circumscribed_box(diag: DiagonalForm, spec: Spectrum) -> BoxReport:
    """Smallest eigen-axis box around the infinite-horizon ellipsoid.

    Half-lengths are |b̂_i| / sqrt(1 - |λ_i|²); the columns of P scaled by
    them span the parallelepiped the box maps to in original coordinates.
    """
    lam = diag.lambdas
    if np.any(np.abs(lam) >= 1.0):
        raise CtrlVolError("circumscribed box of the infinite ellipsoid needs |λ_i| < 1")
    half = np.abs(diag.bhat) / np.sqrt(1.0 - np.abs(lam) ** 2)
    edges = spec.right * half[None, :]
    if np.all(edges.imag == 0.0):
        edges = edges.real
    edges.setflags(write=False)
    log_vol = len(half) * math.log(2.0) + float(np.sum(np.log(half))) if np.all(half > 0) else -math.inf
    return BoxReport(tuple(float(h) for h in half), edges, math.exp(log_vol))
