"""Analytic-versus-numeric comparison reports."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .. import analytic, geometry, grammian
from ..eigensolve import decompose, to_diagonal_form
from ..model import CtrlVolError, LdtSystem, validate_system
from .referees import cauchy_matrix, dense_determinant, log_abs_determinant, stein_solve

REL_FLOOR = 1e-300
MAX_CAUCHY_N = 8


@dataclass(frozen=True)
class OracleReport:
    quantity: str
    analytic_value: Optional[float]
    numeric_value: Optional[float]
    abs_error: Optional[float]
    rel_error: Optional[float]
    horizon_used: object
    tolerance: float
    status: str  # "pass" | "fail" | "skipped"
    note: str = ""

    @property
    def passed(self) -> Optional[bool]:
        return None if self.status == "skipped" else self.status == "pass"

    def to_dict(self) -> dict:
        return {
            "quantity": self.quantity,
            "analyticValue": self.analytic_value,
            "numericValue": self.numeric_value,
            "absError": self.abs_error,
            "relError": self.rel_error,
            "horizonUsed": self.horizon_used,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "status": self.status,
            "note": self.note,
        }


def compare(quantity, analytic_value, numeric_value, tol, horizon, abs_error=None, note="") -> OracleReport:
    if abs_error is None:
        abs_error = abs(analytic_value - numeric_value)
    rel = abs_error / max(abs(numeric_value), REL_FLOOR)
    ok = bool(np.isfinite(rel) and rel <= tol)
    return OracleReport(quantity, float(analytic_value), float(numeric_value), float(abs_error),
                        float(rel), horizon, tol, "pass" if ok else "fail", note)


def skipped(quantity, horizon, tol, note) -> OracleReport:
    return OracleReport(quantity, None, None, None, None, horizon, tol, "skipped", note)


def _vector_compare(quantity, a, b, tol, horizon, note=""):
    a, b = np.asarray(a), np.asarray(b)
    return compare(quantity, np.linalg.norm(a), np.linalg.norm(b), tol, horizon,
                   abs_error=float(np.linalg.norm(a - b)), note=note)


def verify_all(sys: LdtSystem, N: int = 400, tol: float = 1e-6) -> list[OracleReport]:
    """Run every referee that applies to ``sys``.

    Precondition failures become ``skipped`` entries; nothing aborts the
    whole run. Reports are ordered by quantity name.
    """
    validate_system(sys)
    inf = "infinite"
    reports: dict[str, OracleReport] = {}
    names_inf = ("det_g_infinity", "volume_infinity")

    def skip_all(note):
        for q in names_inf:
            reports.setdefault(q, skipped(q, inf, tol, note))
        reports.setdefault("cauchy_determinant", skipped("cauchy_determinant", inf, tol, note))
        reports.setdefault("finite_closed_form", skipped("finite_closed_form", N, tol, note))
        reports.setdefault("radii", skipped("radii", N, tol, note))

    if sys.r != 1:
        skip_all(f"multi-input system (r = {sys.r}); analytic path needs r = 1")
        return [reports[k] for k in sorted(reports)]
    try:
        spec = decompose(sys)
        diag = to_diagonal_form(sys, spec)
    except CtrlVolError as exc:
        skip_all(f"decomposition unavailable: {exc}")
        return [reports[k] for k in sorted(reports)]

    # Cauchy determinant product formula vs LU
    cd = "cauchy_determinant"
    if not spec.is_real:
        reports[cd] = skipped(cd, inf, tol, "complex spectrum")
    elif not spec.stable:
        reports[cd] = skipped(cd, inf, tol, "unstable: eigenvalue outside (-1, 1)")
    elif spec.n > MAX_CAUCHY_N:
        reports[cd] = skipped(cd, inf, tol, f"n > {MAX_CAUCHY_N}: dense referee ill-conditioned")
    else:
        lam = spec.eigenvalues.real
        reports[cd] = compare(cd, analytic.cauchy_determinant(lam), dense_determinant(cauchy_matrix(lam)), tol, inf)

    # finite-N closed form vs direct series
    series = None
    try:
        series = grammian.finite_series(sys, N)
        closed = grammian.transform_grammian(grammian.closed_form_finite(diag, N), spec, "toOriginal")
        diff = float(np.linalg.norm(closed.G - series.G))
        reports["finite_closed_form"] = compare(
            "finite_closed_form", np.linalg.norm(closed.G), np.linalg.norm(series.G), tol, N,
            abs_error=diff, note="; ".join(closed.warnings))
    except CtrlVolError as exc:
        reports["finite_closed_form"] = skipped("finite_closed_form", N, tol, str(exc))

    if not spec.stable:
        note = f"unstable: spectral radius {spec.spectral_radius:.6g} >= 1"
        for q in names_inf:
            reports[q] = skipped(q, inf, tol, note)
        if series is not None and "finite_closed_form" in reports and reports["finite_closed_form"].status != "skipped":
            reports["radii"] = _vector_compare(
                "radii", geometry.principal_radii(closed),
                np.sqrt(np.clip(np.linalg.eigvalsh(series.G), 0, None))[::-1], tol, N)
        else:
            reports["radii"] = skipped("radii", N, tol, "no finite-horizon Grammian available")
        return [reports[k] for k in sorted(reports)]

    stein = stein_solve(sys)
    _, logdet = log_abs_determinant(stein.G)
    det_num = math.exp(logdet) if logdet > -math.inf else 0.0
    rep = analytic.analytic_volume(sys, spec, diag)
    reports["det_g_infinity"] = compare("det_g_infinity", rep.det_g_infinity, det_num, tol, inf,
                                        note=f"path={rep.path}")
    h_n = math.pi ** (sys.n / 2) / math.gamma(sys.n / 2 + 1)
    reports["volume_infinity"] = compare("volume_infinity", rep.volume, h_n * math.sqrt(det_num), tol, inf,
                                         note=f"path={rep.path}")
    g_inf = grammian.transform_grammian(grammian.infinite_grammian(diag), spec, "toOriginal")
    reports["radii"] = _vector_compare(
        "radii", geometry.principal_radii(g_inf),
        np.sqrt(np.clip(np.linalg.eigvalsh(stein.G), 0, None))[::-1], tol, inf)
    return [reports[k] for k in sorted(reports)]


def any_failed(reports) -> bool:
    return any(r.status == "fail" for r in reports)
