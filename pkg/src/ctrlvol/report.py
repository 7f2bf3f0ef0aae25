"""Assemble analysis reports and render them as text, JSON or CSV."""
from __future__ import annotations

import json
import math
from typing import Optional

import numpy as np

from . import analytic, factors, geometry, grammian
from .eigensolve import decompose, to_diagonal_form
from .model import CtrlVolError, LdtSystem
from .oracle.referees import log_abs_determinant, stein_solve


def num(x) -> Optional[float]:
    """Round to 12 significant digits; non-finite values become None."""
    if x is None:
        return None
    x = float(x)
    if not math.isfinite(x):
        return None
    return float(f"{x:.12g}")


def cnum(z):
    z = complex(z)
    return {"re": num(z.real), "im": num(z.imag)}


def _numeric_volume(sys: LdtSystem, horizon: Optional[int]):
    G = stein_solve(sys) if horizon is None else grammian.finite_series(sys, horizon)
    _, logdet = log_abs_determinant(G.G)
    h_n = analytic.hypersphere_coefficient(sys.n)
    return (0.0, 0.0) if logdet == -math.inf else (math.exp(logdet), h_n * math.exp(0.5 * logdet))


def analyze_system(sys: LdtSystem, horizon: Optional[int] = None) -> dict:
    """Everything the ``analyze`` command reports, as an ordered dict.

    ``horizon=None`` means infinite when the system is stable, else 100.
    Analytic fields are None when their preconditions fail; the reason is
    listed under ``notes``.
    """
    notes = []
    out = {
        "name": sys.name,
        "n": sys.n,
        "r": sys.r,
        "eigenvalues": None,
        "stable": None,
        "path": None,
        "volume": None,
        "detGInfinity": None,
        "f1": None,
        "pairwise": None,
        "worstPair": None,
        "sideHalfLengths": None,
        "boxVolume": None,
        "conjugatePairFactors": None,
        "detPMagnitude": None,
        "numericHorizon": None,
        "numericVolume": None,
        "numericDetG": None,
        "notes": notes,
    }
    spec = None
    try:
        spec = decompose(sys)
    except CtrlVolError as exc:
        notes.append(f"eigendecomposition unavailable: {exc}")
        rho = float(np.max(np.abs(np.linalg.eigvals(sys.A))))
        stable = rho < 1.0
        out["eigenvalues"] = [cnum(z) for z in sorted(np.linalg.eigvals(sys.A), key=lambda z: (z.real, z.imag))]
    else:
        stable = spec.stable
        out["eigenvalues"] = [cnum(z) for z in spec.eigenvalues]
        out["detPMagnitude"] = num(abs(spec.det_p))
    out["stable"] = stable

    if spec is not None and sys.r != 1:
        notes.append(f"analytic fields unavailable: multi-input system (r = {sys.r})")
    elif spec is not None and not stable:
        notes.append("analytic fields unavailable: eigenvalue on or outside the unit circle")
    elif spec is not None:
        diag = to_diagonal_form(sys, spec)
        rep = analytic.analytic_volume(sys, spec, diag)
        ev = factors.build_evenness_report(diag)
        box = geometry.circumscribed_box(diag, spec)
        out.update(
            path=rep.path,
            volume=num(rep.volume),
            detGInfinity=num(rep.det_g_infinity),
            f1=num(ev.f1),
            pairwise=[[num(v) for v in row] for row in ev.pairwise],
            worstPair=None if ev.worst_pair is None else [i + 1 for i in ev.worst_pair],
            sideHalfLengths=[num(v) for v in ev.per_axis],
            boxVolume=num(box.box_volume),
            conjugatePairFactors=[
                {"pair": [i + 1, j + 1], "factor": num(f)} for (i, j), f in ev.conjugate_pairs
            ],
        )
        if rep.uncontrollable:
            notes.append("uncontrollable direction: some transformed input entry is zero")

    if horizon is None and not stable:
        horizon = 100
    out["numericHorizon"] = "infinite" if horizon is None else horizon
    try:
        det_num, vol_num = _numeric_volume(sys, horizon)
        out["numericDetG"], out["numericVolume"] = num(det_num), num(vol_num)
    except CtrlVolError as exc:
        notes.append(f"numeric volume unavailable: {exc}")
    return out


def _fmt4(x) -> str:
    return "n/a" if x is None else f"{x:.4f}"


def render_text(rep: dict) -> str:
    n = rep["n"]
    eig = ", ".join(
        f"{e['re']:.4f}" if e["im"] == 0 else f"{e['re']:.4f}{e['im']:+.4f}i" for e in rep["eigenvalues"]
    )
    lines = [
        f"system: {rep['name'] or '(unnamed)'}   n={n}  r={rep['r']}",
        f"eigenvalues: {eig}",
        f"stable: {'yes' if rep['stable'] else 'no'}   path: {rep['path'] or 'numeric only'}",
        "-" * 60,
        f"{'factors':>40} | values",
        "-" * 60,
        f"{'volume:':>40} | {_fmt4(rep['volume'])}",
        f"{'det G_inf:':>40} | {_fmt4(rep['detGInfinity'])}",
        f"{'shape factor F1:':>40} | {_fmt4(rep['f1'])}",
    ]
    if rep["pairwise"] is not None:
        names, vals = [], []
        for i in range(n):
            for j in range(i + 1, n):
                names.append(f"F1,{i + 1},{j + 1}")
                vals.append(_fmt4(rep["pairwise"][i][j]))
        lines.append(f"{'2-D shape factors ' + ','.join(names) + ':':>40} | " + ", ".join(vals))
        sides = ",".join(f"F2,{i + 1}" for i in range(n))
        lines.append(f"{'side lengths ' + sides + ':':>40} | " + ", ".join(_fmt4(v) for v in rep["sideHalfLengths"]))
        for cp in rep["conjugatePairFactors"]:
            i, j = cp["pair"]
            lines.append(f"{f'conjugate pair factor ({i},{j}):':>40} | {_fmt4(cp['factor'])}")
    lines += [
        f"{'|det P|:':>40} | {_fmt4(rep['detPMagnitude'])}",
        f"{'numeric volume (N=' + str(rep['numericHorizon']) + '):':>40} | {_fmt4(rep['numericVolume'])}",
        "-" * 60,
    ]
    lines += [f"note: {m}" for m in rep["notes"]]
    return "\n".join(lines) + "\n"


def render_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def render_csv(rep: dict) -> str:
    def cell(v):
        if v is None:
            return ""
        if isinstance(v, dict) and "re" in v:
            return f"{v['re']:.12g}{v['im']:+.12g}j"
        if isinstance(v, dict):
            return ";".join(f"{k}={cell(x)}" for k, x in v.items())
        if isinstance(v, list) and v and isinstance(v[0], list):
            return "|".join(cell(x) for x in v)
        if isinstance(v, list):
            return ";".join(cell(x) for x in v)
        if isinstance(v, float):
            return f"{v:.12g}"
        return str(v).replace(",", ";")

    lines = ["field,value"]
    for k, v in rep.items():
        lines.append(f"{k},{cell(v)}")
    return "\n".join(lines) + "\n"
