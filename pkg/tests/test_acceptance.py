"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the summary lines.
"""
import math

import numpy as np
import pytest

from ctrlvol.analytic import (
    cauchy_determinant,
    hypersphere_coefficient,
    volume_complex,
    volume_diagonal,
    volume_general,
)
from ctrlvol.eigensolve import decompose, to_diagonal_form
from ctrlvol.factors import (
    axis_half_length,
    build_evenness_report,
    conjugate_pair_factor,
    evenness_factor,
    pairwise_factor,
)
from ctrlvol.geometry import circumscribed_box, sample_boundary, support_point
from ctrlvol.grammian import closed_form_finite, finite_series, infinite_grammian, transform_grammian
from ctrlvol.model import DiagonalForm, LdtSystem
from ctrlvol.oracle import cauchy_matrix, dense_determinant, stein_solve
from ctrlvol.polesearch import maximize_evenness

from conftest import TABULATED_BHAT, random_real_system, rotation_system, spread_values

REFERENCE_VOLUME = 298.8566


def verdict(k: int, title: str, ok: bool, detail: str) -> None:
    print(f"\n{'PASS' if ok else 'FAIL'} criterion {k}: {title} | {detail}")
    assert ok, detail


def ball_volume(G) -> float:
    n = G.shape[0]
    return hypersphere_coefficient(n) * math.sqrt(dense_determinant(G))


def test_criterion_1_table_factors():
    lam = [0.6, 0.8, 0.9]
    f1 = evenness_factor(lam)
    pw = [pairwise_factor(0.6, 0.8), pairwise_factor(0.6, 0.9), pairwise_factor(0.8, 0.9)]
    f2 = [axis_half_length(l, b) for l, b in zip(lam, TABULATED_BHAT)]
    ok = (abs(f1 - 0.0896) <= 5e-4
          and np.allclose(pw, [0.3846, 0.6522, 0.3571], rtol=0, atol=1e-4)
          and np.allclose(f2, [2.5425, 11.9300, 12.0099], rtol=0, atol=1e-3))
    verdict(1, "reference factors for (0.6, 0.8, 0.9)", ok,
            f"F1={f1:.5f} pairwise={np.round(pw, 5).tolist()} F2={np.round(f2, 4).tolist()}")


def test_criterion_2_pairwise_reference():
    cases = [((0.85, 0.9), 0.2128), ((0.6, 0.9), 0.6522), ((0.4, 0.9), 0.7813)]
    got = [pairwise_factor(*p) for p, _ in cases]
    ok = all(abs(g - e) <= 1e-4 for g, (_, e) in zip(got, cases))
    verdict(2, "reference pairwise factors", ok, f"{np.round(got, 5).tolist()}")


def test_criterion_3_companion_volume(companion):
    spec = decompose(companion)
    vol = volume_general(companion, spec, to_diagonal_form(companion, spec)).volume
    v_stein = ball_volume(stein_solve(companion).G)
    v_series = ball_volume(finite_series(companion, 400).G)
    r1, r2 = abs(vol / v_stein - 1), abs(vol / v_series - 1)
    r3 = abs(vol / REFERENCE_VOLUME - 1)
    # the tabulated b̂ values alone give a different volume; documented, not pinned
    tabulated_only = volume_diagonal(DiagonalForm.from_real([0.6, 0.8, 0.9], TABULATED_BHAT)).volume
    ok = r1 <= 1e-6 and r2 <= 1e-6 and r3 <= 1e-2
    verdict(3, "companion example volume", ok,
            f"volume={vol:.6f} rel(stein)={r1:.1e} rel(N=400)={r2:.1e} "
            f"rel(reference {REFERENCE_VOLUME})={r3:.1e} tabulated-b̂ volume={tabulated_only:.3f}")


def test_criterion_4_cauchy_oracle():
    rng = np.random.default_rng(4)
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(2, 7))
        lam = spread_values(rng, n, -0.95, 0.95, 0.05)
        a, b = cauchy_determinant(lam), dense_determinant(cauchy_matrix(lam))
        worst = max(worst, abs(a - b) / abs(b))
    verdict(4, "Cauchy determinant vs LU on 100 spectra", worst <= 1e-6, f"max rel error={worst:.2e}")


def test_criterion_5_finite_closed_form():
    rng = np.random.default_rng(5)
    worst = 0.0
    for _ in range(20):
        n = int(rng.integers(2, 7))
        lam = spread_values(rng, n, -0.95, 0.95, 0.05)
        sys = LdtSystem(np.diag(lam), rng.standard_normal(n))
        spec = decompose(sys)
        diag = to_diagonal_form(sys, spec)
        for N in (1, 2, 5, 10, 50):
            closed = transform_grammian(closed_form_finite(diag, N), spec, "toOriginal").G
            series = finite_series(sys, N).G
            worst = max(worst, np.linalg.norm(closed - series) / np.linalg.norm(series))
    verdict(5, "finite-horizon closed form vs series", worst <= 1e-9, f"max rel error={worst:.2e}")


def test_criterion_6_complex_path():
    errs, vols, pair = [], [], []
    for a in (0.1, 0.2, 0.3):
        sys = rotation_system(a)
        spec = decompose(sys)
        vol = volume_complex(sys, spec, to_diagonal_form(sys, spec)).volume
        errs.append(abs(vol / ball_volume(stein_solve(sys).G) - 1))
        vols.append(vol)
        pair.append(conjugate_pair_factor(complex(0.8, a)))
    increasing = all(x < y for x, y in zip(vols, vols[1:])) and all(x < y for x, y in zip(pair, pair[1:]))
    ok = max(errs) <= 1e-6 and increasing
    verdict(6, "complex path", ok,
            f"volumes={np.round(vols, 4).tolist()} max rel error={max(errs):.1e} "
            f"pair factors={np.round(pair, 4).tolist()}")


def test_criterion_7_properties():
    rng = np.random.default_rng(7)
    failures = []

    # Loewner monotonicity of det G_N
    for _ in range(5):
        sys = random_real_system(rng, 3)
        dets = [np.linalg.det(finite_series(sys, N).G) for N in range(1, 40)]
        floor = 1e-12 * np.linalg.norm(finite_series(sys, 40).G, 2) ** 3
        if any(b < a - floor for a, b in zip(dets, dets[1:])):
            failures.append("loewner")

    # range bounds
    for _ in range(200):
        lam = rng.uniform(-0.99, 0.99, int(rng.integers(2, 7)))
        f1 = evenness_factor(lam)
        if not 0.0 <= f1 < 1.0:
            failures.append("f1 range")
        z = rng.uniform(-0.7, 0.7, 2) + 1j * rng.uniform(-0.7, 0.7, 2)
        if not 0.0 <= pairwise_factor(z[0], z[1]) < 1.0:
            failures.append("pair range")

    # rescaling invariance and the factorization identity
    for _ in range(10):
        sys = random_real_system(rng, int(rng.integers(2, 6)))
        spec = decompose(sys)
        diag = to_diagonal_form(sys, spec)
        rep = volume_general(sys, spec, diag)
        spec2 = spec.rescaled(rng.uniform(0.2, 5.0, spec.n) * rng.choice([-1, 1], spec.n))
        vol2 = volume_general(sys, spec2, to_diagonal_form(sys, spec2)).volume
        if abs(vol2 / rep.volume - 1) > 1e-9:
            failures.append("rescaling")
        ev = build_evenness_report(diag)
        rebuilt = hypersphere_coefficient(spec.n) * abs(spec.det_p) * ev.f1 * math.prod(ev.per_axis)
        if abs(rebuilt / rep.volume - 1) > 1e-9:
            failures.append("factorization")

        # box containment and tangency in eigen-space
        box = circumscribed_box(diag, spec)
        Gbar = infinite_grammian(diag)
        axes = tuple(range(min(3, spec.n)))
        pts = sample_boundary(Gbar, axes, 500).points
        if np.any(np.abs(pts) > np.array(box.half_lengths)[list(axes)] * (1 + 1e-9)):
            failures.append("containment")
        for i in range(spec.n):
            if abs(abs(support_point(Gbar, i)[i]) / box.half_lengths[i] - 1) > 1e-6:
                failures.append("tangency")
    verdict(7, "property suites", not failures, f"failures={sorted(set(failures)) or 'none'}")


def grid_oracle(n: int, step: float) -> float:
    xs = np.round(np.arange(-0.9, 0.9 + step / 2, step), 12)
    X, Y = np.meshgrid(xs, xs, indexing="ij")
    pxy = np.abs(X - Y) / np.abs(1 - X * Y)
    if n == 2:
        return float(pxy.max())
    return max(float((pxy * np.abs(a - X) / np.abs(1 - a * X) * np.abs(a - Y) / np.abs(1 - a * Y)).max())
               for a in xs)


def test_criterion_8_pole_search():
    r2 = maximize_evenness(2, (-0.9, 0.9))
    r3 = maximize_evenness(3, (-0.9, 0.9))
    g2, g3 = grid_oracle(2, 0.001), grid_oracle(3, 0.005)
    ok = (np.allclose(r2.poles, [-0.9, 0.9], atol=1e-9) and abs(r2.f1 - 0.9945) <= 1e-3
          and abs(r2.f1 - g2) <= 1e-4 and abs(r3.f1 - g3) <= 1e-4)
    verdict(8, "pole search", ok,
            f"n=2 poles={np.round(r2.poles, 6).tolist()} F1={r2.f1:.6f} (grid {g2:.6f}); "
            f"n=3 poles={np.round(r3.poles, 6).tolist()} F1={r3.f1:.6f} (grid {g3:.6f})")
