import numpy as np
import pytest

from ctrlvol.model import LdtSystem

COMPANION_A = [[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [0.432, -1.74, 2.3]]
COMPANION_B = [0.0, 0.0, 1.0]
TABULATED_BHAT = (2.034, 7.158, 5.235)


def rotation_system(a: float) -> LdtSystem:
    return LdtSystem(np.array([[0.8, -a], [a, 0.8]]), np.array([1.0, 1.0]))


def spread_values(rng, n, lo=-0.9, hi=0.9, gap=0.05):
    """n values uniform in (lo, hi) with pairwise gap >= ``gap`` (rejection)."""
    while True:
        v = rng.uniform(lo, hi, size=n)
        s = np.sort(v)
        if n < 2 or np.min(np.diff(s)) >= gap:
            return v


def random_real_system(rng, n, lo=-0.9, hi=0.9, gap=0.05, cond_cap=50.0):
    """Stable single-input system with distinct real eigenvalues."""
    lam = spread_values(rng, n, lo, hi, gap)
    while True:
        P = np.eye(n) + 0.5 * rng.standard_normal((n, n))
        if np.linalg.cond(P) < cond_cap:
            break
    A = P @ np.diag(lam) @ np.linalg.inv(P)
    B = rng.standard_normal(n)
    return LdtSystem(A, B)


@pytest.fixture
def companion():
    return LdtSystem(np.array(COMPANION_A), np.array(COMPANION_B), name="companion example")


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)
