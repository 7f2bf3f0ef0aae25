"""Numerical referees for the closed-form results."""
from .referees import (
    cauchy_matrix,
    dense_determinant,
    log_abs_determinant,
    series_reference,
    stein_doubling,
    stein_solve,
)
from .verify import OracleReport, any_failed, verify_all

__all__ = [
    "OracleReport",
    "any_failed",
    "cauchy_matrix",
    "dense_determinant",
    "log_abs_determinant",
    "series_reference",
    "stein_doubling",
    "stein_solve",
    "verify_all",
]
