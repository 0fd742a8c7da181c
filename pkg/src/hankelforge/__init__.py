"""Logarithmic coefficients of inverse functions and sharp bounds on their
second Hankel determinant for three classes of univalent functions."""

from ._backend import NAME as BACKEND
from .caratheodory import CaratheodoryCoeffs, SchurParams, boundary_function, coeffs_from_schur
from .classes import FunctionClass, coeff_map, membership_check, reconstruct_f
from .hankel import h21_from_a, h21_from_gammas, h21_in_c, h21_in_tau, hankel_generic
from .series import (
    TaylorSeries,
    gamma_closed_form,
    inverse_closed_form,
    inverse_log_coefficients,
    invert_series,
    log_ratio,
)
from .ymax import y_eval, y_oracle

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CaratheodoryCoeffs",
    "FunctionClass",
    "SchurParams",
    "TaylorSeries",
    "boundary_function",
    "coeff_map",
    "coeffs_from_schur",
    "gamma_closed_form",
    "h21_from_a",
    "h21_from_gammas",
    "h21_in_c",
    "h21_in_tau",
    "hankel_generic",
    "inverse_closed_form",
    "inverse_log_coefficients",
    "invert_series",
    "log_ratio",
    "membership_check",
    "reconstruct_f",
    "y_eval",
    "y_oracle",
]
