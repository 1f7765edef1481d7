"""Exact q-series for the j-function, its relatives, and the identities around them."""

from .modular import delta_series, eisenstein_e4, eta_power, eta_quotient, j_minus_744, j_series
from .report import Status, VerificationReport
from .series import BiSeries, ExponentTable, LaurentSeries, invert, mul, product_expansion

__version__ = "0.1.0"

__all__ = [
    "BiSeries",
    "ExponentTable",
    "LaurentSeries",
    "Status",
    "VerificationReport",
    "delta_series",
    "eisenstein_e4",
    "eta_power",
    "eta_quotient",
    "invert",
    "j_minus_744",
    "j_series",
    "mul",
    "product_expansion",
]
