"""Jacobi triple product and sparsity of eta powers.

The triple product is handled as a BiSeries in z (outer, exponents -Z..Z)
with q inner (exponents 0..order-1).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .modular import eta_power
from .report import Stopwatch, VerificationReport, compare_pairs
from .series import BiSeries, LaurentSeries

__all__ = [
    "DYSON_LIST",
    "DysonReport",
    "TripleProductWindow",
    "dyson_eta_report",
    "triple_product_lhs",
    "triple_product_rhs",
    "verify_triple_product",
]

DYSON_LIST = (3, 8, 10, 14, 15, 21, 24, 26, 28)


@dataclass(frozen=True)
class TripleProductWindow:
    q_order: int
    z_range: int

    def __post_init__(self) -> None:
        if self.q_order < 1 or self.z_range < 1:
            raise ValueError(f"q_order and z_range must be positive, got ({self.q_order}, {self.z_range})")

    @property
    def complete(self) -> bool:
        """True when every term (-1)^n q^(n^2) z^n below q^q_order has |n| <= z_range."""
        return self.z_range**2 >= self.q_order

    def describe(self) -> str:
        return f"z^-{self.z_range}..z^{self.z_range} x q^0..q^{self.q_order - 1}"


def _grid_to_biseries(grid: list[list[int]], zmax: int, window: TripleProductWindow) -> BiSeries:
    Z = window.z_range
    rows = tuple(LaurentSeries(0, tuple(grid[z + zmax])) for z in range(-Z, Z + 1))
    return BiSeries(-Z, rows)


def triple_product_lhs(window: TripleProductWindow) -> BiSeries:
    """prod_{n>0} (1 - q^2n)(1 - q^(2n-1) z)(1 - q^(2n-1) z^-1) on the window."""
    N = window.q_order
    # a term with z^k has q-degree >= k^2, so |k| > isqrt(N-1) never reaches the window
    zmax = max(window.z_range, isqrt(max(N - 1, 0)))
    width = 2 * zmax + 1
    grid = [[0] * N for _ in range(width)]
    grid[zmax][0] = 1
    n = 1
    while 2 * n - 1 < N:
        odd, even = 2 * n - 1, 2 * n
        # (1 - q^2n): descending q so each source entry is read before it is overwritten
        if even < N:
            for row in grid:
                for k in range(N - 1, even - 1, -1):
                    if row[k - even]:
                        row[k] -= row[k - even]
        # (1 - q^odd z): z descending
        for z in range(width - 1, 0, -1):
            row, src = grid[z], grid[z - 1]
            for k in range(N - 1, odd - 1, -1):
                if src[k - odd]:
                    row[k] -= src[k - odd]
        # (1 - q^odd z^-1): z ascending
        for z in range(0, width - 1):
            row, src = grid[z], grid[z + 1]
            for k in range(N - 1, odd - 1, -1):
                if src[k - odd]:
                    row[k] -= src[k - odd]
        n += 1
    return _grid_to_biseries(grid, zmax, window)


def triple_product_rhs(window: TripleProductWindow) -> BiSeries:
    """sum_{|n| <= Z} (-1)^n q^(n^2) z^n on the window."""
    N, Z = window.q_order, window.z_range
    terms = {(n, n * n): (-1) ** n for n in range(-Z, Z + 1) if n * n < N}
    return BiSeries.from_terms(terms, -Z, Z + 1, N)


def verify_triple_product(window: TripleProductWindow, rhs: BiSeries | None = None) -> VerificationReport:
    """Coefficientwise comparison; ``rhs`` overrides the sum side (for constructed failures)."""
    if not window.complete:
        raise ValueError(
            f"z_range {window.z_range} is too small for q_order {window.q_order}: "
            f"need z_range^2 >= q_order or the sum side is incomplete"
        )
    watch = Stopwatch()
    lhs = triple_product_lhs(window)
    rhs = triple_product_rhs(window) if rhs is None else rhs
    return compare_pairs("triple-product", window.describe(), lhs.aligned(rhs), watch)


@dataclass(frozen=True)
class DysonReport:
    m: int
    prefactor_exponent: Fraction
    expansion: LaurentSeries
    nonzero_count: int
    density: float
    in_dyson_list: bool

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "prefactor_exponent": str(self.prefactor_exponent),
            "order": self.expansion.order,
            "nonzero_count": self.nonzero_count,
            "density": self.density,
            "in_dyson_list": self.in_dyson_list,
        }


def dyson_eta_report(m: int, order: int) -> DysonReport:
    """How sparse the product part of eta^m is below q^order."""
    in_list = m in DYSON_LIST
    if not in_list:
        warnings.warn(f"m={m} is not in the list {DYSON_LIST}", stacklevel=2)
    eta = eta_power(m, order)
    nonzero = sum(1 for _ in eta.product_part.terms())
    return DysonReport(m, eta.prefactor_exponent, eta.product_part, nonzero, nonzero / order, in_list)
