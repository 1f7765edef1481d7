"""The product formula j(sigma) - j(tau) = p^-1 prod (1 - p^m q^n)^c(mn) and its inverse.

A :class:`KnzWindow` ``(P, Q)`` covers the two-variable coefficients of
``p^a q^b`` with ``-1 <= a < P`` and ``-1 <= b < Q``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .modular import j_minus_744
from .report import Stopwatch, VerificationReport, compare_pairs
from .series import BiSeries, ExponentTable, LaurentSeries, bi_product_expansion, multiply_factor

__all__ = [
    "KnzWindow",
    "extract_exponents",
    "knz_difference",
    "knz_product",
    "verify_c4_relation",
    "verify_knz",
]


@dataclass(frozen=True)
class KnzWindow:
    p_order: int
    q_order: int

    def __post_init__(self) -> None:
        if self.p_order < 1 or self.q_order < 1:
            raise ValueError(f"window orders must be positive, got ({self.p_order}, {self.q_order})")

    def describe(self) -> str:
        return f"p^-1..p^{self.p_order - 1} x q^-1..q^{self.q_order - 1}"


def _c_provider(coefficients: LaurentSeries | None, largest: int):
    c_series = j_minus_744(largest + 1) if coefficients is None else coefficients
    if c_series.order <= largest:
        raise ValueError(f"c(n) needed up to n={largest}, provider known below q^{c_series.order}")
    return c_series.coefficient_at


def knz_difference(window: KnzWindow, coefficients: LaurentSeries | None = None) -> BiSeries:
    """sum_m c(m) p^m - sum_n c(n) q^n on the window.

    ``coefficients`` replaces j - 744 as the source of c(n) (used for mutation tests).
    """
    P, Q = window.p_order, window.q_order
    c = _c_provider(coefficients, max(P, Q))
    rows = []
    for a in range(-1, P):
        if a == 0:
            # the constant terms c(0) of j(sigma) and j(tau) cancel
            row = LaurentSeries.from_list([-c(-1), 0] + [-c(n) for n in range(1, Q)], valuation=-1, order=Q)
        else:
            row = LaurentSeries.from_list([0, c(a)], valuation=-1, order=Q)
        rows.append(row)
    return BiSeries(-1, tuple(rows))


def knz_exponents(window: KnzWindow, coefficients: LaurentSeries | None = None) -> ExponentTable:
    """Exponent table {(m, n): c(mn)} for every factor that can reach the window.

    Only n >= -1 carry nonzero exponents, and since the single q^-1 factor
    (1 - p q^-1) has exponent 1, factors up to n = Q still reach q^(Q-1).
    Outer factors run to m = P because of the p^-1 shift.
    """
    P, Q = window.p_order, window.q_order
    c = _c_provider(coefficients, P * Q)
    return ExponentTable({(m, n): c(m * n) for m in range(1, P + 1) for n in range(-1, Q + 1)})


def knz_product(window: KnzWindow, coefficients: LaurentSeries | None = None) -> BiSeries:
    table = knz_exponents(window, coefficients)
    return bi_product_expansion(table, window.p_order, window.q_order, outer_valuation_shift=-1)


def verify_knz(window: KnzWindow, coefficients: LaurentSeries | None = None) -> VerificationReport:
    watch = Stopwatch()
    lhs = knz_difference(window, coefficients)
    rhs = knz_product(window, coefficients)
    return compare_pairs("knz", window.describe(), lhs.aligned(rhs), watch)


def extract_exponents(series: BiSeries, window: KnzWindow) -> ExponentTable:
    """Integer exponents e(m, n) with series = p^v prod (1 - p^m q^n)^e(m,n).

    ``v`` is the outer valuation of ``series``; its row must be exactly 1.
    Returns e(m, n) for 1 <= m < P and -1 <= n < Q.  Dividing out factors with
    n = -1 costs one power of q per step in p, so the input has to be known to a
    higher q-order than the window; a ValueError says when it is not.
    """
    P, Q = window.p_order, window.q_order
    rows = list(series.rows)
    if len(rows) < P:
        raise ValueError(f"series tracks {len(rows)} outer rows, window needs {P}")
    rows = rows[:P]
    head = rows[0]
    if head.order <= 0:
        raise ValueError("leading row carries no constant term")
    for e, c in head.terms():
        if e != 0:
            raise ValueError(f"leading row must be exactly 1, found {c}*q^{e}")
    u = head.coefficient_at(0)
    if u != 1:
        raise ValueError(f"leading coefficient {u} is not 1: the exponents would not be integers")

    table: dict[tuple[int, int], int] = {}
    for m in range(1, P):
        row = rows[m]
        if row.order < Q:
            raise ValueError(
                f"row p^{m} is determined only below q^{row.order} after dividing out lower factors; "
                f"window needs q^{Q} (supply the series to a larger inner order)"
            )
        for n, c in row.terms():
            if n < -1:
                raise ValueError(f"factor (1 - p^{m} q^{n}) lies outside the window n >= -1")
        found = [(n, -c) for n, c in row.terms()]
        for n, e in found:
            if n < Q:
                table[(m, n)] = e
        for n, e in found:
            rows = multiply_factor(rows, m, n, -e)
        assert rows[m].is_zero()
    return ExponentTable(table)


def verify_c4_relation(coefficients: LaurentSeries | None = None) -> VerificationReport:
    """c(4) = c(3) + (c(1)^2 - c(1))/2, plus the three printed values."""
    watch = Stopwatch()
    c = _c_provider(coefficients, 5)
    c1, c3, c4 = c(1), c(3), c(4)
    pairs = [
        (1, c1, 196884),
        (3, c3, 864299970),
        (4, c4, 20245856256),
        (4, c4, c3 + (c1 * c1 - c1) // 2),
    ]
    return compare_pairs("c4-relation", "c(1), c(3), c(4) from j - 744", pairs, watch)
