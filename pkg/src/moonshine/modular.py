"""q-expansions of E4, Delta, j, powers of eta and eta quotients."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction

from .series import LaurentSeries, invert, mul, product_expansion

__all__ = [
    "EtaExpansion",
    "delta_series",
    "eisenstein_e4",
    "eta_power",
    "eta_quotient",
    "j_minus_744",
    "j_series",
    "sigma3",
]


def sigma3(n: int) -> int:
    """Sum of the cubes of the divisors of ``n``."""
    if n <= 0:
        raise ValueError(f"sigma3 is defined for positive integers, got {n}")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d**3
            e = n // d
            if e != d:
                total += e**3
        d += 1
    return total


def _sigma3_table(order: int) -> list[int]:
    table = [0] * order
    for d in range(1, order):
        c = d**3
        for k in range(d, order, d):
            table[k] += c
    return table


def eisenstein_e4(order: int) -> LaurentSeries:
    if order < 1:
        raise ValueError("order must be at least 1")
    s = _sigma3_table(order)
    return LaurentSeries(0, (1,) + tuple(240 * s[n] for n in range(1, order)))


def delta_series(order: int) -> LaurentSeries:
    """Delta = q * prod (1 - q^n)^24, known below q^order."""
    if order < 2:
        raise ValueError("order must be at least 2")
    return product_expansion(lambda n: 24, order - 1).shift(1)


def j_series(order: int) -> LaurentSeries:
    """j = E4^3 / Delta, known below q^order."""
    if order < 0:
        raise ValueError("order must be non-negative")
    e4 = eisenstein_e4(order + 1)
    e4_cubed = mul(mul(e4, e4), e4)
    inv_delta = invert(delta_series(order + 2))
    return mul(e4_cubed, inv_delta).truncate(order)


def j_minus_744(order: int) -> LaurentSeries:
    """The canonical provider of c(n): j - 744 = sum c(n) q^n."""
    j = j_series(max(order, 1))
    return j.with_coefficient(0, 0).truncate(order) if order > 0 else j.truncate(order)


@dataclass(frozen=True)
class EtaExpansion:
    """``q^prefactor_exponent * product_part`` with an exact rational prefactor."""

    prefactor_exponent: Fraction
    product_part: LaurentSeries

    def __post_init__(self) -> None:
        if self.product_part.valuation != 0 or self.product_part.coefficient_at(0) != 1:
            raise ValueError("eta product part must start 1 + O(q)")
        if 24 % Fraction(self.prefactor_exponent).denominator:
            raise ValueError(f"prefactor q^{self.prefactor_exponent} is not in (1/24)Z")

    def as_laurent(self) -> LaurentSeries:
        if self.prefactor_exponent.denominator != 1:
            raise ValueError(f"q^{self.prefactor_exponent} prefactor is not an integer power of q")
        return self.product_part.shift(int(self.prefactor_exponent))

    def __str__(self) -> str:
        if self.prefactor_exponent == 0:
            return str(self.product_part)
        e = self.prefactor_exponent
        head = f"q^{e}" if e.denominator == 1 else f"q^({e})"
        return f"{head} * ({self.product_part})"


def eta_power(m: int, order: int) -> EtaExpansion:
    """eta(tau)^m = q^(m/24) prod (1 - q^n)^m; the product part is known below q^order."""
    return EtaExpansion(Fraction(m, 24), product_expansion(lambda n: m, order))


def eta_quotient(powers: Mapping[int, int], order: int) -> LaurentSeries:
    """prod_d eta(d tau)^{r_d} as an integer-valuation Laurent series known below q^order."""
    powers = {int(d): int(r) for d, r in powers.items() if r}
    if not powers:
        raise ValueError("eta quotient needs at least one nonzero power")
    if any(d < 1 for d in powers):
        raise ValueError(f"scale factors must be positive, got {sorted(powers)}")
    prefactor = sum(Fraction(d * r, 24) for d, r in powers.items())
    if prefactor.denominator != 1:
        raise ValueError(f"total prefactor exponent {prefactor} is not an integer")
    shift = int(prefactor)
    need = order - shift
    if need < 1:
        raise ValueError(f"order {order} does not reach the leading term q^{shift}")
    product = LaurentSeries.one(need)
    for d, r in sorted(powers.items()):
        part = eta_power(r, -(-need // d)).product_part.dilate(d)
        product = mul(product, part)
    return product.truncate(need).shift(shift)
