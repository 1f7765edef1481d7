"""Fixed-point decimal arithmetic for exp(pi sqrt 163) and j((1 + i sqrt 163)/2).

All routines work on integers scaled by a power of ten.  ``digits`` always
counts digits after the decimal point, and a returned :class:`BigDecimal`
with ``precision = d`` is within ``10**-d`` of the true value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import isqrt

from .modular import j_minus_744
from .report import Mismatch, Status, Stopwatch, VerificationReport, compare_pairs

__all__ = [
    "BigDecimal",
    "CM163_J_VALUE",
    "PRINTED_EXP_PI_SQRT163",
    "compute_pi",
    "exp_digits_check",
    "exp_big",
    "exp_pi_sqrt163",
    "factorization_check",
    "j_at_cm163",
    "j_partial_sum",
    "residual_check",
    "sqrt_int",
]

PRINTED_EXP_PI_SQRT163 = "262537412640768743.99999999999925"
CM163_FACTORS = {2: 18, 3: 3, 5: 3, 23: 3, 29: 3}
CM163_J_VALUE = -262537412640768000

_GUARD = 10


@dataclass(frozen=True)
class BigDecimal:
    """``mantissa * 10**-scale``, within ``10**-precision`` of the value it stands for.

    ``exact`` marks values that carry no error at all (integers, exact inputs).
    """

    mantissa: int
    scale: int
    precision: int
    exact: bool = False

    def __post_init__(self) -> None:
        if self.precision > self.scale:
            raise ValueError("precision cannot exceed the number of stored digits")

    @classmethod
    def from_int(cls, n: int, scale: int = 0) -> BigDecimal:
        return cls(n * 10**scale, scale, scale, exact=True)

    def truncated_str(self, digits: int) -> str:
        """Decimal string cut (not rounded) after ``digits`` fractional digits."""
        if digits > self.scale:
            raise ValueError(f"only {self.scale} digits are stored")
        sign = "-" if self.mantissa < 0 else ""
        m = abs(self.mantissa) // 10 ** (self.scale - digits)
        if digits == 0:
            return f"{sign}{m}"
        whole, frac = divmod(m, 10**digits)
        return f"{sign}{whole}.{frac:0{digits}d}"

    def __str__(self) -> str:
        return self.truncated_str(self.scale)

    def to_scientific(self, significant: int = 6) -> str:
        if self.mantissa == 0:
            return f"0e-{self.scale}"
        s = str(abs(self.mantissa))
        exp = len(s) - 1 - self.scale
        body = s[0] + ("." + s[1:significant] if significant > 1 and len(s) > 1 else "")
        return f"{'-' if self.mantissa < 0 else ''}{body}e{exp:+03d}"

    def __float__(self) -> float:
        return self.mantissa / 10**self.scale


def _round_div(a: int, b: int) -> int:
    q, r = divmod(abs(a), b)
    if 2 * r >= b:
        q += 1
    return q if a >= 0 else -q


def _arctan_inv(x: int, one: int) -> int:
    """arctan(1/x) * one; each of the ~log(one)/log(x^2) terms truncates by < 1 unit."""
    total = 0
    power = one // x
    x2 = x * x
    k = 0
    while power:
        term = power // (2 * k + 1)
        total += -term if k % 2 else term
        power //= x2
        k += 1
    return total


def compute_pi(digits: int) -> BigDecimal:
    """pi by Machin's formula 16 atan(1/5) - 4 atan(1/239)."""
    if digits < 1:
        raise ValueError("digits must be at least 1")
    work = digits + _GUARD
    one = 10**work
    pi = 16 * _arctan_inv(5, one) - 4 * _arctan_inv(239, one)
    # error < 20 * (number of terms) units of 10^-work, far below the guard
    return BigDecimal(pi // 10**_GUARD, digits, digits)


def sqrt_int(n: int, digits: int) -> BigDecimal:
    """floor(sqrt(n) * 10^digits) / 10^digits via the integer Newton square root."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if digits < 0:
        raise ValueError("digits must be non-negative")
    return BigDecimal(isqrt(n * 10 ** (2 * digits)), digits, digits)


def _exp_fixed(x: int, scale: int) -> int:
    """exp(x / 10^scale) * 10^scale for a non-negative exact input.

    Halve the argument k times until it is below 1, sum the Taylor series and
    square back.  Each squaring at most doubles the relative error, so the
    working scale carries k*log10(2) extra digits plus the result magnitude.
    """
    if x < 0:
        raise ValueError("internal: non-negative argument expected")
    one = 10**scale
    k = 0
    while (x >> k) >= one:
        k += 1
    magnitude = int(x / one / math.log(10)) + 2
    work = scale + _GUARD + magnitude + int(k * 0.302) + 2
    w_one = 10**work
    r = (x * 10 ** (work - scale)) >> k  # floor; truncation error < 1 unit, amplified by 2^k
    term = w_one
    total = w_one
    i = 1
    while term:
        term = term * r // (w_one * i)
        total += term
        i += 1
    for _ in range(k):
        total = total * total // w_one
    return total // 10 ** (work - scale)


def exp_big(x: BigDecimal, digits: int) -> BigDecimal:
    """e**x to ``digits`` fractional digits.

    Unless ``x`` is exact, its own error of up to 10^-p moves the result by
    about e^x 10^-p, and the declared precision drops accordingly.
    """
    if digits < 0:
        raise ValueError("digits must be non-negative")
    mag = max(0, math.ceil(float(x) / math.log(10)))
    scale = digits + _GUARD + mag
    if scale >= x.scale:
        xm = x.mantissa * 10 ** (scale - x.scale)
    else:
        xm = _round_div(x.mantissa, 10 ** (x.scale - scale))
    if xm >= 0:
        m = _exp_fixed(xm, scale)
    else:
        m = 10 ** (2 * scale) // _exp_fixed(-xm, scale)
    precision = digits
    if not x.exact:
        precision = max(0, min(digits, x.precision - mag - 1))
    return BigDecimal(_round_div(m, 10 ** (scale - digits)), digits, precision, exact=x.exact and x.mantissa == 0)


def _mul(a: BigDecimal, b: BigDecimal, scale: int) -> BigDecimal:
    """Product to ``scale`` digits.

    Error is |a| eb + |b| ea + ea eb plus one unit of flooring; the inputs here
    are below 100 in size, so two digits of headroom cover it.
    """
    m = a.mantissa * b.mantissa // 10 ** (a.scale + b.scale - scale)
    return BigDecimal(m, scale, max(0, min(a.precision, b.precision, scale) - 3))


def exp_pi_sqrt163(digits: int) -> BigDecimal:
    """exp(pi sqrt 163) correct to ``digits`` fractional digits."""
    # e^x ~ 2.6e17 amplifies the argument error by 18 digits
    work = digits + 25
    x = _mul(compute_pi(work), sqrt_int(163, work), work)
    result = exp_big(x, digits)
    assert result.precision == digits
    return result


def tail_bound_log10(series_order: int, x: float) -> float:
    """log10 of an upper bound for |sum_{n >= K} c(n) q^n| with |q| = e^-x.

    Uses c(n) <= exp(4 pi sqrt n); consecutive bound terms shrink by at least
    exp(2 pi / sqrt K - x), so the tail is a geometric series.
    """
    K = series_order
    if K < 1:
        K = 1
    ratio = 2 * math.pi / math.sqrt(K) - x
    if ratio >= 0:
        return math.inf
    head = 4 * math.pi * math.sqrt(K) - K * x
    return (head - math.log1p(-math.exp(ratio))) / math.log(10)


def j_partial_sum(digits: int, series_order: int, q_sign: int = -1) -> BigDecimal:
    """q^-1 + 744 + sum_{1 <= n < K} c(n) q^n at q = q_sign * e^(-pi sqrt 163), no tail check.

    ``series_order`` K is the exclusive upper exponent, so K = 1 keeps only
    q^-1 + 744.  ``q_sign = 0`` would put q at zero, where q^-1 is undefined.
    """
    if q_sign == 0:
        raise ValueError("q = 0: the q^-1 term is undefined")
    if q_sign not in (1, -1):
        raise ValueError("q_sign must be +1 or -1")
    if series_order < 0:
        raise ValueError("series order must be non-negative")
    work = digits + _GUARD
    E = exp_pi_sqrt163(work).mantissa  # e^x * 10^work, off by < 1 unit
    one = 10**work
    q = q_sign * (one * one // E)  # |q| < 1e-17, off by < 1 unit
    total = q_sign * E + (744 * one if series_order > 0 else 0)
    c = j_minus_744(max(series_order, 1))
    power = one
    for n in range(1, series_order):
        power = power * q // one
        total += c.coefficient_at(n) * power
    # accumulated error is a few times c(1) units of 10^-work, below 10^-(digits+4)
    return BigDecimal(_round_div(total, 10**_GUARD), digits, digits)


def j_at_cm163(digits: int, series_order: int = 8) -> BigDecimal:
    """j((1 + i sqrt 163)/2) from the q-expansion, with the tail bounded below 10^-(digits+1)."""
    if series_order < 1:
        raise ValueError("series order must be at least 1 (the constant term 744)")
    x = math.pi * math.sqrt(163) - 1e-9
    bound = tail_bound_log10(series_order, x)
    if bound >= -digits - 1:
        raise ValueError(
            f"series order {series_order} only bounds the tail by 10^{bound:.1f}; "
            f"10^-{digits + 1} is required"
        )
    return j_partial_sum(digits, series_order)


def factorization_check(exponents: dict[int, int] | None = None) -> VerificationReport:
    """2^18 3^3 5^3 23^3 29^3, negated, against j((1 + i sqrt 163)/2)."""
    watch = Stopwatch()
    exponents = CM163_FACTORS if exponents is None else exponents
    product = 1
    for p, e in exponents.items():
        product *= p**e
    label = ".".join(f"{p}^{e}" for p, e in exponents.items())
    return compare_pairs("cm163-factorization", label, [(0, -product, CM163_J_VALUE)], watch)


def exp_digits_check(digits: int = 35) -> tuple[VerificationReport, BigDecimal]:
    """Character comparison of exp(pi sqrt 163) with the printed digit string."""
    watch = Stopwatch()
    value = exp_pi_sqrt163(digits)
    printed_frac = len(PRINTED_EXP_PI_SQRT163.split(".")[1])
    shown = min(digits, printed_frac)
    printed = PRINTED_EXP_PI_SQRT163[: len(PRINTED_EXP_PI_SQRT163) - (printed_frac - shown)]
    text = value.truncated_str(shown)
    pairs = [(i, a, b) for i, (a, b) in enumerate(zip(text.ljust(len(printed)), printed))]
    if len(text) != len(printed):
        pairs.append((len(printed), text, printed))
    report = compare_pairs("cm163-exp", f"{shown} fractional digits of {digits}", pairs, watch)
    return report, value


def residual_check(digits: int = 35, series_order: int = 8) -> tuple[VerificationReport, BigDecimal]:
    """|j((1 + i sqrt 163)/2) + 262537412640768000| < 1e-10."""
    watch = Stopwatch()
    j = j_at_cm163(digits, series_order)
    residual = BigDecimal(j.mantissa - CM163_J_VALUE * 10**j.scale, j.scale, j.precision)
    ok = abs(residual.mantissa) < 10 ** (residual.scale - 10)
    window = f"|j + 262537412640768000| < 1e-10, {digits} digits, series order {series_order}"
    mismatch = None if ok else Mismatch((0,), residual.to_scientific(), "< 1e-10")
    status = Status.VERIFIED if ok else Status.FAILED
    return VerificationReport("cm163-j", window, status, mismatch, 1, watch.ms()), residual
