import math
from decimal import Decimal

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from moonshine.cm163 import (
    CM163_J_VALUE,
    PRINTED_EXP_PI_SQRT163,
    BigDecimal,
    compute_pi,
    exp_big,
    exp_digits_check,
    exp_pi_sqrt163,
    factorization_check,
    j_at_cm163,
    j_partial_sum,
    residual_check,
    sqrt_int,
)
from moonshine.report import Status


def _close(value: BigDecimal, oracle: mpmath.mpf, digits: int) -> bool:
    err = abs(mpmath.mpf(value.mantissa) / mpmath.mpf(10) ** value.scale - oracle)
    return err <= mpmath.mpf(10) ** (-digits)


def test_pi():
    assert str(compute_pi(10)).startswith("3.141592653")
    assert compute_pi(1).truncated_str(1) == "3.1"
    mpmath.mp.dps = 220
    for d in (1, 10, 50, 200):
        assert _close(compute_pi(d), mpmath.pi, d)
    assert compute_pi(40).truncated_str(10) == compute_pi(10).truncated_str(10)


def test_sqrt():
    assert sqrt_int(4, 10).mantissa == 2 * 10**10
    assert sqrt_int(0, 5).mantissa == 0
    r = sqrt_int(163, 15)
    assert str(r).startswith("12.76714533")
    sq = r.mantissa**2
    assert abs(sq - 163 * 10**30) < 10 ** (30 - 13)
    with pytest.raises(ValueError):
        sqrt_int(-1, 3)


def test_exp_zero():
    r = exp_big(BigDecimal.from_int(0, 5), 20)
    assert r.mantissa == 10**20


@settings(max_examples=60, deadline=None)
@given(st.integers(-50 * 10**6, 50 * 10**6), st.integers(5, 60))
def test_exp_against_mpmath(xm, digits):
    mpmath.mp.dps = digits + 40
    x = BigDecimal(xm, 6, 6, exact=True)
    r = exp_big(x, digits)
    assert r.precision == digits
    assert _close(r, mpmath.exp(mpmath.mpf(xm) / 10**6), digits)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 20 * 10**6), st.integers(5, 40))
def test_exp_functional_identity(xm, digits):
    pos = exp_big(BigDecimal(xm, 6, 6, exact=True), digits + 10)
    neg = exp_big(BigDecimal(-xm, 6, 6, exact=True), digits + 10)
    prod_ = pos.mantissa * neg.mantissa
    one = 10 ** (2 * (digits + 10))
    # e^x < 1e9 here, so the 10 guard digits absorb its amplification of exp(-x)'s error
    assert abs(prod_ - one) < 10 ** (2 * (digits + 10) - digits + 2)


def test_inexact_input_lowers_declared_precision():
    x = BigDecimal(12345678, 6, 4)
    r = exp_big(x, 20)
    assert r.precision < 4


def test_exp_pi_sqrt163():
    mpmath.mp.dps = 80
    oracle = mpmath.exp(mpmath.pi * mpmath.sqrt(163))
    for d in (15, 35, 40, 60):
        assert _close(exp_pi_sqrt163(d), oracle, d)
    v = exp_pi_sqrt163(40)
    assert v.truncated_str(14) == PRINTED_EXP_PI_SQRT163
    assert str(exp_pi_sqrt163(35)).startswith("262537412640768743.99999999999925")


def test_more_precision_changes_only_lower_digits():
    for d in (20, 35, 50):
        a, b = exp_pi_sqrt163(d), exp_pi_sqrt163(d + 10)
        assert abs(b.mantissa - a.mantissa * 10**10) <= 10**10


def test_j_at_cm163():
    j = j_at_cm163(12, 6)
    assert abs(j.mantissa - CM163_J_VALUE * 10**12) < 10 ** (12 - 10)
    j40 = j_at_cm163(40, 8)
    assert abs(j40.mantissa - CM163_J_VALUE * 10**40) < 10 ** (40 - 10)


def test_two_term_partial_sum_is_off_by_tiny_amount():
    s = j_partial_sum(20, 1)
    off = Decimal(s.mantissa - CM163_J_VALUE * 10**20) / Decimal(10**20)
    assert abs(off - Decimal("7.4992740e-13")) < Decimal("1e-19")


def test_cm163_guards():
    with pytest.raises(ValueError, match="undefined"):
        j_partial_sum(20, 3, q_sign=0)
    with pytest.raises(ValueError, match="tail"):
        j_at_cm163(40, 2)
    with pytest.raises(ValueError):
        j_at_cm163(20, 0)


def test_tail_bound_is_checked_not_assumed():
    # orders that pass the check really leave only a small tail
    mpmath.mp.dps = 60
    q = -mpmath.exp(-mpmath.pi * mpmath.sqrt(163))
    from moonshine.modular import j_minus_744

    c = j_minus_744(40)
    full = sum(c[n] * q**n for n in range(-1, 40)) + 744
    for k in range(1, 10):
        try:
            j = j_at_cm163(30, k)
        except ValueError:
            continue
        assert _close(j, full, 29)


def test_factorization():
    r = factorization_check()
    assert r.status is Status.VERIFIED
    assert 2**18 * 3**3 * 5**3 * 23**3 * 29**3 == -CM163_J_VALUE
    bad = factorization_check({2: 17, 3: 3, 5: 3, 23: 3, 29: 3})
    assert bad.status is Status.FAILED


def test_reports():
    rep, value = exp_digits_check(40)
    assert rep.status is Status.VERIFIED
    rep, residual = residual_check(40, 8)
    assert rep.status is Status.VERIFIED
    assert abs(residual.mantissa) < 10 ** (residual.scale - 10)


def test_bigdecimal_rendering():
    b = BigDecimal(-12345, 3, 3)
    assert str(b) == "-12.345"
    assert b.truncated_str(1) == "-12.3"
    assert BigDecimal(0, 35, 35).to_scientific() == "0e-35"
    assert BigDecimal(75, 15, 15).to_scientific() == "7.5e-14"
    assert math.isclose(float(b), -12.345)
    with pytest.raises(ValueError):
        BigDecimal(1, 2, 3)
