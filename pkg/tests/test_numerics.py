"""Exact arithmetic: floor logs, powers, and the exp(-x) series."""

from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from pareto_cover import (
    DomainError,
    PowerCache,
    ValidationError,
    ZERO,
    approx_exp_neg,
    floor_log,
    pow_rational,
    rat,
    rat_str,
)
from pareto_cover.numerics import ceil_log, ceil_log2, exponent_sort_key

rationals = st.fractions(
    min_value=Fraction(-50), max_value=Fraction(50), max_denominator=40
)
positive_rationals = st.fractions(
    min_value=Fraction(1, 40), max_value=Fraction(50), max_denominator=40
)


def brute_floor_log(base, x):
    """Independent oracle: scan exponents with exact powers."""
    e = 0
    if base**e <= x:
        while base ** (e + 1) <= x:
            e += 1
    else:
        while base**e > x:
            e -= 1
    return e


class TestFloorLog:
    def test_identity_case(self):
        assert floor_log(mpq(2), mpq(1)) == 0

    def test_three_halves_of_four(self):
        # (3/2)^3 = 27/8 <= 4 < (3/2)^4 = 81/16
        assert floor_log(mpq(3, 2), mpq(4)) == 3

    def test_small_base_large_value(self):
        base = 1 + mpq(1, 40)
        x = mpq(19366, 12167)
        expected = brute_floor_log(base, x)
        assert expected == 18
        assert floor_log(base, x) == expected

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            floor_log(mpq(1), mpq(2))
        with pytest.raises(DomainError):
            floor_log(mpq(1, 2), mpq(2))
        with pytest.raises(DomainError):
            floor_log(mpq(2), mpq(0))
        with pytest.raises(DomainError):
            floor_log(mpq(2), mpq(-1))

    @given(
        base=st.fractions(
            min_value=Fraction(101, 100), max_value=Fraction(9), max_denominator=100
        ),
        x=positive_rationals,
    )
    def test_bracketing_invariant(self, base, x):
        b, q = rat(base), rat(x)
        e = floor_log(b, q)
        assert b**e <= q < b ** (e + 1)

    @pytest.mark.parametrize("base", [mpq(3, 2), mpq(21, 20), mpq(101, 100)])
    def test_exact_powers_round_trip(self, base):
        for e in range(-200, 201):
            assert floor_log(base, base**e) == e

    @given(
        base=st.fractions(
            min_value=Fraction(101, 100), max_value=Fraction(9), max_denominator=100
        ),
        x=positive_rationals,
    )
    @settings(max_examples=60)
    def test_power_cache_agrees(self, base, x):
        cache = PowerCache(rat(base))
        assert cache.floor_log(rat(x)) == floor_log(rat(base), rat(x))
        # deliberately bad hints still land on the exact floor
        assert cache.floor_log(rat(x), hint=57) == floor_log(rat(base), rat(x))
        assert cache.floor_log(rat(x), hint=-91) == floor_log(rat(base), rat(x))

    def test_ceil_log(self):
        assert ceil_log(mpq(3, 2), mpq(4)) == 4
        assert ceil_log(mpq(2), mpq(8)) == 3  # exact power stays put
        assert ceil_log2(mpq(1, 96)) == -6
        assert ceil_log2(mpq(96)) == 7


class TestPowRational:
    def test_examples(self):
        assert pow_rational(mpq(3, 2), 2) == mpq(9, 4)
        assert pow_rational(mpq(7, 3), 0) == 1
        assert pow_rational(mpq(-5, 4), 0) == 1

    def test_forty_fold_product(self):
        base = mpq(21, 20)
        acc = mpq(1)
        for _ in range(40):
            acc *= base
        assert pow_rational(base, 40) == acc

    def test_negative_exponent(self):
        assert pow_rational(mpq(2, 3), -2) == mpq(9, 4)

    def test_zero_to_negative_rejected(self):
        with pytest.raises(DomainError):
            pow_rational(mpq(0), -1)


def reference_exp_neg(x, bits: int):
    """High-precision reference for exp(-x), good to 2**-bits relatively."""
    with mpmath.workprec(bits + 60):
        return mpmath.e ** (-mpmath.mpf(x.numerator) / mpmath.mpf(x.denominator))


class TestApproxExpNeg:
    def test_zero_collapses(self):
        assert approx_exp_neg(0, 10) == 1

    def test_x_one(self):
        y = approx_exp_neg(1, 10)
        ref = reference_exp_neg(mpq(1), 40)
        assert abs(mpmath.mpf(y.numerator) / mpmath.mpf(y.denominator) - ref) <= ref * 2**-10

    def test_x_two_m_twenty(self):
        y = approx_exp_neg(2, 20)
        ref = reference_exp_neg(mpq(2), 60)
        val = mpmath.mpf(y.numerator) / mpmath.mpf(y.denominator)
        assert abs(val - ref) <= ref * 2**-20

    def test_domain(self):
        with pytest.raises(DomainError):
            approx_exp_neg(mpq(5, 2), 4)
        with pytest.raises(DomainError):
            approx_exp_neg(mpq(-1, 2), 4)
        with pytest.raises(DomainError):
            approx_exp_neg(1, 0)

    @given(
        x=st.fractions(min_value=0, max_value=2, max_denominator=60),
        m=st.integers(min_value=1, max_value=30),
    )
    @settings(max_examples=80)
    def test_relative_error_bound(self, x, m):
        q = rat(x)
        y = approx_exp_neg(q, m)
        with mpmath.workprec(m + 80):
            ref = mpmath.e ** (-mpmath.mpf(q.numerator) / mpmath.mpf(q.denominator))
            val = mpmath.mpf(y.numerator) / mpmath.mpf(y.denominator)
            # reference is itself good to far beyond 2**-(m+16)
            assert abs(val - ref) <= ref * (2.0**-m) * (1 + 2.0**-15)


class TestRationalField:
    @given(a=rationals, b=rationals)
    def test_add_sub_cancel(self, a, b):
        qa, qb = rat(a), rat(b)
        assert (qa + qb) - qb == qa

    @given(a=rationals, b=rationals.filter(lambda f: f != 0))
    def test_mul_div_cancel(self, a, b):
        qa, qb = rat(a), rat(b)
        assert (qa * qb) / qb == qa

    def test_canonical_form(self):
        q = rat("-6/8")
        assert q.numerator == -3 and q.denominator == 4
        assert rat_str(q) == "-3/4"
        assert rat_str(rat(5)) == "5/1"

    def test_parsing(self):
        assert rat("7/2") == mpq(7, 2)
        assert rat("5") == 5
        assert rat(Fraction(1, 3)) == mpq(1, 3)
        assert rat(3, 6) == mpq(1, 2)

    def test_floats_rejected(self):
        with pytest.raises(ValidationError):
            rat(0.5)
        with pytest.raises(ValidationError):
            rat("abc")


class TestExponentCoding:
    def test_zero_below_everything(self):
        keys = [exponent_sort_key(e) for e in (ZERO, -(10**9), -1, 0, 3)]
        assert keys == sorted(keys)
        assert exponent_sort_key(ZERO) < exponent_sort_key(-(10**12))

    def test_power_cache_round_down(self):
        cache = PowerCache(1 + mpq(1, 4))
        assert cache.round_down(mpq(0)) is ZERO
        assert cache.round_down((1 + mpq(1, 4)) ** 5) == 5
        assert cache.round_down(mpq(2)) == 3  # (5/4)^3 = 125/64 <= 2 < (5/4)^4
        with pytest.raises(DomainError):
            cache.round_down(mpq(-1))
