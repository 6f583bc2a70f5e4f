import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quadsieve.exact import (
    factorize,
    format_rational,
    parse_rational,
    phase_mod1,
    reduce_fraction,
    totient_sum,
    totients,
)


def test_reduce_examples():
    assert reduce_fraction(2, 4) == Fraction(1, 2)
    assert reduce_fraction(-3, -6) == Fraction(1, 2)
    assert reduce_fraction(0, 7) == Fraction(0, 1)
    assert reduce_fraction(0, 7).denominator == 1


def test_reduce_lowest_terms_and_sign():
    value = reduce_fraction(10, -4)
    assert value.denominator > 0
    assert math.gcd(abs(value.numerator), value.denominator) == 1
    assert value == Fraction(-5, 2)


def test_reduce_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        reduce_fraction(1, 0)


@settings(max_examples=200, deadline=None)
@given(
    num=st.integers(-10**9, 10**9),
    den=st.integers(-10**6, 10**6).filter(lambda v: v != 0),
    k=st.integers(-1000, 1000).filter(lambda v: v != 0),
)
def test_reduce_scaling_invariance(num, den, k):
    assert reduce_fraction(num * k, den * k) == reduce_fraction(num, den)


def test_phase_mod1_examples():
    assert phase_mod1(Fraction(1, 3), 4) == Fraction(1, 3)
    assert phase_mod1(Fraction(1, 2), 2) == Fraction(0)
    assert phase_mod1(Fraction(2, 7), 100) == Fraction(4, 7)


@settings(max_examples=200, deadline=None)
@given(
    num=st.integers(-10**6, 10**6),
    den=st.integers(1, 10**6),
    y=st.integers(-(10**18), 10**18),
)
def test_phase_mod1_integer_difference(num, den, y):
    x = Fraction(num, den)
    phase = phase_mod1(x, y)
    assert 0 <= phase < 1
    assert (x * y - phase).denominator == 1  # difference is an exact integer


def test_totient_sum_small():
    assert totient_sum(1) == 1
    assert totient_sum(3) == 4


def test_totient_sum_100_against_gcd_count():
    # Independent oracle: count coprime pairs directly.
    direct = sum(
        1 for q in range(1, 101) for a in range(1, q + 1) if math.gcd(a, q) == 1
    )
    assert direct == 3044
    assert totient_sum(100) == direct


def test_totients_against_gcd_count():
    phis = totients(120)
    for q in range(1, 121):
        assert phis[q] == sum(1 for a in range(1, q + 1) if math.gcd(a, q) == 1)


def test_totient_sum_rejects_nonpositive():
    with pytest.raises(ValueError):
        totient_sum(0)


def test_factorize_examples():
    assert factorize(1) == []
    assert factorize(12) == [(2, 2), (3, 1)]
    assert factorize(1105) == [(5, 1), (13, 1), (17, 1)]


def test_factorize_rejects_nonpositive():
    with pytest.raises(ValueError):
        factorize(0)


@settings(max_examples=300, deadline=None)
@given(n=st.integers(1, 10**6))
def test_factorize_recomposes(n):
    product = 1
    for prime, exponent in factorize(n):
        assert exponent >= 1
        # primality by trial division, independent of the factorizer
        assert prime >= 2
        assert all(prime % d != 0 for d in range(2, math.isqrt(prime) + 1))
        product *= prime**exponent
    assert product == n


def test_format_parse_roundtrip():
    assert format_rational(Fraction(3, 7)) == "3/7"
    assert format_rational(Fraction(-1, 2)) == "-1/2"
    assert format_rational(Fraction(5)) == "5/1"
    assert parse_rational("3/7") == Fraction(3, 7)
    assert parse_rational("-4") == Fraction(-4)
    assert parse_rational(9) == Fraction(9)


def test_parse_rational_rejects_floats():
    with pytest.raises(TypeError):
        parse_rational(0.5)
