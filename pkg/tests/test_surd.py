from __future__ import annotations

from fractions import Fraction
from math import isqrt

from hypothesis import given
from hypothesis import strategies as st

from kneser.surd import Surd, format_decimal, sqrt_bracket

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=40)
radicands = st.fractions(min_value=0, max_value=200, max_denominator=30)


def test_sign_exact_cancellation():
    assert Surd(-2, 1, 4).sign() == 0
    assert Surd(Fraction(-3, 2), 1, Fraction(9, 4)).sign() == 0
    assert Surd(-1, 1, 2).sign() == 1
    assert Surd(2, -1, 5).sign() == -1
    assert Surd(0, 0, 7).sign() == 0


def test_arithmetic_and_rationality():
    x = Surd(1, 2, 3) + Surd(Fraction(1, 2), -1, 3)
    assert x == Surd(Fraction(3, 2), 1, 3)
    assert (x * 2).a == 3
    assert Surd(1, 1, 4).is_rational
    assert Surd(1, 1, 4).as_fraction() == 3
    assert not Surd(0, 1, 2).is_rational


def test_format_decimal_directed():
    assert format_decimal(Surd(0, 1, 2), "down") == "1.41421356237"
    assert format_decimal(Surd(0, 1, 2), "up") == "1.41421356238"
    assert format_decimal(Fraction(91, 4), "up") == "22.7500000000"
    assert format_decimal(Fraction(-1, 3), "down") == "-0.333333333334"
    assert format_decimal(0) == "0"


@given(radicands)
def test_sqrt_bracket_encloses(d):
    lo, hi = sqrt_bracket(d, 40)
    assert lo >= 0
    assert lo * lo <= d <= hi * hi


@given(fractions, fractions, radicands)
def test_sign_matches_bracket(a, b, d):
    x = Surd(a, b, d)
    lo, hi = x.bracket()
    assert lo <= hi
    sgn = x.sign()
    if sgn > 0:
        assert hi > 0
    elif sgn < 0:
        assert lo < 0
    else:
        assert lo == hi == 0 or (a * a == b * b * d)


@given(st.integers(0, 10**6), fractions)
def test_perfect_square_radicands_are_rational(r, a):
    x = Surd(a, 1, r * r)
    assert x.is_rational
    assert x.as_fraction() == a + r
    assert isqrt(r * r) == r


@given(fractions, fractions, radicands, fractions)
def test_ordering_consistent(a, b, d, c):
    x = Surd(a, b, d)
    assert (x < c) == (not x >= c)
    assert (x <= c) == (x < c or (x - c).sign() == 0)
