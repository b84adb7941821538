from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from eulerbound.intervals import (
    RationalInterval,
    Verdict,
    compare_le,
    decimal_str,
    ln2,
    log_interval,
    round_down,
    round_up,
)

mpmath.mp.dps = 80


def mp(q):
    return mpmath.mpf(q.numerator) / q.denominator


def encloses(interval, value):
    return mp(interval.lo) <= value <= mp(interval.hi)


def test_ln2_enclosure():
    I = ln2(128)
    assert encloses(I, mpmath.log(2))
    assert I.width < Fraction(1, 2**126)


@pytest.mark.parametrize("x", [2, 3, 10, 100, 10**6, Fraction(1, 3), Fraction(7, 5), Fraction(3, 4),
                               Fraction(10**40 + 7, 3**50), Fraction(1, 10**30)])
def test_log_encloses_true_value(x):
    x = Fraction(x)
    I = log_interval(x)
    assert encloses(I, mpmath.log(mp(x)))
    assert I.width < Fraction(1, 2**90)


@given(st.fractions(min_value=Fraction(1, 10**9), max_value=10**12))
def test_log_property(x):
    I = log_interval(x, 64)
    assert encloses(I, mpmath.log(mp(x)))


def test_log_of_interval_is_monotone_hull():
    I = log_interval(RationalInterval(Fraction(3, 2), Fraction(5, 2)), 64)
    assert encloses(I, mpmath.log(1.5)) and encloses(I, mpmath.log(2.5))


def test_interval_arithmetic():
    a = RationalInterval(1, 2)
    b = RationalInterval(-3, 1)
    assert (a + b) == RationalInterval(-2, 3)
    assert (a * b) == RationalInterval(-6, 2)
    assert a.reciprocal() == RationalInterval(Fraction(1, 2), 1)
    assert abs(b) == RationalInterval(0, 3)
    with pytest.raises(ZeroDivisionError):
        b.reciprocal()
    with pytest.raises(ValueError):
        RationalInterval(2, 1)


def test_three_valued_compare():
    assert compare_le(RationalInterval(0, 1), 1) is Verdict.HOLDS
    assert compare_le(RationalInterval(0, 2), 1) is Verdict.INDETERMINATE
    assert compare_le(RationalInterval(Fraction(3, 2), 2), 1) is Verdict.FAILS


@given(st.fractions(min_value=-1000, max_value=1000), st.integers(1, 80))
def test_rounding_brackets(q, bits):
    assert round_down(q, bits) <= q <= round_up(q, bits)


def test_decimal_str_truncates():
    assert decimal_str(Fraction(2, 3), 4) == "0.6666"
    assert decimal_str(Fraction(-5, 2), 2) == "-2.50"
