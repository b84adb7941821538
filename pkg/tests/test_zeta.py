from fractions import Fraction

import mpmath
import pytest

from eulerbound.products import euler_partial, ratio_partial
from eulerbound.zeta import (
    CapacityError,
    bernoulli,
    l_chi4_target,
    ratio_product_limit,
    zeta_even_coefficient,
    zeta_interval,
    zeta_ratio_exact,
)
from oracles import bernoulli_at

mpmath.mp.dps = 50


def mp(q):
    return mpmath.mpf(q.numerator) / q.denominator


@pytest.mark.parametrize("m, value", [(0, 1), (1, Fraction(-1, 2)), (2, Fraction(1, 6)),
                                      (4, Fraction(-1, 30)), (12, Fraction(-691, 2730))])
def test_bernoulli_examples(m, value):
    assert bernoulli(m) == value


def test_bernoulli_matches_independent_algorithm():
    assert all(bernoulli(m) == bernoulli_at(m) for m in range(0, 61))


def test_bernoulli_odd_zero_and_sign_alternation():
    assert all(bernoulli(2 * k + 1) == 0 for k in range(1, 100))
    assert all(bernoulli(2 * k) * bernoulli(2 * k + 2) < 0 for k in range(1, 100))


def test_bernoulli_cap():
    with pytest.raises(CapacityError):
        bernoulli(401)


@pytest.mark.parametrize("n, r", [(1, Fraction(1, 6)), (2, Fraction(1, 90)), (3, Fraction(1, 945))])
def test_even_zeta_coefficients(n, r):
    assert zeta_even_coefficient(n) == r


def test_even_coefficients_against_mpmath():
    for n in range(1, 15):
        assert mpmath.almosteq(mp(zeta_even_coefficient(n)) * mpmath.pi ** (2 * n), mpmath.zeta(2 * n), 1e-40)


def test_zeta_ratio_examples():
    assert zeta_ratio_exact(1) == Fraction(5, 2)
    assert zeta_ratio_exact(2) == Fraction(7, 6)
    for n in range(1, 51):
        r = zeta_ratio_exact(n)
        assert r > 0
        assert r == zeta_even_coefficient(n) ** 2 / zeta_even_coefficient(2 * n)


def test_l_target():
    assert l_chi4_target() == Fraction(1, 2)
    assert Fraction(1, 4) ** 3 / Fraction(1, 32) == l_chi4_target()


def test_zeta_interval_examples():
    z2 = zeta_interval(2, 10)
    assert encl(z2, mpmath.zeta(2))
    # contained in the plain integral bracket: partial sum + [1/11, 1/10]
    S = sum(Fraction(1, n * n) for n in range(1, 11))
    assert S + Fraction(1, 11) <= z2.lo and z2.hi <= S + Fraction(1, 10)
    z4 = zeta_interval(4, 10)
    assert encl(z4, mpmath.pi**4 / 90)


def encl(I, v):
    return mp(I.lo) <= v <= mp(I.hi)


@pytest.mark.parametrize("s", [2, 3, 4, 6])
def test_zeta_interval_width_bound_and_nesting(s):
    prev = None
    for terms in [2, 3, 5, 10, 50, 200]:
        z = zeta_interval(s, terms)
        assert encl(z, mpmath.zeta(s))
        bound = Fraction(1, s - 1) * (Fraction(1, terms ** (s - 1)) - Fraction(1, (terms + 1) ** (s - 1)))
        assert z.width <= bound
        if prev is not None:
            assert prev.contains_interval(z)
            assert z.width < prev.width
        prev = z


@pytest.mark.parametrize("s", [2, 4])
def test_reciprocal_enclosure_below_partial_products(s):
    inv = zeta_interval(s, 400).reciprocal()
    gaps = [euler_partial(s, x).fraction - inv.lo for x in (10, 100, 1000)]
    assert all(g > 0 for g in gaps)
    assert gaps[0] > gaps[1] > gaps[2]


def test_ratio_limit_generalises_two_fifths():
    assert ratio_product_limit(1) == Fraction(2, 5)
    assert ratio_product_limit(2) == Fraction(6, 7)
    assert abs(ratio_partial(2, 1000).fraction - Fraction(6, 7)) < Fraction(1, 10**9)
