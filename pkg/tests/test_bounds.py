from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from eulerbound.bounds import (
    IrrationalityParams,
    ParameterError,
    euler_bound_line,
    euler_tail_bound,
    measure_gap,
    measure_gap_interval,
    pi_lower_bound_euler,
    pi_lower_bound_ratio,
    ratio_bound_line,
    ratio_tail_bound,
    sweep_euler,
    theorem_sweep,
    verify_chain,
    verify_diff_euler,
    verify_diff_ratio,
)
from eulerbound.intervals import Verdict
from eulerbound.primes import build_prime_table, prime_count
from eulerbound.products import iter_records
from eulerbound.zeta import zeta_interval

mpmath.mp.dps = 40
TABLE = build_prime_table(10**4)
EULER = IrrationalityParams(Fraction(2), Fraction(1, 10))
RATIO = IrrationalityParams(Fraction(1), Fraction(1, 10))


@pytest.mark.parametrize("s, x, value", [(2, 10, Fraction(1, 10)), (4, 10, Fraction(1, 3000)), (2, 1, Fraction(1))])
def test_euler_tail(s, x, value):
    assert euler_tail_bound(s, x) == value


@pytest.mark.parametrize("s, x, value", [(1, 10, Fraction(1, 5)), (2, 10, Fraction(2, 3000)), (1, 1, Fraction(2))])
def test_ratio_tail(s, x, value):
    assert ratio_tail_bound(s, x) == value


def test_tail_errors():
    with pytest.raises(ParameterError):
        euler_tail_bound(1, 10)


def test_params_validation():
    with pytest.raises(ParameterError):
        IrrationalityParams(Fraction(3, 2), Fraction(1, 10))
    with pytest.raises(ParameterError):
        IrrationalityParams(Fraction(2), Fraction(-1))


def test_diff_euler_example():
    link = verify_diff_euler(2, 10)
    assert link.verdict is Verdict.HOLDS
    assert abs(float(link.lhs.mid) - 0.0190) < 1e-3
    assert abs(float(link.rhs.mid) - 0.0608) < 1e-3


def test_diff_euler_slack_ratio_grows():
    ratios = []
    for x in (10, 100):
        link = verify_diff_euler(2, x)
        assert link.holds
        ratios.append(link.rhs.lo / link.lhs.hi)
    assert ratios[1] > ratios[0]
    assert verify_diff_euler(4, 10).holds


def test_diff_ratio_examples():
    link = verify_diff_ratio(5)
    assert link.lhs == Fraction(14, 325) and link.holds
    link = verify_diff_ratio(2)
    assert link.lhs == Fraction(1, 5) and link.rhs == Fraction(1, 2)


def test_diff_ratio_sup_c4_up_to_1e4():
    sup = Fraction(0)
    for rec in iter_records("ratio", 1, range(2, 10**4 + 1), TABLE):
        link = verify_diff_ratio(rec.x, record=rec)
        assert link.holds
        sup = max(sup, link.details["min_c4"])
    assert sup <= 1


@pytest.mark.parametrize("q, params, value", [
    (2, IrrationalityParams(Fraction(2), Fraction(0)), Fraction(1, 4)),
    (1, EULER, Fraction(1)),
])
def test_measure_gap_exact(q, params, value):
    assert measure_gap(q, params) == value


def test_measure_gap_bracket():
    I = measure_gap_interval(325, RATIO)
    true = mpmath.mpf(325) ** mpmath.mpf(-1.1)
    assert mpmath.mpf(I.lo.numerator) / I.lo.denominator <= true <= mpmath.mpf(I.hi.numerator) / I.hi.denominator
    assert measure_gap(325, RATIO) == I.lo


@settings(max_examples=100)
@given(st.integers(1, 10**12), st.integers(1, 10**12))
def test_measure_gap_antitone(q1, q2):
    q1, q2 = sorted((q1, q2))
    assert measure_gap(q1, EULER) >= measure_gap(q2, EULER)


def test_pi_lower_bound_euler_spot():
    b = pi_lower_bound_euler(2, EULER, 100)
    assert abs(float(b.mid) - 6.5057) < 1e-3
    assert b.hi < 25
    assert pi_lower_bound_euler(2, EULER, 2).lo > 1  # boundary failure at pi(2) = 1
    line = euler_bound_line(2, EULER)
    assert abs(float(line.slope.mid) - 0.687) < 1e-3


def test_pi_lower_bound_ratio_spot():
    assert abs(float(pi_lower_bound_ratio(RATIO, 100).mid) - 8.04) < 1e-2
    b10 = pi_lower_bound_ratio(RATIO, 10)
    assert abs(float(b10.mid) - 5.02) < 1e-2
    assert b10.lo > prime_count(TABLE, 10)  # honest small-x failure


@pytest.mark.parametrize("chain, s, params", [("euler", 2, EULER), ("ratio", 1, RATIO)])
def test_chain_at_1000_all_links_hold(chain, s, params):
    rep = verify_chain(chain, s, 1000, params, table=TABLE)
    assert all(link.holds for link in rep.links)
    assert rep.theorem_holds and rep.required_ok


def test_chain_small_x_recorded():
    rep = verify_chain("euler", 2, 4, EULER, table=TABLE)
    assert rep.pi_x == 2
    assert len(rep.links) >= 4
    assert rep.to_dict()["links"]


def test_more_terms_never_flips_holds():
    for terms in (16, 64, 256, 1024):
        for x in (10, 100, 1000):
            link = verify_diff_euler(2, x, terms)
            assert link.verdict in (Verdict.HOLDS, Verdict.INDETERMINATE)
    assert zeta_interval(2, 1024).width < zeta_interval(2, 16).width


@pytest.mark.parametrize("make", [lambda: euler_bound_line(2, EULER), lambda: ratio_bound_line(RATIO)])
def test_sweep_against_pointwise(make):
    line = make()
    res = theorem_sweep(line, 3000, table=TABLE)
    fails = [x for x in range(2, 3001) if line.at(x).hi > prime_count(TABLE, x)]
    runs = []
    for x in fails:
        if runs and runs[-1][1] == x - 1:
            runs[-1][1] = x
        else:
            runs.append([x, x])
    assert [list(r) for r in res.violations] == runs
    assert res.violations_from_x0 == 0


def test_euler_sweep_small():
    res = sweep_euler(2, EULER, 10**4, table=TABLE)
    assert res.x0 == 13 and res.first_hold == 11
    assert res.violations == ((2, 10), (12, 12))
