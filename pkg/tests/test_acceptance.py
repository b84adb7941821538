"""One test per acceptance criterion, each printing a pass/fail line."""
import math
import subprocess
import sys
import time
from fractions import Fraction

from eulerbound.bounds import (
    IrrationalityParams,
    sweep_euler,
    sweep_ratio,
    verify_diff_euler,
)
from eulerbound.intervals import Verdict
from eulerbound.primes import build_prime_table, prime_count
from eulerbound.products import (
    growth_check_euler,
    growth_check_ratio,
    iter_records,
    l_chi4_partial,
)
from eulerbound.sequences import MISMATCH, euclid_term, hermite_term, wilson_holds
from eulerbound.zeta import zeta_even_coefficient, zeta_interval, zeta_ratio_exact
from oracles import factor_td, is_prime_td

# |P(x) - 1/2| from an mpmath float product (60 digits), frozen.
L_CHI4_ORACLE = {10**3: 2.58823943025e-3, 10**4: 1.96187181870e-3, 10**5: 5.06212590336e-4}
L_CHI4_TOLERANCE = Fraction(6, 10**4)


def cli(*argv):
    return subprocess.run([sys.executable, "-m", "eulerbound", *argv],
                          capture_output=True, text=True, check=False)


def timed(fn):
    t0 = time.perf_counter()
    value = fn()
    return value, time.perf_counter() - t0


def test_criterion_01_exact_zeta_ratio(acceptance_line):
    def run():
        out = cli("zeta", "ratio", "--n", "1")
        identity = all(zeta_ratio_exact(n) == zeta_even_coefficient(n) ** 2 / zeta_even_coefficient(2 * n)
                       for n in range(1, 51))
        return out, identity
    (out, identity), dt = timed(run)
    ok = out.returncode == 0 and '"value":"5/2"' in out.stdout and identity and dt < 5
    acceptance_line(1, ok, f"zeta ratio --n 1 -> 5/2, identity n=1..50: {identity}, {dt:.2f}s")
    assert ok


def test_criterion_02_ratio_convergence(acceptance_line):
    def run():
        target = Fraction(2, 5)
        return [r.x for r in iter_records("ratio", 1, range(2, 10**4 + 1))
                if abs(target - r.fraction) > Fraction(1, r.x)]
    bad, dt = timed(run)
    ok = not bad and dt < 30
    acceptance_line(2, ok, f"|2/5 - P(x)| <= 1/x for x in 2..10^4, failures {bad[:5]}, {dt:.2f}s")
    assert ok


def test_criterion_03_euler_difference(acceptance_line):
    def run():
        results = {}
        for s in (2, 4):
            terms = 8
            while zeta_interval(s, terms).width >= Fraction(1, 10**8):
                terms *= 2
            for x in (10, 10**2, 10**3, 10**4):
                n = terms
                link = verify_diff_euler(s, x, n)
                while link.verdict is Verdict.INDETERMINATE and n < 2**14:
                    n *= 2  # narrower enclosure, still width < 1e-8
                    link = verify_diff_euler(s, x, n)
                results[(s, x)] = (link.holds, link.details["zeta_width"] < Fraction(1, 10**8))
        return results
    results, dt = timed(run)
    ok = all(a and b for a, b in results.values()) and dt < 60
    acceptance_line(3, ok, f"verify_diff_euler s in (2,4), x in 10..10^4: {sum(a for a, _ in results.values())}/8 hold, {dt:.2f}s")
    assert ok


def test_criterion_04_growth_lemmas(acceptance_line):
    def run():
        bad = []
        xs = range(2, 10**4 + 1)
        for s in (1, 2, 3):
            for r in iter_records("euler", s, xs):
                v = growth_check_euler(r)
                if not (r.v2_B == s and v.checks["q_x_ge_p_x"] and v.checks["p_x_ge_2^(pi-s-1)"]):
                    bad.append(("euler", s, r.x))
            for r in iter_records("ratio", s, xs):
                v = growth_check_ratio(r)
                exact = r.v2_B == r.pi_x - 1 or r.x < 3
                if not (exact and r.q_x >= r.p_x and v.checks["p_x_ge_2^(pi-s-1)"]):
                    bad.append(("ratio", s, r.x))
        return bad
    bad, dt = timed(run)
    ok = not bad and dt < 60
    acceptance_line(4, ok, f"2-adic growth s=1,2,3 x<=10^4, failures {bad[:5]}, {dt:.2f}s")
    assert ok


def test_criterion_05_euler_theorem(acceptance_line):
    params = IrrationalityParams(Fraction(2), Fraction(1, 10))
    res, dt = timed(lambda: sweep_euler(2, params, 10**6, table=build_prime_table(10**6)))
    ok = res.x0 is not None and res.violations_from_x0 == 0 and dt < 120
    acceptance_line(5, ok, f"euler chain to 10^6: x0={res.x0} first_hold={res.first_hold} "
                           f"violations below x0 {list(res.violations)}, above x0 {res.violations_from_x0}, {dt:.2f}s")
    assert ok


def test_criterion_06_ratio_theorem(acceptance_line):
    params = IrrationalityParams(Fraction(1), Fraction(1, 10))
    res, dt = timed(lambda: sweep_ratio(params, 10**6, Fraction(1), table=build_prime_table(10**6)))
    ok = res.x0 is not None and res.violations_from_x0 == 0 and dt < 120
    acceptance_line(6, ok, f"ratio chain to 10^6: x0={res.x0} violations below x0 {list(res.violations)}, {dt:.2f}s")
    assert ok


def test_criterion_07_euclid(acceptance_line):
    expected = [2, 3, 7, 5, 11, 103, 71, 661, 269]

    def run():
        return [euclid_term(n) for n in range(1, 16)]
    terms, dt = timed(run)
    oracle = [max(factor_td(math.factorial(n) + 1)) for n in range(1, 10)]
    first9 = [t.extracted for t in terms[:9]]
    mismatches = [t.index for t in terms if t.paper_match == MISMATCH]
    ok = first9 == expected == oracle and all(t.complete for t in terms) and dt < 300
    acceptance_line(7, ok, f"euclid n=1..9 {first9}; n=1..15 complete in {dt:.2f}s; "
                           f"printed-list mismatches at n={mismatches} (reported, not failing)")
    assert ok


def test_criterion_08_hermite(acceptance_line):
    def run():
        table = build_prime_table(2000)
        terms = [hermite_term(k, table) for k in range(1, 301)]
        return terms, table
    (terms, table), dt = timed(run)
    primes = [p for p in range(2, 2000) if is_prime_td(p)][:300]
    wilson = all(wilson_holds(t.extracted) and math.factorial(t.extracted - 1) % t.extracted == t.extracted - 1
                 for t in terms)
    ok = [t.extracted for t in terms] == primes and wilson and dt < 30
    acceptance_line(8, ok, f"hermite k=1..300 equals k-th prime, Wilson checked: {wilson}, {dt:.2f}s")
    assert ok


def test_criterion_09_l_ratio(acceptance_line):
    half = Fraction(1, 2)
    errors = {x: abs(l_chi4_partial(x).fraction - half) for x in (10**3, 10**4, 10**5)}
    e = [errors[x] for x in sorted(errors)]
    decreasing = e[0] > e[1] > e[2]
    agrees = all(abs(float(errors[x]) - L_CHI4_ORACLE[x]) < 1e-12 for x in errors)
    ok = decreasing and e[2] <= L_CHI4_TOLERANCE and agrees
    shown = ", ".join(f"{float(v):.6e}" for v in e)
    acceptance_line(9, ok, f"|P(x) - 1/2| at 10^3,10^4,10^5 = {shown}; tolerance {float(L_CHI4_TOLERANCE)}")
    assert ok


def test_criterion_10_determinism(acceptance_line):
    base = ("verify", "--chain", "euler", "--s", "2", "--x-range", "10:10000")
    one = cli(*base, "--threads", "1")
    eight = cli(*base, "--threads", "8")
    ok = one.returncode == eight.returncode == 0 and one.stdout == eight.stdout and one.stdout
    acceptance_line(10, bool(ok), f"threads 8 vs 1 byte-identical: {one.stdout == eight.stdout} "
                                  f"({len(one.stdout)} bytes)")
    assert ok
