"""Tail bounds, difference inequalities and the pi(x) >= c log x chains.

Every verdict is exact: rationals are compared directly and irrational
quantities (zeta(s), logarithms) enter only through rational enclosures, so
a verdict is one of holds / fails / indeterminate and never flips from holds
to fails when an enclosure is tightened.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .intervals import (
    DEFAULT_BITS,
    RationalInterval,
    Verdict,
    as_fraction,
    compare_le,
    decimal_str,
    fraction_str,
    ln2,
    log_interval,
)
from .primes import PrimeTable, prime_count, table_for
from .products import (
    ParameterError,
    ProductRecord,
    euler_partial,
    growth_check_euler,
    growth_check_ratio,
    ratio_partial,
)
from .zeta import ratio_product_limit, zeta_interval

CHAINS = ("euler", "ratio")
DEFAULT_TERMS = 512
DEFAULT_EPS = Fraction(1, 10)
DEFAULT_SAFETY = 2
DEFAULT_ASYMPTOTIC_FROM = 100
MAX_REFINEMENTS = 6


@dataclass(frozen=True)
class IrrationalityParams:
    """Irrationality measure mu and margin eps, both exact rationals.

    mu is 1 for rationals and at least 2 for irrationals; values in (1, 2)
    are never measures of a real number and are rejected.
    """

    mu: Fraction
    eps: Fraction = DEFAULT_EPS

    def __post_init__(self):
        mu, eps = as_fraction(self.mu), as_fraction(self.eps)
        if not (mu == 1 or mu >= 2):
            raise ParameterError(f"mu must be 1 or >= 2, got {mu}")
        if eps < 0:
            raise ParameterError(f"eps must be non-negative, got {eps}")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "eps", eps)

    @property
    def exponent(self) -> Fraction:
        return self.mu + self.eps

    def to_dict(self) -> dict:
        return {"mu": fraction_str(self.mu), "eps": fraction_str(self.eps)}


# -- exact helpers ------------------------------------------------------------

def iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0, k >= 1."""
    if n < 0 or k < 1:
        raise ValueError("iroot needs n >= 0 and k >= 1")
    if n < 2 or k == 1:
        return n
    x = 1 << -(-n.bit_length() // k)  # >= true root
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def power_le(base: Fraction, exponent: Fraction, bound: Fraction) -> bool:
    """base**exponent <= bound for base > 0, bound > 0, exponent rational."""
    a, b = exponent.numerator, exponent.denominator
    return base**a <= bound**b


def power_vs_interval(base: Fraction, exponent: Fraction, rhs: RationalInterval) -> Verdict:
    """Three-valued ``base**exponent <= rhs`` for an enclosure rhs of a positive quantity."""
    if rhs.lo > 0 and power_le(base, exponent, rhs.lo):
        return Verdict.HOLDS
    if rhs.hi <= 0 or not power_le(base, exponent, rhs.hi):
        return Verdict.FAILS
    return Verdict.INDETERMINATE


def sci_str(q, digits: int = 6) -> str:
    """Scientific rendering of an exact rational, truncated (display only)."""
    q = as_fraction(q)
    if q == 0:
        return "0"
    sign = "-" if q < 0 else ""
    q = abs(q)
    e = math.floor((q.numerator.bit_length() - q.denominator.bit_length()) * math.log10(2))
    while Fraction(10) ** e > q:
        e -= 1
    while Fraction(10) ** (e + 1) <= q:
        e += 1
    mant = math.floor(q * Fraction(10) ** (digits - 1 - e))
    s = str(mant)
    return f"{sign}{s[0]}.{s[1:]}e{e:+d}"


def _render(value) -> str:
    if isinstance(value, RationalInterval):
        return f"[{sci_str(value.lo, 12)}, {sci_str(value.hi, 12)}]"
    if isinstance(value, int) and not isinstance(value, bool):
        return str(value) if value.bit_length() < 64 else sci_str(value, 12)
    if isinstance(value, Fraction):
        if value.denominator.bit_length() < 64 and value.numerator.bit_length() < 64:
            return fraction_str(value)
        return sci_str(value, 12)
    return str(value)


# -- tail bounds and differences ---------------------------------------------

def euler_tail_bound(s: int, x: int) -> Fraction:
    """1 / ((s-1) x^(s-1)), the tail of sum n^-s past x."""
    if s < 2:
        raise ParameterError("euler_tail_bound needs s >= 2 (divergent tail)")
    if x < 1:
        raise ParameterError("x must be >= 1")
    return Fraction(1, (s - 1) * x ** (s - 1))


def ratio_tail_bound(s: int, x: int) -> Fraction:
    """Leading term 2 / ((2s-1) x^(2s-1)) of the tail bound for the ratio product."""
    if s < 1 or x < 1:
        raise ParameterError("ratio_tail_bound needs s >= 1 and x >= 1")
    return Fraction(2, (2 * s - 1) * x ** (2 * s - 1))


@dataclass(frozen=True)
class Link:
    """One inequality ``lhs <= rhs`` in a verification chain."""

    name: str
    lhs: object
    rhs: object
    verdict: Verdict
    slack: Fraction | None = None
    required: bool = True
    details: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.verdict is Verdict.HOLDS

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": _render(self.lhs),
            "rhs": _render(self.rhs),
            "verdict": self.verdict.value,
            "slack": None if self.slack is None else sci_str(self.slack, 12),
            "required": self.required,
            "details": {k: _detail(v) for k, v in sorted(self.details.items())},
        }


def _detail(value):
    if isinstance(value, (bool, str)):
        return value
    if isinstance(value, int) and value.bit_length() < 53:
        return value
    return _render(value)


def _guaranteed_slack(lhs, rhs) -> Fraction:
    lo = rhs.lo if isinstance(rhs, RationalInterval) else rhs
    hi = lhs.hi if isinstance(lhs, RationalInterval) else lhs
    return lo - hi


def verify_diff_euler(s: int, x: int, terms: int = DEFAULT_TERMS,
                      record: ProductRecord | None = None,
                      table: PrimeTable | None = None) -> Link:
    """|1/zeta(s) - p_x/q_x| <= 1 / ((s-1) zeta(s) x^(s-1)) via a zeta enclosure.

    Indeterminate means the enclosure overlaps the decision boundary; retry
    with more terms.
    """
    record = record or euler_partial(s, x, table)
    zeta = zeta_interval(s, terms)
    diff = abs(zeta.reciprocal() - record.fraction)
    rhs = (zeta * ((s - 1) * x ** (s - 1))).reciprocal()
    verdict = compare_le(diff, rhs)
    return Link("difference_bound", diff, rhs, verdict, _guaranteed_slack(diff, rhs),
                details={"terms": terms, "zeta_width": zeta.width})


def verify_diff_ratio(x: int, c4: Fraction = Fraction(1), s: int = 1,
                      record: ProductRecord | None = None,
                      table: PrimeTable | None = None) -> Link:
    """|T - p_x/q_x| <= c4 / x with T the exact limit (2/5 for s = 1).

    Also reports the smallest admissible c4 at this x, namely x |T - p_x/q_x|.
    """
    c4 = as_fraction(c4)
    if c4 <= 0:
        raise ParameterError("c4 must be positive")
    record = record or ratio_partial(s, x, table)
    diff = abs(ratio_product_limit(s) - record.fraction)
    rhs = c4 / x
    verdict = Verdict.HOLDS if diff <= rhs else Verdict.FAILS
    return Link("difference_bound", diff, rhs, verdict, rhs - diff,
                details={"min_c4": diff * x, "c4": c4})


# -- irrationality measure gaps ------------------------------------------------

def measure_gap_interval(q: int, params: IrrationalityParams) -> RationalInterval:
    """Enclosure of q^-(mu+eps) by integer-root bracketing of q^a, a/b = mu+eps."""
    if q < 1:
        raise ParameterError("q must be >= 1")
    a, b = params.exponent.numerator, params.exponent.denominator
    n = q**a
    r = iroot(n, b)
    if r**b == n:
        return RationalInterval.point(Fraction(1, r))
    return RationalInterval(Fraction(1, r + 1), Fraction(1, r))


def measure_gap(q: int, params: IrrationalityParams) -> Fraction:
    """1/q^(mu+eps), exact when the root is exact, otherwise a lower bound.

    The lower bound comes from rounding the root q^(mu+eps) up to the next
    integer.
    """
    return measure_gap_interval(q, params).lo


def power_two_gap(n: int, params: IrrationalityParams) -> tuple[Fraction, Fraction]:
    """(base, exponent) with base**exponent = 2^-(n (mu+eps)) for exact comparisons."""
    return Fraction(1, 2) ** n if n >= 0 else Fraction(2) ** -n, params.exponent


# -- the pi(x) lower bounds ------------------------------------------------------

@dataclass(frozen=True)
class BoundLine:
    """slope * log x + offset, both as enclosures."""

    slope: RationalInterval
    offset: RationalInterval

    def at(self, x: int, bits: int = DEFAULT_BITS) -> RationalInterval:
        return self.slope * log_interval(x, bits) + self.offset

    def upper_coarse(self, x: int) -> Fraction:
        """Cheap upper bound using log x < bit_length(x) * ln 2."""
        return self.slope.hi * x.bit_length() * ln2().hi + self.offset.hi

    def lower_coarse(self, x: int) -> Fraction:
        """Cheap lower bound using log x >= (bit_length(x) - 1) * ln 2."""
        return self.slope.lo * (x.bit_length() - 1) * ln2().lo + self.offset.lo


def euler_bound_line(s: int, params: IrrationalityParams, terms: int = DEFAULT_TERMS,
                     bits: int = DEFAULT_BITS) -> BoundLine:
    if s < 2:
        raise ParameterError("the euler chain needs s >= 2")
    scale = ln2(bits) * params.exponent
    zeta = zeta_interval(s, terms)
    slope = RationalInterval.point(s - 1) / scale
    offset = (s + 1) + log_interval(zeta * (s - 1), bits) / scale
    return BoundLine(slope, offset)


def ratio_bound_line(params: IrrationalityParams, c4: Fraction = Fraction(1), s: int = 1,
                     bits: int = DEFAULT_BITS) -> BoundLine:
    # A single (mu+eps) denominator throughout; with mu = 1 it equals 1+eps.
    scale = ln2(bits) * params.exponent
    slope = RationalInterval.point(1) / scale
    offset = (s + 1) - log_interval(as_fraction(c4), bits) / scale
    return BoundLine(slope, offset)


def pi_lower_bound_euler(s: int, params: IrrationalityParams, x: int,
                         terms: int = DEFAULT_TERMS, bits: int = DEFAULT_BITS) -> RationalInterval:
    """Enclosure of c1 log x + c0 with c1 = (s-1)/((mu+eps) log 2)."""
    return euler_bound_line(s, params, terms, bits).at(x, bits)


def pi_lower_bound_ratio(params: IrrationalityParams, x: int, c4: Fraction = Fraction(1),
                         s: int = 1, bits: int = DEFAULT_BITS) -> RationalInterval:
    """Enclosure of c3 log x + c2 with c3 = 1/((mu+eps) log 2), offset s = 1 by default."""
    return ratio_bound_line(params, c4, s, bits).at(x, bits)


def _pi_vs_line(line: BoundLine, x: int, pi_x: int) -> tuple[Verdict, RationalInterval]:
    bits = DEFAULT_BITS
    for _ in range(MAX_REFINEMENTS):
        bound = line.at(x, bits)
        verdict = compare_le(bound, pi_x)
        if verdict is not Verdict.INDETERMINATE:
            return verdict, bound
        bits *= 2
    return verdict, bound


# -- chain verification ----------------------------------------------------------

@dataclass(frozen=True)
class BoundReport:
    chain: str
    s: int
    x: int
    params: IrrationalityParams
    links: tuple[Link, ...]
    final_bound: RationalInterval
    pi_x: int
    theorem_holds: bool
    c4: Fraction | None = None

    @property
    def required_ok(self) -> bool:
        return all(link.holds for link in self.links if link.required)

    def link(self, name: str) -> Link:
        for link in self.links:
            if link.name == name:
                return link
        raise KeyError(name)

    def to_dict(self) -> dict:
        out = {
            "chain": self.chain,
            "s": self.s,
            "x": self.x,
            "params": self.params.to_dict(),
            "pi_x": self.pi_x,
            "final_bound": {
                "lo": sci_str(self.final_bound.lo, 15),
                "hi": sci_str(self.final_bound.hi, 15),
                "approx": decimal_str(self.final_bound.mid, 9),
            },
            "theorem_holds": self.theorem_holds,
            "required_ok": self.required_ok,
            "links": [link.to_dict() for link in self.links],
        }
        if self.c4 is not None:
            out["c4"] = fraction_str(self.c4)
        return out

    def csv_row(self) -> dict:
        final = self.link("pi_lower_bound")
        return {
            "chain": self.chain,
            "s": self.s,
            "x": self.x,
            "pi_x": self.pi_x,
            "bound": decimal_str(self.final_bound.mid, 9),
            "slack": decimal_str(self.pi_x - self.final_bound.hi, 9),
            "holds": final.holds,
        }


def _gap_link(name, e, params, rhs, required) -> Link:
    """2^-(e (mu+eps)) <= rhs for rational or interval rhs."""
    base, exponent = power_two_gap(e, params)
    if isinstance(rhs, RationalInterval):
        verdict = power_vs_interval(base, exponent, rhs)
    else:
        verdict = Verdict.HOLDS if rhs > 0 and power_le(base, exponent, rhs) else Verdict.FAILS
    lhs = RationalInterval.point(base) if exponent == 1 else _two_power_enclosure(e, exponent)
    return Link(name, lhs, rhs, verdict, _guaranteed_slack(lhs, rhs), required,
                {"exponent": exponent, "pi_minus_s_minus_1": e})


def _two_power_enclosure(e: int, exponent: Fraction) -> RationalInterval:
    """Enclosure of 2^-(e * exponent) by integer roots (display and slack only)."""
    a, b = exponent.numerator, exponent.denominator
    n = e * a
    if n >= 0:
        r = iroot(1 << (n + 64 * b), b)  # 2^(n/b) * 2^64
        return RationalInterval(Fraction(1 << 64, r + 1), Fraction(1 << 64, r))
    r = iroot(1 << (-n + 64 * b), b)
    return RationalInterval(Fraction(r, 1 << 64), Fraction(r + 1, 1 << 64))


def _measure_order_link(q_x: int, e: int, params: IrrationalityParams) -> Link:
    """1/q_x^(mu+eps) <= 1/2^(e (mu+eps)), i.e. (2^e / q_x)^(mu+eps) <= 1.

    Both sides are reported as base-2 logarithms; the numbers themselves are
    far too small to print usefully.
    """
    E = params.exponent
    ratio = (Fraction(2) ** e) / q_x
    verdict = Verdict.HOLDS if power_le(ratio, E, Fraction(1)) else Verdict.FAILS
    k = q_x.bit_length()
    lhs = RationalInterval(-E * k, -E * (k - 1))
    rhs = RationalInterval.point(-E * e)
    return Link("measure_order", lhs, rhs, verdict, _guaranteed_slack(lhs, rhs), True,
                {"scale": "log2", "pi_minus_s_minus_1": e})


def verify_chain(chain: str, s: int, x: int, params: IrrationalityParams,
                 terms: int = DEFAULT_TERMS, c4: Fraction = Fraction(1),
                 asymptotic_from: int = DEFAULT_ASYMPTOTIC_FROM,
                 safety: Fraction = Fraction(DEFAULT_SAFETY),
                 table: PrimeTable | None = None,
                 refine: bool = True) -> BoundReport:
    """Evaluate every inequality of one chain at a single cutoff x.

    Links that only make sense for large x (the irrationality gap, the
    combined inequality and the final pi(x) bound) are marked not required
    below ``asymptotic_from``; their verdicts are still recorded.
    """
    if chain not in CHAINS:
        raise ParameterError(f"chain must be one of {CHAINS}, got {chain!r}")
    if x < 2:
        raise ParameterError("x must be >= 2")
    if chain == "euler":
        return _verify_euler(s, x, params, terms, asymptotic_from, table, refine)
    return _verify_ratio(s, x, params, as_fraction(c4), asymptotic_from, as_fraction(safety), table)


def _verify_euler(s, x, params, terms, asymptotic_from, table, refine) -> BoundReport:
    if s < 2:
        raise ParameterError("the euler chain needs s >= 2")
    if params.eps <= 0:
        raise ParameterError("the chain needs eps > 0")
    table = table_for(x, table)
    record = euler_partial(s, x, table)
    pi_x = record.pi_x
    e = pi_x - s - 1
    large = x >= asymptotic_from

    for _ in range(MAX_REFINEMENTS if refine else 1):
        zeta = zeta_interval(s, terms)
        diff_link = verify_diff_euler(s, x, terms, record)
        if diff_link.verdict is not Verdict.INDETERMINATE:
            break
        terms *= 2
    diff = diff_link.lhs

    growth = growth_check_euler(record)
    links = [
        Link("growth", Fraction(2) ** e, record.q_x,
             Verdict.HOLDS if growth.holds else Verdict.FAILS, None, True,
             {**growth.checks, **{k: v for k, v in growth.slack.items()}}),
        _measure_order_link(record.q_x, e, params),
        _gap_link("irrationality_gap", e, params, diff, large),
        diff_link,
    ]
    # 1 - prod_{p>x}(1-p^-s)^-1 = 1 - zeta(s) p_x/q_x; its size against the tail bound.
    tail = abs(1 - zeta * record.fraction)
    tail_bound = euler_tail_bound(s, x)
    links.append(Link("tail_bound", tail, tail_bound, compare_le(tail, tail_bound),
                      _guaranteed_slack(tail, tail_bound)))
    links.append(_gap_link("combined", e, params, diff_link.rhs, large))

    line = euler_bound_line(s, params, terms)
    verdict, bound = _pi_vs_line(line, x, pi_x)
    links.append(Link("pi_lower_bound", bound, pi_x, verdict, pi_x - bound.hi, large,
                      {"slope": line.slope, "offset": line.offset}))
    return _report("euler", s, x, params, links, bound, pi_x, None)


def _verify_ratio(s, x, params, c4, asymptotic_from, safety, table) -> BoundReport:
    if s < 1:
        raise ParameterError("the ratio chain needs s >= 1")
    if params.eps <= 0:
        raise ParameterError("the chain needs eps > 0")
    table = table_for(x, table)
    record = ratio_partial(s, x, table)
    pi_x = record.pi_x
    e = pi_x - s - 1
    large = x >= asymptotic_from
    target = ratio_product_limit(s)
    diff_link = verify_diff_ratio(x, c4, s, record)

    growth = growth_check_ratio(record)
    links = [
        Link("growth", Fraction(2) ** e, record.p_x,
             Verdict.HOLDS if growth.holds else Verdict.FAILS, None, True,
             {**growth.checks, **{k: v for k, v in growth.slack.items()}}),
        _measure_order_link(record.q_x, e, params),
        _gap_link("irrationality_gap", e, params, diff_link.lhs, large),
        diff_link,
    ]
    # 1 - prod_{p>x}(...)^-1 = 1 - (p_x/q_x)/T, against the inflated leading term.
    tail = abs(1 - record.fraction / target)
    leading = ratio_tail_bound(s, x)
    links.append(Link("tail_bound", tail, safety * leading,
                      Verdict.HOLDS if tail <= safety * leading else Verdict.FAILS,
                      safety * leading - tail, True,
                      {"safety": safety, "holds_without_safety": tail <= leading}))
    links.append(_gap_link("combined", e, params, c4 / x, large))

    line = ratio_bound_line(params, c4, s)
    verdict, bound = _pi_vs_line(line, x, pi_x)
    links.append(Link("pi_lower_bound", bound, pi_x, verdict, pi_x - bound.hi, large,
                      {"slope": line.slope, "offset": line.offset}))
    return _report("ratio", s, x, params, links, bound, pi_x, c4)


def _report(chain, s, x, params, links, bound, pi_x, c4) -> BoundReport:
    final = links[-1]
    determinate = all(link.verdict is not Verdict.INDETERMINATE for link in links)
    return BoundReport(chain, s, x, params, tuple(links), bound, pi_x,
                       final.holds and determinate, c4)


# -- sweeping every integer x --------------------------------------------------------

@dataclass(frozen=True)
class SweepResult:
    """pi(x) >= bound(x) checked at every integer x in [2, x_max].

    ``violations`` lists maximal runs (first, last) of failing x.  ``x0`` is
    the start of the final run of holding x, so no violation lies in
    [x0, x_max]; ``first_hold`` is the smallest x with a positive bound
    below pi(x), which can precede x0 when isolated failures follow it.
    """

    chain: str
    x_max: int
    x0: int | None
    first_hold: int | None
    violations: tuple[tuple[int, int], ...]
    refined_points: int

    @property
    def violations_from_x0(self) -> int:
        if self.x0 is None:
            return sum(b - a + 1 for a, b in self.violations)
        return sum(max(0, b - max(a, self.x0) + 1) for a, b in self.violations)

    def to_dict(self) -> dict:
        return {
            "chain": self.chain, "x_max": self.x_max, "x0": self.x0,
            "first_hold": self.first_hold,
            "violations": [list(v) for v in self.violations],
            "violations_from_x0": self.violations_from_x0,
            "refined_points": self.refined_points,
        }


def theorem_sweep(line: BoundLine, x_max: int, chain: str = "euler",
                  table: PrimeTable | None = None) -> SweepResult:
    """Check pi(x) >= line(x) for every integer 2 <= x <= x_max.

    pi is constant on [p_k, p_{k+1} - 1] and the line is increasing, so each
    such run holds on a prefix and fails on the rest; a bisection finds the
    split.  A coarse bit-length bound settles most runs without logarithms.
    """
    if line.slope.lo <= 0:
        raise ParameterError("bound line must be increasing")
    table = table_for(x_max, table)
    primes = table.upto(x_max)
    refined = 0

    def holds(x: int, k: int) -> bool:
        nonlocal refined
        if line.upper_coarse(x) <= k:
            return True
        if line.lower_coarse(x) > k:
            return False
        refined += 1
        verdict, _ = _pi_vs_line(line, x, k)
        if verdict is Verdict.INDETERMINATE:
            raise ArithmeticError(f"could not decide pi({x}) >= bound")
        return verdict is Verdict.HOLDS

    violations: list[list[int]] = []
    first_hold = None
    ceiling = line.upper_coarse(x_max)
    for k in range(1, len(primes) + 1):
        a = primes[k - 1]
        b = primes[k] - 1 if k < len(primes) else x_max
        if k >= ceiling:  # every later run holds too: pi only grows, bound <= ceiling
            if first_hold is None:
                first_hold = a
            break
        if holds(b, k):
            split = b
        elif not holds(a, k):
            split = a - 1
        else:
            lo, hi = a, b  # holds(lo), not holds(hi)
            while hi - lo > 1:
                mid = (lo + hi) // 2
                if holds(mid, k):
                    lo = mid
                else:
                    hi = mid
            split = lo
        if split >= a and first_hold is None and line.at(a).lo > 0:
            first_hold = a
        if split < b:
            start = split + 1
            if violations and violations[-1][1] == start - 1:
                violations[-1][1] = b
            else:
                violations.append([start, b])
    if violations and violations[-1][1] >= x_max:
        x0 = None
    else:
        x0 = violations[-1][1] + 1 if violations else 2
    return SweepResult(chain, x_max, x0, first_hold, tuple(map(tuple, violations)), refined)


def sweep_euler(s: int, params: IrrationalityParams, x_max: int, terms: int = DEFAULT_TERMS,
                table: PrimeTable | None = None) -> SweepResult:
    return theorem_sweep(euler_bound_line(s, params, terms), x_max, "euler", table)


def sweep_ratio(params: IrrationalityParams, x_max: int, c4: Fraction = Fraction(1),
                s: int = 1, table: PrimeTable | None = None) -> SweepResult:
    return theorem_sweep(ratio_bound_line(params, c4, s), x_max, "ratio", table)


def verify_many(chain: str, s: int, xs: Iterable[int], params: IrrationalityParams,
                **kwargs) -> list[BoundReport]:
    return [verify_chain(chain, s, x, params, **kwargs) for x in xs]
