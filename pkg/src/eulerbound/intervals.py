"""Closed rational intervals and rigorous log enclosures.

No binary floating point enters any result here: endpoints are exact
``Fraction`` values and every transcendental is bracketed by a truncated
series with an explicit remainder bound.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

ReducedFraction = Fraction

Number = Union[int, Fraction]

DEFAULT_BITS = 96


def coprime_fraction(numerator: int, denominator: int) -> Fraction:
    """Build a Fraction from a pair already known to be in lowest terms.

    Skips the gcd that ``Fraction(n, d)`` would run, which dominates the cost
    for the multi-thousand-bit products this package builds.
    """
    f = Fraction(0)
    f._numerator = numerator
    f._denominator = denominator
    return f


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"refusing to convert {type(value).__name__} to an exact rational")


def fraction_str(q: Fraction) -> str:
    """Canonical text form: always ``p/q``, sign on the numerator."""
    return f"{q.numerator}/{q.denominator}"


def decimal_str(q: Fraction, digits: int = 12) -> str:
    """Decimal rendering of q truncated toward zero (display only)."""
    sign = "-" if q < 0 else ""
    q = abs(q)
    whole, rem = divmod(q.numerator, q.denominator)
    frac = rem * 10**digits // q.denominator
    return f"{sign}{whole}.{frac:0{digits}d}"


class Verdict(str, enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    INDETERMINATE = "indeterminate"

    def __bool__(self) -> bool:
        return self is Verdict.HOLDS


@dataclass(frozen=True)
class RationalInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", as_fraction(self.lo))
        object.__setattr__(self, "hi", as_fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, q: Number) -> "RationalInterval":
        q = as_fraction(q)
        return cls(q, q)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, q) -> bool:
        return self.lo <= q <= self.hi

    def contains_interval(self, other: "RationalInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def __add__(self, other):
        o = _lift(other)
        return RationalInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return RationalInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        o = _lift(other)
        c = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return RationalInterval(min(c), max(c))

    __rmul__ = __mul__

    def reciprocal(self) -> "RationalInterval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains zero")
        return RationalInterval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        return self * _lift(other).reciprocal()

    def __rtruediv__(self, other):
        return _lift(other) * self.reciprocal()

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        if self.lo >= 0:
            return RationalInterval(self.lo**k, self.hi**k)
        if self.hi <= 0:
            a, b = self.hi**k, self.lo**k
            return RationalInterval(min(a, b), max(a, b))
        top = max(self.lo**k, self.hi**k)
        bottom = 0 if k % 2 == 0 else self.lo**k
        return RationalInterval(bottom, top)

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return RationalInterval(Fraction(0), max(-self.lo, self.hi))

    def round_out(self, bits: int = DEFAULT_BITS) -> "RationalInterval":
        """Widen to dyadic endpoints with denominator 2**bits."""
        return RationalInterval(round_down(self.lo, bits), round_up(self.hi, bits))

    def approx(self, digits: int = 12) -> str:
        return decimal_str(self.mid, digits)


def _lift(x) -> RationalInterval:
    return x if isinstance(x, RationalInterval) else RationalInterval.point(x)


def round_down(q: Fraction, bits: int) -> Fraction:
    return Fraction((q.numerator << bits) // q.denominator, 1 << bits)


def round_up(q: Fraction, bits: int) -> Fraction:
    return Fraction(-((-q.numerator << bits) // q.denominator), 1 << bits)


def compare_le(lhs, rhs) -> Verdict:
    """Three-valued ``lhs <= rhs`` for rationals or intervals."""
    a, b = _lift(lhs), _lift(rhs)
    if a.hi <= b.lo:
        return Verdict.HOLDS
    if a.lo > b.hi:
        return Verdict.FAILS
    return Verdict.INDETERMINATE


def compare_lt(lhs, rhs) -> Verdict:
    a, b = _lift(lhs), _lift(rhs)
    if a.hi < b.lo:
        return Verdict.HOLDS
    if a.lo >= b.hi:
        return Verdict.FAILS
    return Verdict.INDETERMINATE


# -- logarithms -------------------------------------------------------------

def _atanh_series(z: Fraction, bits: int) -> RationalInterval:
    """Enclosure of atanh(z) = sum z^(2k+1)/(2k+1) for 0 <= z <= 1/2."""
    if z == 0:
        return RationalInterval.point(0)
    # Fixed point with scale 2^w.  Each floor below loses < 1 unit, so the
    # k-th truncated term is short by at most k + 1 units.
    w = bits + 24
    a2, b2 = z.numerator**2, z.denominator**2
    term = (z.numerator << w) // z.denominator
    total = 0
    lost = 0
    k = 0
    while term:
        total += term // (2 * k + 1)
        lost += k + 2
        k += 1
        term = term * a2 // b2
    # exact remainder: z^(2k+1) <= (term + k + 1) units, geometric in z^2 <= 1/4
    tail = (term + k + 1) * 4 // 3 + 1
    return RationalInterval(Fraction(total, 1 << w), Fraction(total + lost + tail, 1 << w))


@lru_cache(maxsize=32)
def ln2(bits: int = DEFAULT_BITS) -> RationalInterval:
    # ln 2 = 2 atanh(1/3)
    return (2 * _atanh_series(Fraction(1, 3), bits + 2)).round_out(bits)


def log_interval(x, bits: int = DEFAULT_BITS) -> RationalInterval:
    """Enclosure of the natural log of a positive rational or interval.

    The result has width about 2**-bits times the magnitude of the exponent
    of x, rounded outward.
    """
    if isinstance(x, RationalInterval):
        if x.lo <= 0:
            raise ValueError("log of non-positive interval")
        if x.lo == x.hi:
            return log_interval(x.lo, bits)
        return RationalInterval(log_interval(x.lo, bits).lo, log_interval(x.hi, bits).hi)
    q = as_fraction(x)
    if q <= 0:
        raise ValueError("log of non-positive number")
    if q == 1:
        return RationalInterval.point(0)
    # q = m * 2^e with m in [3/4, 3/2) keeps z = (m-1)/(m+1) within [-1/7, 1/5]
    e = q.numerator.bit_length() - q.denominator.bit_length()
    m = q / Fraction(2) ** e
    while m >= Fraction(3, 2):
        m /= 2
        e += 1
    while m < Fraction(3, 4):
        m *= 2
        e -= 1
    extra = max(e.bit_length(), 1) + 4
    work = bits + extra
    # m can carry a huge numerator and denominator; log is monotone, so an
    # outward dyadic rounding of m keeps the enclosure valid.
    m_lo, m_hi = round_down(m, work + 2), round_up(m, work + 2)
    lo = _log_near_one(m_lo, work)
    hi = _log_near_one(m_hi, work)
    base = ln2(work) * e
    return (RationalInterval(lo.lo, hi.hi) + base).round_out(bits)


def _log_near_one(m: Fraction, bits: int) -> RationalInterval:
    z = (m - 1) / (m + 1)
    if z >= 0:
        return 2 * _atanh_series(z, bits)
    return -(2 * _atanh_series(-z, bits))
