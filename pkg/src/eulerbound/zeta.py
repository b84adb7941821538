"""Exact Bernoulli numbers, rational zeta ratios and rigorous zeta enclosures."""
from __future__ import annotations

import math
import threading
from fractions import Fraction

from .intervals import RationalInterval

BERNOULLI_MAX = 400

_bernoulli: list[Fraction] = [Fraction(1)]
_lock = threading.Lock()


class CapacityError(ValueError):
    pass


def bernoulli(m: int, cap: int = BERNOULLI_MAX) -> Fraction:
    """B_m with the B_1 = -1/2 convention.

    Uses sum_{j=0}^{m} C(m+1, j) B_j = 0, extending a shared cache.
    """
    if m < 0 or m > cap:
        raise CapacityError(f"Bernoulli index must be in [0, {cap}], got {m}")
    if m < len(_bernoulli):
        return _bernoulli[m]
    with _lock:
        while len(_bernoulli) <= m:
            n = len(_bernoulli)
            if n > 1 and n % 2:
                _bernoulli.append(Fraction(0))
                continue
            # Common-denominator sum; odd j > 1 contribute nothing.
            terms = [(math.comb(n + 1, j), _bernoulli[j]) for j in range(n) if j < 2 or j % 2 == 0]
            den = math.lcm(*(b.denominator for _, b in terms))
            num = sum(c * b.numerator * (den // b.denominator) for c, b in terms)
            _bernoulli.append(Fraction(-num, den * (n + 1)))
    return _bernoulli[m]


def zeta_even_coefficient(n: int) -> Fraction:
    """r with zeta(2n) = r * pi^(2n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return (-1) ** (n - 1) * Fraction(2 ** (2 * n - 1)) * bernoulli(2 * n) / math.factorial(2 * n)


def zeta_ratio_exact(n: int) -> Fraction:
    """zeta(2n)^2 / zeta(4n) as an exact rational.

    Closed form -(4n)! B_2n^2 / (2 ((2n)!)^2 B_4n); the leading minus makes
    the value positive because B_4n < 0.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    b2, b4 = bernoulli(2 * n), bernoulli(4 * n)
    return -math.factorial(4 * n) * b2 * b2 / (2 * math.factorial(2 * n) ** 2 * b4)


def ratio_product_limit(s: int) -> Fraction:
    """Value of prod_p (p^2s - 1)/(p^2s + 1) = zeta(4s)/zeta(2s)^2."""
    return 1 / zeta_ratio_exact(s)


def l_chi4_target() -> Fraction:
    """L(1, chi)^3 / L(3, chi) for chi mod 4, from L(1) = pi/4 and L(3) = pi^3/32."""
    return Fraction(1, 4) ** 3 / Fraction(1, 32)


def zeta_partial_sum(s: int, terms: int) -> Fraction:
    """sum_{n<=terms} n^-s, summed over the common denominator lcm(1..terms)^s."""
    den = math.lcm(*range(1, terms + 1)) ** s
    return Fraction(sum(den // n**s for n in range(1, terms + 1)), den)


def zeta_interval(s: int, terms: int) -> RationalInterval:
    """Rational enclosure of zeta(s) for integer s >= 2.

    With S = sum_{n<=N} n^-s and N = terms, convexity of t^-s brackets the tail:
    the trapezoid rule overestimates and the midpoint rule underestimates each
    unit integral, giving

        (N+1)^(1-s)/(s-1) + (N+1)^-s/2  <=  tail  <=  (N+1/2)^(1-s)/(s-1).

    Both bounds lie inside the plain integral bracket [(N+1)^(1-s), N^(1-s)]/(s-1),
    and enclosures for larger N are nested inside those for smaller N.
    """
    if s < 2:
        raise ValueError("zeta_interval needs s >= 2")
    if terms < 1:
        raise ValueError("terms must be >= 1")
    S = zeta_partial_sum(s, terms)
    N = terms
    lo = S + Fraction(1, (s - 1) * (N + 1) ** (s - 1)) + Fraction(1, 2 * (N + 1) ** s)
    hi = S + Fraction(2 ** (s - 1), (s - 1) * (2 * N + 1) ** (s - 1))
    return RationalInterval(lo, hi)


def terms_for_width(s: int, width: Fraction) -> int:
    """Smallest power-of-two term count whose enclosure is narrower than ``width``."""
    n = 8
    while True:
        z = zeta_interval(s, n)
        if z.width < width:
            return n
        n *= 2
