"""Euclidean and Hermite prime sequences, and the prime harmonic sum."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .intervals import RationalInterval, coprime_fraction, decimal_str, fraction_str, log_interval
from .primes import Effort, Factorization, PrimeTable, factorize, table_for

EUCLID_CAP = 25
HERMITE_CAP = 2000

# Reference lists as originally printed, kept verbatim for diffing.
PRINTED_EUCLID = (2, 3, 7, 5, 11, 103, 71, 61, 661, 19, 269, 329891, 39916801, 13, 83)
PRINTED_HERMITE = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43)

MATCH, MISMATCH, NOT_LISTED = "match", "mismatch", "not-listed"


class WilsonError(ArithmeticError):
    """(p-1)! + 1 was not divisible by p: an arithmetic bug, never expected."""


@dataclass(frozen=True)
class SequenceTerm:
    sequence: str
    index: int
    source: int
    factorization: Factorization | None
    extracted: int
    complete: bool
    paper_match: str

    def to_dict(self) -> dict:
        out = {
            "sequence": self.sequence,
            "index": self.index,
            "source": str(self.source),
            "source_digits": len(str(self.source)),
            "extracted": str(self.extracted),
            "complete": self.complete,
            "paper_match": self.paper_match,
        }
        if self.factorization is not None:
            f = self.factorization
            out["factors"] = [[str(p), e] for p, e in f.factors]
            out["cofactor"] = str(f.cofactor)
            out["certified"] = f.certified
        return out


def _match(printed: tuple[int, ...], index: int, value: int) -> str:
    if index > len(printed):
        return NOT_LISTED
    return MATCH if printed[index - 1] == value else MISMATCH


def euclid_term(n: int, effort: Effort | None = None, cap: int = EUCLID_CAP) -> SequenceTerm:
    """Largest prime factor of n! + 1.

    If the budget runs out the term is marked incomplete and ``extracted`` is
    the largest prime found so far (the remaining cofactor may hide a larger
    one).
    """
    if n < 1 or n > cap:
        raise ValueError(f"n must be in [1, {cap}], got {n}")
    source = math.factorial(n) + 1
    f = factorize(source, effort)
    extracted = f.largest() or 1
    complete = f.complete and f.certified
    return SequenceTerm("euclid", n, source, f, extracted, complete,
                        _match(PRINTED_EUCLID, n, extracted))


def wilson_holds(p: int) -> bool:
    """(p-1)! == -1 (mod p), by a running product mod p."""
    acc = 1
    for k in range(2, p):
        acc = acc * k % p
    return acc == p - 1


def hermite_term(k: int, table: PrimeTable | None = None, cap: int = HERMITE_CAP) -> SequenceTerm:
    """Smallest prime factor of (p-1)! + 1 for the k-th prime p, without factoring.

    Every prime below p divides (p-1)!, so none divides (p-1)! + 1, and p does
    by Wilson's theorem; hence the answer is p itself.  The congruence is
    still checked explicitly.
    """
    table = table_for(cap, table)
    if k < 1 or k > table.count(cap):
        raise ValueError(f"k must be in [1, pi({cap})], got {k}")
    p = table.nth(k)
    if not wilson_holds(p):
        raise WilsonError(f"(p-1)! + 1 not divisible by p = {p}")
    source = math.factorial(p - 1) + 1
    return SequenceTerm("hermite", k, source, None, p, True, _match(PRINTED_HERMITE, k, p))


def euclid_sequence(max_n: int, effort: Effort | None = None) -> list[SequenceTerm]:
    return [euclid_term(n, effort) for n in range(1, max_n + 1)]


def hermite_sequence(count: int, table: PrimeTable | None = None) -> list[SequenceTerm]:
    return [hermite_term(k, table) for k in range(1, count + 1)]


@dataclass(frozen=True)
class HarmonicSum:
    """sum_{p<=x} 1/p and its drift from log log x."""

    x: int
    value: Fraction
    loglog: RationalInterval
    drift: RationalInterval

    def to_dict(self) -> dict:
        return {
            "x": self.x,
            "value": fraction_str(self.value),
            "value_approx": decimal_str(self.value, 12),
            "loglog_x": self.loglog.approx(12),
            "drift": self.drift.approx(12),
            "drift_enclosure": [decimal_str(self.drift.lo, 15), decimal_str(self.drift.hi, 15)],
        }


def prime_harmonic_sums(xs: Iterable[int], table: PrimeTable | None = None) -> list[HarmonicSum]:
    """Harmonic sums at each cutoff in ``xs`` (non-decreasing), in one pass.

    Adding 1/p to a reduced a/b with p not dividing b gives (a p + b)/(b p),
    which is already in lowest terms, so no gcd is needed.
    """
    xs = list(xs)
    if any(x < 3 for x in xs):
        raise ValueError("x must be >= 3")
    if any(b < a for a, b in zip(xs, xs[1:])):
        raise ValueError("cutoffs must be non-decreasing")
    if not xs:
        return []
    primes = table_for(xs[-1], table).upto(xs[-1])
    num, den = 0, 1
    i = 0
    out = []
    for x in xs:
        while i < len(primes) and primes[i] <= x:
            p = primes[i]
            num, den = num * p + den, den * p
            i += 1
        value = coprime_fraction(num, den)
        loglog = log_interval(log_interval(x))
        out.append(HarmonicSum(x, value, loglog, value - loglog))
    return out


def prime_harmonic_sum(x: int, table: PrimeTable | None = None) -> HarmonicSum:
    return prime_harmonic_sums([x], table)[0]
