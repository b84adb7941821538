"""Prime tables, prime counting, factorization and 2-adic valuations.

Everything else in the package consumes primes through :class:`PrimeTable`.
Tables are immutable once built and may be shared between threads.
"""
from __future__ import annotations

import math
import os
import random
import time
from bisect import bisect_right
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

import numpy as np

DEFAULT_MAX_LIMIT = 10**8
SEGMENT_SIZE = 1 << 18

# Miller-Rabin with the first 13 prime bases is deterministic below this bound
# (Sorenson & Webster).  It covers every 64-bit integer.
MR_DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981
MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
PROBABLE_PRIME_ROUNDS = 40


class CapacityError(ValueError):
    """Requested size is outside the configured limits."""


class CoverageError(ValueError):
    """Query falls outside the range covered by a prime table."""


def max_limit() -> int:
    return int(os.environ.get("EULERBOUND_MAX_PRIME_LIMIT", DEFAULT_MAX_LIMIT))


def _small_sieve(n: int) -> np.ndarray:
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags)


def segmented_sieve(limit: int, segment: int = SEGMENT_SIZE) -> np.ndarray:
    """All primes <= limit as an int64 array, sieving one segment at a time."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    root = math.isqrt(limit)
    base = _small_sieve(root)
    chunks = [base.astype(np.int64)]
    lo = root + 1
    while lo <= limit:
        hi = min(lo + segment, limit + 1)
        flags = np.ones(hi - lo, dtype=bool)
        for p in base.tolist():
            if p * p >= hi:
                break
            start = max(p * p, -(-lo // p) * p)
            flags[start - lo :: p] = False
        chunks.append(np.flatnonzero(flags).astype(np.int64) + lo)
        lo = hi
    return np.concatenate(chunks)


@dataclass(frozen=True)
class PrimeTable:
    """All primes up to ``limit``, strictly increasing."""

    limit: int
    primes: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return len(self.primes)

    def count(self, x) -> int:
        return prime_count(self, x)

    def upto(self, x: int) -> list[int]:
        """Primes <= x as Python ints (safe for big-integer arithmetic)."""
        return self.primes[: self.count(x)].tolist()

    def nth(self, k: int) -> int:
        """The k-th prime, 1-based."""
        if k < 1 or k > len(self.primes):
            raise CoverageError(f"k={k} outside 1..{len(self.primes)} for limit {self.limit}")
        return int(self.primes[k - 1])

    def __iter__(self) -> Iterator[int]:
        return iter(self.primes.tolist())


def build_prime_table(limit: int) -> PrimeTable:
    if not isinstance(limit, (int, np.integer)) or limit < 2 or limit > max_limit():
        raise CapacityError(f"limit must be in [2, {max_limit()}], got {limit}")
    limit = int(limit)
    primes = segmented_sieve(limit)
    primes.setflags(write=False)
    return PrimeTable(limit, primes)


@lru_cache(maxsize=8)
def _cached_table(limit: int) -> PrimeTable:
    return build_prime_table(limit)


def table_for(x: int, table: PrimeTable | None = None) -> PrimeTable:
    """Return ``table`` if it covers x, else a shared cached table that does."""
    if table is not None:
        if x > table.limit:
            raise CoverageError(f"x={x} exceeds table limit {table.limit}")
        return table
    limit = 10_000
    while limit < x:
        limit *= 10
    if limit > max_limit():
        limit = max(int(x), 2)
    return _cached_table(limit)


def prime_count(table: PrimeTable, x) -> int:
    """pi(x) for real x >= 0 within the table's range."""
    if x < 0:
        raise ValueError("x must be non-negative")
    if x > table.limit:
        raise CoverageError(f"x={x} exceeds table limit {table.limit}")
    return int(np.searchsorted(table.primes, math.floor(x), side="right"))


def two_adic_valuation(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    return (n & -n).bit_length() - 1


# -- primality ---------------------------------------------------------------

def _mr_witness(n: int, a: int, d: int, r: int) -> bool:
    """True if ``a`` proves n composite."""
    y = pow(a, d, n)
    if y == 1 or y == n - 1:
        return False
    for _ in range(r - 1):
        y = y * y % n
        if y == n - 1:
            return False
    return True


def miller_rabin(n: int, bases) -> bool:
    if n < 2:
        return False
    for p in MR_BASES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    return not any(_mr_witness(n, a % n, d, r) for a in bases if a % n)


def is_probable_prime(n: int, rounds: int = PROBABLE_PRIME_ROUNDS) -> bool:
    """Miller-Rabin; deterministic below MR_DETERMINISTIC_LIMIT, else ``rounds`` seeded bases."""
    if n < MR_DETERMINISTIC_LIMIT:
        return miller_rabin(n, MR_BASES)
    rng = random.Random(n)
    bases = [rng.randrange(2, n - 1) for _ in range(rounds)]
    return miller_rabin(n, MR_BASES + tuple(bases))


@dataclass
class Effort:
    """Factoring budget: trial-division bound, Pollard rho iterations and wall-clock cap."""

    trial_bound: int = 10**6
    rho_iterations: int = 5_000_000
    time_cap: float = 120.0
    _deadline: float | None = field(default=None, repr=False, compare=False)

    def start(self) -> "Effort":
        return Effort(self.trial_bound, self.rho_iterations, self.time_cap,
                      time.monotonic() + self.time_cap)

    def expired(self) -> bool:
        return self._deadline is not None and time.monotonic() > self._deadline


@dataclass(frozen=True)
class Factorization:
    """``n = prod(p**e for p, e in factors) * cofactor``.

    ``cofactor`` is 1 when the factorization is complete; otherwise it is the
    composite part the budget could not split.  ``certified`` is true iff every
    listed prime passed a certification step (deterministic Miller-Rabin or a
    Pocklington certificate) rather than only a probabilistic test.
    """

    n: int
    factors: tuple[tuple[int, int], ...]
    certified: bool
    cofactor: int = 1

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    def product(self) -> int:
        out = self.cofactor
        for p, e in self.factors:
            out *= p**e
        return out

    def largest(self) -> int | None:
        return self.factors[-1][0] if self.factors else None

    def smallest(self) -> int | None:
        return self.factors[0][0] if self.factors else None

    def as_dict(self) -> dict:
        return {p: e for p, e in self.factors}


class _Exhausted(Exception):
    pass


def _brent_rho(n: int, c: int, budget: list[int], effort: Effort) -> int | None:
    """Brent's variant of Pollard rho.  Returns a non-trivial factor or None."""
    y, m, g, r, q = 2, 128, 1, 1, 1
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
            budget[0] -= m
            if budget[0] <= 0 or effort.expired():
                raise _Exhausted
        r *= 2
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    return g if g != n else None


def _split(n: int, budget: list[int], effort: Effort) -> int:
    if n % 2 == 0:
        return 2
    if math.isqrt(n) ** 2 == n:
        return math.isqrt(n)
    for c in range(1, 64):
        d = _brent_rho(n, c, budget, effort)
        if d:
            return d
    raise _Exhausted


def certify_prime(n: int, effort: Effort | None = None, _depth: int = 0) -> bool:
    """Prove n prime.  False means "not proven", not "composite"."""
    if not is_probable_prime(n):
        return False
    if n < MR_DETERMINISTIC_LIMIT:
        return True
    if _depth > 8:
        return False
    # Pocklington: a fully factored, certified part F of n-1 with F^2 > n.
    effort = effort or Effort().start()
    part = factorize(n - 1, effort, _depth=_depth + 1)
    F, primes = 1, []
    for p, e in part.factors:
        F *= p**e
        primes.append(p)
    if not part.certified or F * F <= n:
        return False
    for q in primes:
        for a in range(2, 200):
            if pow(a, n - 1, n) != 1:
                return False
            if math.gcd(pow(a, (n - 1) // q, n) - 1, n) == 1:
                break
        else:
            return False
    return True


def factorize(n: int, effort: Effort | None = None, _depth: int = 0) -> Factorization:
    """Trial division up to ``effort.trial_bound`` then Pollard rho.

    When the budget runs out the result carries the unsplit composite as
    ``cofactor``; the reassembled product always equals n.
    """
    if n < 1:
        raise ValueError("n must be positive")
    effort = effort or Effort()
    if effort._deadline is None:
        effort = effort.start()
    found: dict[int, int] = {}
    m = n
    bound = effort.trial_bound
    table = table_for(min(bound, max(2, math.isqrt(m) + 1)))
    for p in table.primes.tolist():
        if p > bound or p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            found[p] = e
    certified = True
    cofactor = 1
    budget = [effort.rho_iterations]
    stack = [m] if m > 1 else []
    while stack:
        k = stack.pop()
        if k <= bound * bound or is_probable_prime(k):
            # below bound^2 a trial-divided survivor is prime
            if k > bound * bound:
                certified &= certify_prime(k, effort, _depth) if k >= MR_DETERMINISTIC_LIMIT else True
            found[k] = found.get(k, 0) + 1
            continue
        try:
            d = _split(k, budget, effort)
        except _Exhausted:
            cofactor *= k
            continue
        stack.extend((d, k // d))
    factors = tuple(sorted(found.items()))
    return Factorization(n, factors, certified, cofactor)
