"""Partial Euler products as exact reduced fractions, with 2-adic growth checks.

Three product families are supported, each a product over primes p <= x:

* ``euler``  -- prod (p^s - 1) / p^s, the truncation of 1/zeta(s);
* ``ratio``  -- prod (p^2s - 1) / (p^2s + 1), tending to zeta(4s)/zeta(2s)^2
  (2/5 for s = 1);
* ``l-chi4`` -- the Euler product of L(1, chi)^3 / L(3, chi) for the
  non-principal character mod 4, tending to 1/2.

Records keep the valuations of the *un-reduced* numerator A_x and
denominator B_x, because the growth lemmas are statements about those.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterable, Iterator

from .intervals import coprime_fraction, decimal_str, fraction_str
from .primes import PrimeTable, table_for, two_adic_valuation

KINDS = ("euler", "ratio", "l-chi4")


class ParameterError(ValueError):
    pass


def _euler_factor(s: int) -> Callable[[int], tuple[int, int]]:
    def factor(p: int) -> tuple[int, int]:
        ps = p**s
        return ps - 1, ps
    return factor


def _ratio_factor(s: int) -> Callable[[int], tuple[int, int]]:
    def factor(p: int) -> tuple[int, int]:
        ps = p ** (2 * s)
        return ps - 1, ps + 1
    return factor


def _l_chi4_factor(p: int) -> tuple[int, int]:
    if p == 2:
        return 1, 1
    if p % 4 == 1:
        return p**3 - 1, (p - 1) ** 3
    return p**3 + 1, (p + 1) ** 3


def factor_function(kind: str, s: int) -> Callable[[int], tuple[int, int]]:
    """(numerator, denominator) of the Euler factor at prime p, un-reduced."""
    if kind == "euler":
        return _euler_factor(s)
    if kind == "ratio":
        return _ratio_factor(s)
    if kind == "l-chi4":
        return _l_chi4_factor
    raise ParameterError(f"unknown product kind {kind!r}; expected one of {KINDS}")


@dataclass(frozen=True)
class ProductRecord:
    kind: str
    s: int
    x: int
    pi_x: int
    fraction: Fraction
    v2_A: int
    v2_B: int
    warnings: tuple[str, ...] = field(default=(), compare=False)

    @property
    def p_x(self) -> int:
        return self.fraction.numerator

    @property
    def q_x(self) -> int:
        return self.fraction.denominator

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "s": self.s,
            "x": self.x,
            "pi_x": self.pi_x,
            "fraction": fraction_str(self.fraction),
            "numerator": str(self.fraction.numerator),
            "denominator": str(self.fraction.denominator),
            "v2_A": self.v2_A,
            "v2_B": self.v2_B,
            "warnings": list(self.warnings),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ProductRecord":
        frac = coprime_fraction(int(d["numerator"]), int(d["denominator"]))
        if frac != Fraction(d["fraction"]):
            raise ValueError("numerator/denominator disagree with fraction field")
        return cls(d["kind"], int(d["s"]), int(d["x"]), int(d["pi_x"]), frac,
                   int(d["v2_A"]), int(d["v2_B"]), tuple(d.get("warnings", ())))


def _check_params(kind: str, s: int) -> None:
    if kind not in KINDS:
        raise ParameterError(f"unknown product kind {kind!r}")
    if not isinstance(s, int) or s < 1:
        raise ParameterError(f"s must be a positive integer, got {s!r}")


def iter_records(kind: str, s: int, xs: Iterable[int],
                 table: PrimeTable | None = None) -> Iterator[ProductRecord]:
    """Yield one record per requested cutoff, sweeping primes once.

    ``xs`` must be non-decreasing.  The reduced fraction is maintained
    incrementally: each appended factor a/b is cancelled against the running
    q and p with two small gcds, so no full-size gcd is ever taken.
    """
    _check_params(kind, s)
    xs = list(xs)
    if any(b < a for a, b in zip(xs, xs[1:])):
        raise ParameterError("cutoffs must be non-decreasing")
    if not xs:
        return
    table = table_for(max(xs[-1], 2), table)
    factor = factor_function(kind, s)
    primes = table.upto(max(xs[-1], 2))
    A = B = 1
    num = den = 1
    i = 0
    for x in xs:
        while i < len(primes) and primes[i] <= x:
            a, b = factor(primes[i])
            A *= a
            B *= b
            g0 = math.gcd(a, b)
            a, b = a // g0, b // g0
            g1 = math.gcd(num, b)
            g2 = math.gcd(a, den)
            num = (num // g1) * (a // g2)
            den = (den // g2) * (b // g1)
            i += 1
        warnings = ()
        if i == 0 or (kind == "l-chi4" and x < 3):
            warnings = ("empty product",)
        yield ProductRecord(kind, s, x, i, coprime_fraction(num, den),
                            two_adic_valuation(A), two_adic_valuation(B), warnings)


def partial_product(kind: str, s: int, x: int, table: PrimeTable | None = None) -> ProductRecord:
    return next(iter_records(kind, s, [x], table))


def euler_partial(s: int, x: int, table: PrimeTable | None = None) -> ProductRecord:
    """prod_{p<=x} (1 - p^-s) for s >= 2.

    s = 1 is rejected here: the limiting object 1/zeta(1) degenerates.  The
    growth checks for s = 1 go through :func:`partial_product` directly.
    """
    if not isinstance(s, int) or s < 2:
        raise ParameterError(f"euler_partial needs integer s >= 2, got {s!r}")
    return partial_product("euler", s, x, table)


def ratio_partial(s: int, x: int, table: PrimeTable | None = None) -> ProductRecord:
    return partial_product("ratio", s, x, table)


def l_chi4_partial(x: int, table: PrimeTable | None = None) -> ProductRecord:
    return partial_product("l-chi4", 1, x, table)


def naive_fraction(kind: str, s: int, x: int, table: PrimeTable | None = None) -> tuple[int, int, Fraction]:
    """Un-reduced (A_x, B_x) and their single end reduction."""
    factor = factor_function(kind, s)
    A = B = 1
    for p in table_for(max(x, 2), table).upto(x):
        a, b = factor(p)
        A *= a
        B *= b
    return A, B, Fraction(A, B)


# -- growth lemmas ----------------------------------------------------------

def _at_least_power_of_two(n: int, e: int) -> bool:
    """n >= 2**e for positive n and any integer e."""
    if e <= 0:
        return n >= 1
    return n.bit_length() > e


@dataclass(frozen=True)
class GrowthVerdict:
    """Outcome of the 2-adic growth claims for one record.

    ``checks`` holds the claims that make up the lemma; ``informational``
    records side observations that are not part of the verdict.
    """

    kind: str
    s: int
    x: int
    pi_x: int
    checks: dict
    slack: dict
    informational: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {
            "kind": self.kind, "s": self.s, "x": self.x, "pi_x": self.pi_x,
            "holds": self.holds, "checks": dict(self.checks),
            "slack": dict(self.slack), "informational": dict(self.informational),
        }


def growth_check_euler(record: ProductRecord) -> GrowthVerdict:
    if record.kind != "euler":
        raise ParameterError("growth_check_euler needs an euler record")
    pi, s = record.pi_x, record.s
    p, q = record.p_x, record.q_x
    e = pi - s - 1
    checks = {
        "v2_A_ge_pi_minus_1": record.v2_A >= pi - 1,
        "v2_B_eq_s": record.v2_B == s if pi >= 1 else record.v2_B == 0,
        "p_x_ge_2^(pi-s-1)": _at_least_power_of_two(p, e),
        "q_x_ge_p_x": q >= p,
    }
    slack = {
        "v2_A_minus_(pi-1)": record.v2_A - (pi - 1),
        "log2_floor_p_x_minus_(pi-s-1)": p.bit_length() - 1 - e,
    }
    informational = {"value_in_[1/2,1]": Fraction(1, 2) <= record.fraction <= 1}
    return GrowthVerdict("euler", s, record.x, pi, checks, slack, informational)


def growth_check_ratio(record: ProductRecord) -> GrowthVerdict:
    if record.kind != "ratio":
        raise ParameterError("growth_check_ratio needs a ratio record")
    pi, s = record.pi_x, record.s
    p, q = record.p_x, record.q_x
    e = pi - s - 1
    checks = {
        "v2_A_ge_2pi_minus_2": record.v2_A >= 2 * pi - 2,
        "v2_B_eq_pi_minus_1": record.v2_B == max(pi - 1, 0),
        "p_x_ge_2^(pi-s-1)": _at_least_power_of_two(p, e),
        "value_in_[1/4,1]": Fraction(1, 4) <= record.fraction <= 1,
    }
    slack = {
        "v2_A_minus_(2pi-2)": record.v2_A - (2 * pi - 2),
        "log2_floor_p_x_minus_(pi-s-1)": p.bit_length() - 1 - e,
        "value_minus_1/4": decimal_str(record.fraction - Fraction(1, 4), 12),
    }
    return GrowthVerdict("ratio", s, record.x, pi, checks, slack, {"q_x_ge_p_x": q >= p})


def with_x(record: ProductRecord, x: int) -> ProductRecord:
    return replace(record, x=x)
