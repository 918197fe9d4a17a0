"""Rational intervals with outward rounding, and certified enclosures of the
irrational constants 4/e, sqrt(3) and cbrt(40/9)."""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import ContractError

CONSTANTS = ("four-over-e", "sqrt3", "cbrt-40-over-9")

PRECISION_ENV = "LATBOUND_PRECISION"
MIN_PRECISION = Fraction(1, 10**60)


def _precision_from_env() -> Fraction:
    raw = os.environ.get(PRECISION_ENV)
    if not raw:
        return Fraction(1, 10**12)
    value = Fraction(raw.strip())
    if value <= 0:
        raise ContractError(f"{PRECISION_ENV} must be positive")
    return value


# starting width for certified comparisons; halved until decided or below MIN_PRECISION
DEFAULT_PRECISION = _precision_from_env()


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ContractError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, q) -> "Interval":
        q = Fraction(q)
        return cls(q, q)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __add__(self, other):
        other = _as_interval(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __mul__(self, other):
        other = _as_interval(other)
        ps = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return Interval(min(ps), max(ps))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ContractError("negative interval power")
        if self.lo >= 0:
            return Interval(self.lo ** n, self.hi ** n)
        result = Interval.point(1)
        for _ in range(n):
            result = result * self
        return result

    def compare(self, other) -> str | None:
        """``'<'``, ``'>'`` or ``'='`` when decided, else ``None``."""
        other = _as_interval(other)
        if self.hi < other.lo:
            return "<"
        if self.lo > other.hi:
            return ">"
        if self.lo == self.hi == other.lo == other.hi:
            return "="
        return None


def _as_interval(x) -> Interval:
    return x if isinstance(x, Interval) else Interval.point(x)


def _grid(precision: Fraction) -> int:
    # power-of-two grids make successive enclosures nested
    n = 1 << max(0, (precision.denominator // precision.numerator).bit_length() - 1)
    while Fraction(1, n) > precision:
        n *= 2
    return n


def _icbrt(n: int) -> int:
    """floor(cbrt(n)) for n >= 0."""
    if n < 0:
        raise ContractError("negative cube root")
    x = 1 << ((n.bit_length() + 2) // 3 + 1)
    while True:
        y = (2 * x + n // (x * x)) // 3
        if y >= x:
            break
        x = y
    while x ** 3 > n:
        x -= 1
    while (x + 1) ** 3 <= n:
        x += 1
    return x


def enclose_constant(name: str, precision=DEFAULT_PRECISION) -> Interval:
    """Rational interval of width <= ``precision`` containing the named constant."""
    return _enclose(name, Fraction(precision))


@lru_cache(maxsize=1024)
def _enclose(name: str, precision: Fraction) -> Interval:
    if precision <= 0:
        raise ContractError("precision must be positive")
    if name == "sqrt3":
        n = _grid(precision)
        lo = math.isqrt(3 * n * n)
        return Interval(Fraction(lo, n), Fraction(lo + 1, n))
    if name == "cbrt-40-over-9":
        # cbrt(40/9) = cbrt(3240) / 9
        n = _grid(precision)
        lo = _icbrt(3240 * n ** 3)
        return Interval(Fraction(lo, 9 * n), Fraction(lo + 1, 9 * n))
    if name == "four-over-e":
        # alternating series for 1/e: consecutive partial sums bracket it
        s = Fraction(0)
        term = Fraction(1)
        k = 0
        while True:
            s_next = s + (term if k % 2 == 0 else -term)
            k += 1
            term /= k
            if k >= 2 and 4 * term <= precision:
                s_after = s_next + (term if k % 2 == 0 else -term)
                lo, hi = sorted((s_next, s_after))
                return Interval(4 * lo, 4 * hi)
            s = s_next
    raise ContractError(f"unknown constant {name!r}")
