"""Exact rational enclosures with outward rounding.

An Enclosure is a pair of Fractions lo <= hi certified to bracket a real
constant.  Arithmetic combines brackets so the result brackets the true
value whenever the inputs do.  `rounded` trims denominators (lo down, hi up)
so long product chains stay fast without losing soundness.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rat = Union[int, Fraction]


@dataclass(frozen=True)
class Enclosure:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty enclosure: {self.lo} > {self.hi}")

    @staticmethod
    def exact(value: Rat) -> "Enclosure":
        v = Fraction(value)
        return Enclosure(v, v)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, value: Rat) -> bool:
        return self.lo <= Fraction(value) <= self.hi

    def intersects(self, other: "Enclosure") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def intersect(self, other: "Enclosure") -> "Enclosure":
        if not self.intersects(other):
            raise ValueError("enclosures do not intersect")
        return Enclosure(max(self.lo, other.lo), min(self.hi, other.hi))

    def __add__(self, other: "Enclosure") -> "Enclosure":
        other = _coerce(other)
        return Enclosure(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __sub__(self, other: "Enclosure") -> "Enclosure":
        other = _coerce(other)
        return Enclosure(self.lo - other.hi, self.hi - other.lo)

    def __rsub__(self, other) -> "Enclosure":
        return _coerce(other) - self

    def __mul__(self, other: "Enclosure") -> "Enclosure":
        other = _coerce(other)
        products = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return Enclosure(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Enclosure":
        other = _coerce(other)
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError("divisor enclosure contains zero")
        quotients = (
            self.lo / other.lo,
            self.lo / other.hi,
            self.hi / other.lo,
            self.hi / other.hi,
        )
        return Enclosure(min(quotients), max(quotients))

    def __rtruediv__(self, other) -> "Enclosure":
        return _coerce(other) / self

    def one_minus(self) -> "Enclosure":
        return Enclosure(1 - self.hi, 1 - self.lo)

    def rounded(self, bits: int = 128) -> "Enclosure":
        """Outward rounding to denominator 2**bits."""
        scale = 1 << bits
        lo = Fraction(_floor_div(self.lo.numerator * scale, self.lo.denominator), scale)
        hi = Fraction(_ceil_div(self.hi.numerator * scale, self.hi.denominator), scale)
        return Enclosure(lo, hi)

    def __repr__(self):
        return f"Enclosure({float(self.lo)!r}, {float(self.hi)!r})"


def _coerce(x) -> Enclosure:
    if isinstance(x, Enclosure):
        return x
    return Enclosure.exact(x)


def _floor_div(a: int, b: int) -> int:
    return a // b


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def decimal_str(value: Fraction, digits: int, direction: str) -> str:
    """Correctly rounded decimal rendering of an exact rational.

    direction 'down' never overstates, 'up' never understates; used so that
    printed digits remain sound bounds.
    """
    if direction not in ("down", "up"):
        raise ValueError("direction must be 'down' or 'up'")
    scale = 10**digits
    scaled = value * scale
    n = (
        _floor_div(scaled.numerator, scaled.denominator)
        if direction == "down"
        else _ceil_div(scaled.numerator, scaled.denominator)
    )
    sign = "-" if n < 0 else ""
    n = abs(n)
    whole, frac = divmod(n, scale)
    return f"{sign}{whole}.{frac:0{digits}d}" if digits else f"{sign}{whole}"
