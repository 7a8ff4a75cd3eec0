"""Closed rational intervals with outward rounding, used to verify radical
expressions against exactly isolated roots."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, ceil

from .quadfield import QuadElem, iroot


def _down(x: Fraction, bits: int) -> Fraction:
    s = 1 << bits
    return Fraction(floor(x * s), s)


def _up(x: Fraction, bits: int) -> Fraction:
    s = 1 << bits
    return Fraction(ceil(x * s), s)


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x) -> "Interval":
        x = Fraction(x)
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def inside(self, other: "Interval") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def sign(self) -> int:
        """+1 / -1 when the interval excludes zero, 0 when undecided."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return 0

    def rounded(self, bits: int) -> "Interval":
        return Interval(_down(self.lo, bits), _up(self.hi, bits))

    def __add__(self, o):
        o = as_interval(o)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, o):
        return self + (-as_interval(o))

    def __rsub__(self, o):
        return as_interval(o) - self

    def __mul__(self, o):
        o = as_interval(o)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(ps), max(ps))

    __rmul__ = __mul__

    def reciprocal(self) -> "Interval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains zero")
        return Interval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, o):
        return self * as_interval(o).reciprocal()

    def __rtruediv__(self, o):
        return as_interval(o) * self.reciprocal()

    def __pow__(self, e: int):
        out = Interval.point(1)
        for _ in range(e):
            out = out * self
        return out

    def root(self, n: int, bits: int) -> "Interval":
        """Enclosure of the real n-th root, endpoints on the 2^-bits grid.

        Even roots need a nonnegative interval; a lower end below zero is
        only tolerated when the caller already knows the radicand is >= 0
        and passes a clamped interval.
        """
        if n % 2 == 0 and self.lo < 0:
            raise ValueError("even root of an interval reaching below zero")
        return Interval(_root_down(self.lo, n, bits), _root_up(self.hi, n, bits))

    def __str__(self):
        return f"[{float(self.lo):.12g}, {float(self.hi):.12g}]"


def _root_down(x: Fraction, n: int, bits: int) -> Fraction:
    if x < 0:
        return -_root_up(-x, n, bits)
    s = 1 << bits
    # floor(x * s^n) ** (1/n) / s  <=  x ** (1/n)
    v = floor(x * s ** n)
    return Fraction(iroot(v, n), s)


def _root_up(x: Fraction, n: int, bits: int) -> Fraction:
    if x < 0:
        return -_root_down(-x, n, bits)
    s = 1 << bits
    v = ceil(x * s ** n)
    r = iroot(v, n)
    if r ** n < v:
        r += 1
    return Fraction(r, s)


def sqrt_interval(d: int, bits: int) -> Interval:
    return Interval.point(d).root(2, bits)


def as_interval(x, bits: int = 64) -> Interval:
    if isinstance(x, Interval):
        return x
    if isinstance(x, QuadElem):
        if x.b == 0:
            return Interval.point(x.a)
        return Interval.point(x.a) + Interval.point(x.b) * sqrt_interval(x.d, bits)
    return Interval.point(x)


def eval_poly(f, x: Interval, bits: int = 64) -> Interval:
    """Horner evaluation of a Poly (over Q or Q(sqrt d)) on an interval."""
    acc = Interval.point(0)
    for c in reversed(f.coeffs):
        acc = (acc * x + as_interval(c, bits)).rounded(bits + 8)
    return acc
