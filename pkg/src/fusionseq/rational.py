"""Exact rational scalars and closed intervals.

Everything here is built on :class:`fractions.Fraction`, so interval
endpoints are exact and no directed rounding is needed: the rationals are
closed under the arithmetic we perform.  Square roots are the one
exception and return certified rational enclosures computed with integer
square roots.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]


def to_fraction(x) -> Fraction:
    """Parse ``x`` into an exact Fraction.

    Accepts int, Fraction, float (converted exactly, not via repr) and
    strings of the form ``"p/q"`` or ``"n"``.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational scalar")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if "/" in s:
            num, den = s.split("/", 1)
            return Fraction(int(num.strip()), int(den.strip()))
        return Fraction(int(s))
    raise TypeError(f"cannot interpret {type(x).__name__} as a rational")


def format_fraction(f: Fraction) -> str:
    """Render a Fraction as ``"p/q"``, or ``"n"`` when the denominator is 1."""
    f = Fraction(f)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


class RatInterval:
    """A closed interval [lo, hi] with exact rational endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = to_fraction(lo)
        hi = lo if hi is None else to_fraction(hi)
        if hi < lo:
            raise ValueError(f"empty interval: [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, name, value):
        raise AttributeError("RatInterval is immutable")

    @classmethod
    def point(cls, v) -> "RatInterval":
        v = to_fraction(v)
        return cls(v, v)

    # -- queries ------------------------------------------------------

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, v) -> bool:
        v = to_fraction(v)
        return self.lo <= v <= self.hi

    def intersects(self, other: "RatInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def strictly_below(self, other: "RatInterval") -> bool:
        """True when every point of self is < every point of other."""
        return self.hi < other.lo

    def is_positive(self) -> bool:
        return self.lo > 0

    def distance_to(self, other: "RatInterval") -> Fraction:
        """Gap between the two intervals; 0 when they intersect."""
        if self.intersects(other):
            return Fraction(0)
        if self.hi < other.lo:
            return other.lo - self.hi
        return self.lo - other.hi

    # -- arithmetic ---------------------------------------------------

    @staticmethod
    def _coerce(x) -> "RatInterval":
        if isinstance(x, RatInterval):
            return x
        return RatInterval.point(x)

    def __add__(self, other):
        o = self._coerce(other)
        return RatInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return RatInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        products = (
            self.lo * o.lo,
            self.lo * o.hi,
            self.hi * o.lo,
            self.hi * o.hi,
        )
        return RatInterval(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError(f"division by interval containing 0: {o}")
        inv = RatInterval(1 / o.hi, 1 / o.lo)
        return self * inv

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __eq__(self, other):
        return (
            isinstance(other, RatInterval)
            and self.lo == other.lo
            and self.hi == other.hi
        )

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __repr__(self):
        if self.is_point():
            return f"[{format_fraction(self.lo)}]"
        return f"[{format_fraction(self.lo)}, {format_fraction(self.hi)}]"


def _sqrt_bounds(x: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Certified rational bounds for sqrt(x), x >= 0, with ~bits of extra
    precision beyond the integer square root."""
    if x < 0:
        raise ValueError("square root of a negative rational")
    if x == 0:
        return Fraction(0), Fraction(0)
    p, q = x.numerator, x.denominator
    # sqrt(p/q) = sqrt(p*q)/q; scale by 4**bits so isqrt gains `bits` bits.
    scaled = p * q << (2 * bits)
    root = math.isqrt(scaled)
    den = q << bits
    lo = Fraction(root, den)
    hi = Fraction(root + 1, den)
    return lo, hi


def sqrt_interval(x: RatInterval, tol=Fraction(1, 10**15)) -> RatInterval:
    """Certified enclosure of {sqrt(t) : t in x}.

    The returned interval's slack beyond the intrinsic spread of the input
    is at most ``tol``.
    """
    tol = to_fraction(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    bits = 16
    while True:
        lo, _ = _sqrt_bounds(x.lo, bits)
        _, hi = _sqrt_bounds(x.hi, bits)
        # Slack added by the isqrt truncation is at most 2/(q << bits).
        slack = Fraction(1, x.lo.denominator << bits) + Fraction(
            1, x.hi.denominator << bits
        )
        if slack <= tol or bits > 8192:
            return RatInterval(lo, hi)
        bits *= 2


def interval_dot(u, v) -> RatInterval:
    """Interval dot product of two equal-length interval/scalar vectors."""
    if len(u) != len(v):
        raise ValueError("length mismatch")
    acc = RatInterval.point(0)
    for a, b in zip(u, v):
        acc = acc + RatInterval._coerce(a) * RatInterval._coerce(b)
    return acc


def interval_matvec(m, v) -> list[RatInterval]:
    """Interval matrix-vector product; m rows over interval/scalar entries."""
    return [interval_dot(row, v) for row in m]
