"""Certified interval arithmetic with exact rational endpoints.

Ring operations on intervals and boxes are exact over ``Fraction`` endpoints,
so containment of the true value is preserved with no rounding analysis.
Endpoints are pushed back onto a dyadic grid via ``round_out`` after
refinement steps to keep denominators bounded.  The only transcendental
function needed anywhere in the package is the real logarithm, which is
delegated to mpmath's directed-rounding interval context and converted back
to exact rational endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath.libmp import from_man_exp, mpi_log, to_rational


def dyadic_floor(x: Fraction, bits: int) -> Fraction:
    return Fraction((x.numerator << bits) // x.denominator, 1 << bits)


def dyadic_ceil(x: Fraction, bits: int) -> Fraction:
    return -dyadic_floor(-x, bits)


@dataclass(frozen=True)
class Interval:
    """Closed real interval [lo, hi] with Fraction endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @staticmethod
    def point(x) -> "Interval":
        x = Fraction(x)
        return Interval(x, x)

    @staticmethod
    def make(lo, hi) -> "Interval":
        return Interval(Fraction(lo), Fraction(hi))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            return Interval(self.lo + other, self.hi + other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return Interval(self.lo - other, self.hi - other)
        return Interval(self.lo - other.hi, self.hi - other.lo)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other >= 0:
                return Interval(self.lo * other, self.hi * other)
            return Interval(self.hi * other, self.lo * other)
        vals = (self.lo * other.lo, self.lo * other.hi,
                self.hi * other.lo, self.hi * other.hi)
        return Interval(min(vals), max(vals))

    __rmul__ = __mul__

    def sq(self) -> "Interval":
        """Tight square (handles intervals straddling zero)."""
        a, b = abs(self.lo), abs(self.hi)
        hi = max(a, b) ** 2
        lo = Fraction(0) if self.contains_zero() else min(a, b) ** 2
        return Interval(lo, hi)

    def recip(self) -> "Interval":
        if self.contains_zero():
            raise ZeroDivisionError("interval contains zero")
        return Interval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Interval.point(other)
        return self * other.recip()

    def pow_int(self, k: int) -> "Interval":
        if k < 0:
            return self.recip().pow_int(-k)
        result = Interval.point(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base.sq()
            k >>= 1
        return result

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def is_positive(self) -> bool:
        return self.lo > 0

    def is_negative(self) -> bool:
        return self.hi < 0

    def sign(self):
        """-1, 0-straddling (None), or +1."""
        if self.is_positive():
            return 1
        if self.is_negative():
            return -1
        return None

    def disjoint(self, other: "Interval") -> bool:
        return self.hi < other.lo or other.hi < self.lo

    def intersects(self, other: "Interval") -> bool:
        return not self.disjoint(other)

    def intersect(self, other: "Interval"):
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo > hi:
            return None
        return Interval(lo, hi)

    def hull(self, other: "Interval") -> "Interval":
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))

    def round_out(self, bits: int) -> "Interval":
        return Interval(dyadic_floor(self.lo, bits), dyadic_ceil(self.hi, bits))

    def width_le_2pow(self, negbits: int) -> bool:
        """width <= 2**-negbits."""
        return self.width * (1 << negbits) <= 1

    def __repr__(self):
        return f"[{float(self.lo)!r}, {float(self.hi)!r}]"


@dataclass(frozen=True)
class Box:
    """Rectangular complex enclosure re + i*im."""

    re: Interval
    im: Interval

    @staticmethod
    def point(re, im=0) -> "Box":
        return Box(Interval.point(re), Interval.point(im))

    @staticmethod
    def from_interval(x: Interval) -> "Box":
        return Box(x, Interval.point(0))

    @property
    def width(self) -> Fraction:
        return max(self.re.width, self.im.width)

    def __add__(self, other):
        other = _as_box(other)
        return Box(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_box(other)
        return Box(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Box(-self.re, -self.im)

    def __mul__(self, other):
        other = _as_box(other)
        return Box(self.re * other.re - self.im * other.im,
                   self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def conj(self) -> "Box":
        return Box(self.re, -self.im)

    def mag2(self) -> Interval:
        return self.re.sq() + self.im.sq()

    def recip(self) -> "Box":
        m = self.mag2()
        if m.contains_zero():
            raise ZeroDivisionError("box contains zero")
        inv = m.recip()
        return Box(self.re * inv, -self.im * inv)

    def __truediv__(self, other):
        return self * _as_box(other).recip()

    def pow_int(self, k: int) -> "Box":
        if k < 0:
            return self.recip().pow_int(-k)
        result = Box.point(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def contains(self, re, im=0) -> bool:
        return self.re.contains(re) and self.im.contains(im)

    def disjoint(self, other: "Box") -> bool:
        return self.re.disjoint(other.re) or self.im.disjoint(other.im)

    def intersects(self, other: "Box") -> bool:
        return not self.disjoint(other)

    def intersect(self, other: "Box"):
        re = self.re.intersect(other.re)
        im = self.im.intersect(other.im)
        if re is None or im is None:
            return None
        return Box(re, im)

    def strictly_inside(self, other: "Box") -> bool:
        return (other.re.lo < self.re.lo and self.re.hi < other.re.hi
                and other.im.lo < self.im.lo and self.im.hi < other.im.hi)

    def round_out(self, bits: int) -> "Box":
        return Box(self.re.round_out(bits), self.im.round_out(bits))

    def mid_point(self) -> "Box":
        return Box.point(self.re.mid, self.im.mid)

    def __repr__(self):
        return f"Box({self.re!r}, {self.im!r}i)"


def _as_box(v) -> Box:
    if isinstance(v, Box):
        return v
    if isinstance(v, Interval):
        return Box.from_interval(v)
    return Box.point(Fraction(v))


def as_box(v) -> Box:
    return _as_box(v)


def eval_poly(coeffs, x):
    """Horner evaluation of Fraction coefficients at an Interval or Box."""
    acc = Interval.point(0) if isinstance(x, Interval) else Box.point(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def log_interval(x: Interval, prec: int) -> Interval:
    """Certified enclosure of log over a strictly positive interval.

    Endpoints are first pushed outward onto a dyadic grid (exact mpf values),
    then mpmath's directed-rounding interval log is applied, so the result
    contains log(y) for every y in x.
    """
    if not x.is_positive():
        raise ValueError("log requires a strictly positive interval")
    grid = prec + 16
    lo_d = dyadic_floor(x.lo, grid)
    while lo_d <= 0:
        grid *= 2
        lo_d = dyadic_floor(x.lo, grid)
    hi_d = dyadic_ceil(x.hi, grid)
    zlo, zhi = mpi_log((_dyadic_to_mpf(lo_d), _dyadic_to_mpf(hi_d)), prec + 16)
    return Interval(Fraction(*to_rational(zlo)), Fraction(*to_rational(zhi)))


def _dyadic_to_mpf(x: Fraction):
    """Exact mpf tuple for a dyadic rational (denominator a power of two)."""
    den = x.denominator
    shift = den.bit_length() - 1
    assert den == 1 << shift
    return from_man_exp(x.numerator, -shift)
