"""Gaussian-rational scalars.

All algebraic identities in this package are checked with exact
arithmetic, so the scalar field is Q(i): complex numbers whose real and
imaginary parts are `fractions.Fraction`.  Floats never enter except in
the numerical flat solver.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Union

RationalLike = Union[int, Fraction]


class ExactComplex:
    """A complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "ExactComplex") -> "ExactComplex":
        return ExactComplex(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "ExactComplex") -> "ExactComplex":
        return ExactComplex(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "ExactComplex":
        return ExactComplex(-self.re, -self.im)

    def __mul__(self, other: "ExactComplex") -> "ExactComplex":
        a, b, c, d = self.re, self.im, other.re, other.im
        return ExactComplex(a * c - b * d, a * d + b * c)

    def __truediv__(self, other: "ExactComplex") -> "ExactComplex":
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by exact complex zero")
        a, b, c, d = self.re, self.im, other.re, other.im
        return ExactComplex((a * c + b * d) / n, (b * c - a * d) / n)

    def scale(self, r: RationalLike) -> "ExactComplex":
        """Multiply by a rational scalar (cheaper than full product)."""
        r = Fraction(r)
        return ExactComplex(self.re * r, self.im * r)

    def conj(self) -> "ExactComplex":
        return ExactComplex(self.re, -self.im)

    # -- predicates / conversions -------------------------------------

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def is_imaginary(self) -> bool:
        """Purely imaginary (zero counts)."""
        return self.re == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactComplex):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        if self.im == 0:
            return f"EC({self.re})"
        return f"EC({self.re}, {self.im})"

    # -- wire format ---------------------------------------------------

    def to_quad(self) -> list:
        """Serialize as [re_num, re_den, im_num, im_den]."""
        return [
            self.re.numerator,
            self.re.denominator,
            self.im.numerator,
            self.im.denominator,
        ]

    @staticmethod
    def from_quad(q) -> "ExactComplex":
        if len(q) != 4:
            raise ValueError(f"scalar quadruple must have 4 entries, got {len(q)}")
        return ExactComplex(
            Fraction(int(q[0]), int(q[1])), Fraction(int(q[2]), int(q[3]))
        )


EC = ExactComplex
ZERO = ExactComplex(0)
ONE = ExactComplex(1)
I = ExactComplex(0, 1)


def ec(re: RationalLike = 0, im: RationalLike = 0) -> ExactComplex:
    return ExactComplex(re, im)


def rational_sqrt(q: Fraction):
    """Exact square root of a nonnegative rational, or None if irrational."""
    if q < 0:
        return None
    rn, rd = isqrt(q.numerator), isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None
