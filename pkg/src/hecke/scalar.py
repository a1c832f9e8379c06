"""Exact scalars: rationals (``fractions.Fraction``), Gaussian rationals and
q-adic valuations.

Nothing in this module touches floating point.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union

from .errors import DomainError, ParseError

Rational = Fraction

#: valuation of zero
INFINITY = math.inf

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def is_prime(q: int) -> bool:
    if not isinstance(q, int) or isinstance(q, bool) or q < 2:
        return False
    if q < 4:
        return True
    if q % 2 == 0:
        return False
    return all(q % d for d in range(3, math.isqrt(q) + 1, 2))


def check_prime(q) -> int:
    if not is_prime(q):
        raise DomainError(f"{q!r} is not a prime")
    return q


def int_valuation(n: int, q: int) -> int:
    """Exponent of ``q`` in the nonzero integer ``n``."""
    n = abs(n)
    v = 0
    while n % q == 0:
        n //= q
        v += 1
    return v


def q_valuation(x, q: int):
    """Largest ``v`` such that ``x = q**v * u`` with ``u`` a unit at ``q``.

    Returns :data:`INFINITY` for ``x == 0``.

    >>> q_valuation(Fraction(12), 2), q_valuation(Fraction(3, 8), 2)
    (2, -3)
    """
    check_prime(q)
    x = Fraction(x)
    if x == 0:
        return INFINITY
    return int_valuation(x.numerator, q) - int_valuation(x.denominator, q)


def parse_rational(s) -> Fraction:
    """Parse ``"num/den"`` or ``"num"``; ints pass through."""
    if isinstance(s, bool):
        raise ParseError(f"not a rational: {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise ParseError(f"rational must be a string, got {type(s).__name__}")
    m = _RATIONAL_RE.match(s)
    if m is None:
        raise ParseError(f"not a rational: {s!r}")
    num, den = int(m.group(1)), int(m.group(2) or 1)
    if den == 0:
        raise ParseError(f"zero denominator: {s!r}")
    return Fraction(num, den)


def format_rational(x) -> str:
    return str(Fraction(x))


def _is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def rational_sqrt(x: Fraction):
    """Exact square root of a nonnegative rational, or ``None`` if irrational."""
    x = Fraction(x)
    if x < 0:
        raise DomainError("square root of a negative rational")
    n, d = x.numerator, x.denominator
    if _is_square(n) and _is_square(d):
        return Fraction(math.isqrt(n), math.isqrt(d))
    return None


def sqrt_ceil(x: Fraction, bits: int = 64) -> Fraction:
    """Smallest multiple of ``2**-bits`` that is >= sqrt(x)."""
    x = Fraction(x)
    scaled = x * 4**bits
    target = -(-scaled.numerator // scaled.denominator)  # ceil
    # for integer r: r*r >= scaled  <=>  r*r >= ceil(scaled)
    r = math.isqrt(target)
    if r * r < target:
        r += 1
    return Fraction(r, 2**bits)


class GaussianRational:
    """Element ``re + im*i`` of Q(i) with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im:
                raise TypeError("imaginary part given twice")
            re, im = re.re, re.im
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (_RationalABC, int)):
            return cls(x)
        if isinstance(x, complex):
            raise TypeError("floating complex numbers are not exact")
        raise TypeError(f"cannot coerce {type(x).__name__} to GaussianRational")

    # arithmetic
    def __add__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        n = o.abs2()
        if n == 0:
            raise ZeroDivisionError("division by zero")
        return self * GaussianRational(o.re / n, -o.im / n)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        if self.im == 0:
            return f"GaussianRational({self.re})"
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def to_json(self) -> dict:
        return {"re": format_rational(self.re), "im": format_rational(self.im)}

    @classmethod
    def from_json(cls, obj) -> "GaussianRational":
        if not isinstance(obj, dict):
            raise ParseError("Gaussian rational must be an object with 're' and 'im'")
        return cls(parse_rational(obj.get("re", "0")), parse_rational(obj.get("im", "0")))


Scalar = Union[int, Fraction, GaussianRational]
