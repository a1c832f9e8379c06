"""Dyadic affine group ``{x -> 2**k * x + b}`` with ``Gamma = {x -> x + n}``.

Elements are ``(b, k)`` with ``b`` a dyadic rational; the product is
``(b, k)(b', k') = (b + 2**k * b', k + k')``.  The pair is not unimodular:
``Delta((b, k)) = 2**k``.
"""

from __future__ import annotations

import random
from fractions import Fraction

from ..errors import DomainError, ParseError
from ..pair import DoubleCoset, HeckePair
from ..scalar import format_rational, parse_rational


def _pow2(k: int) -> Fraction:
    return Fraction(2) ** k


def _mod(b: Fraction, m: Fraction) -> Fraction:
    """``b`` reduced into ``[0, m)`` modulo ``m * Z``."""
    return b - m * (b // m)


class DyadicAffinePair(HeckePair):
    kind = "dyadic"

    def __init__(self, budget=None, max_shift: int = 3, max_denominator_exp: int = 3):
        super().__init__(budget)
        self.max_shift = max_shift
        self.max_denominator_exp = max_denominator_exp

    @property
    def key(self):
        return ("dyadic",)

    @property
    def identity(self):
        return (Fraction(0), 0)

    def mul(self, g, h):
        return (g[0] + _pow2(g[1]) * h[0], g[1] + h[1])

    def inv(self, g):
        return (-_pow2(-g[1]) * g[0], -g[1])

    def validate(self, g):
        try:
            b, k = g
        except (TypeError, ValueError):
            raise DomainError(f"dyadic element must be a pair (b, k), got {g!r}") from None
        if isinstance(k, bool) or not isinstance(k, int):
            raise DomainError(f"shift must be an integer, got {k!r}")
        b = Fraction(b)
        den = b.denominator
        if den & (den - 1):
            raise DomainError(f"translation {b} is not dyadic")
        return (b, k)

    def in_gamma(self, g):
        return g[1] == 0 and g[0].denominator == 1

    def gamma_generators(self):
        return [(Fraction(1), 0)]

    def canonical_left_coset(self, g):
        b, k = g
        return (_mod(b, _pow2(k)), k)

    def canonical_double_coset(self, g):
        # Gamma (b, k) Gamma = {(b + m + 2**k * n, k)}: b modulo Z + 2**k Z
        b, k = g
        return (_mod(b, _pow2(min(k, 0))), k)

    def element_to_json(self, g):
        return [format_rational(g[0]), g[1]]

    def element_from_json(self, obj):
        if not (isinstance(obj, list) and len(obj) == 2):
            raise ParseError(f"dyadic element must be [\"num/den\", k], got {obj!r}")
        b, k = obj
        if isinstance(k, bool) or not isinstance(k, int):
            raise ParseError(f"dyadic shift must be an integer, got {k!r}")
        return self.validate((parse_rational(b), k))

    def random_element(self, rng: random.Random):
        e = rng.randint(0, self.max_denominator_exp)
        b = Fraction(rng.randint(-8, 8), 2**e)
        return (b, rng.randint(-self.max_shift, self.max_shift))

    def small_double_cosets(self):
        out = set()
        for k in range(-self.max_shift, self.max_shift + 1):
            for e in range(self.max_denominator_exp + 1):
                for num in range(2**e):
                    out.add(DoubleCoset(self.canonical_double_coset((Fraction(num, 2**e), k))))
        return sorted(out)
