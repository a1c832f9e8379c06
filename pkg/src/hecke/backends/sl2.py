"""``(SL2(Q_q), SL2(Z_q))`` realised on the dense subgroup ``SL2(Z[1/q])``.

Matrices are stored as tuples ``(a, b, c, d)`` of ``Fraction`` entries whose
denominators are powers of ``q``.  A matrix lies in ``Gamma`` iff every entry
has nonnegative ``q``-valuation; the intersection with the dense subgroup is
``SL2(Z)``, whose generators ``S`` and ``T`` drive the coset enumeration.

Left cosets ``g*Gamma`` are put in the upper triangular form
``[[q**a, beta], [0, q**-a]]`` with ``0 <= beta < q**a``; double cosets are
represented by ``x_n = diag(q**n, q**-n)`` with ``n = -min(valuations)``.
"""

from __future__ import annotations

import random
from fractions import Fraction

from ..errors import DomainError, ParseError
from ..pair import DoubleCoset, HeckePair
from ..scalar import INFINITY, check_prime, format_rational, int_valuation, parse_rational

_ONE = Fraction(1)
_ZERO = Fraction(0)


class SL2Pair(HeckePair):
    kind = "sl2"

    def __init__(self, q: int, budget=None, sample_depth: int = 2):
        super().__init__(budget)
        self.q = check_prime(q)
        self.sample_depth = sample_depth

    @property
    def key(self):
        return ("sl2", self.q)

    @property
    def label(self):
        return f"sl2:{self.q}"

    # -- arithmetic ------------------------------------------------------
    @property
    def identity(self):
        return (_ONE, _ZERO, _ZERO, _ONE)

    def mul(self, g, h):
        a, b, c, d = g
        e, f, u, v = h
        return (a * e + b * u, a * f + b * v, c * e + d * u, c * f + d * v)

    def inv(self, g):
        a, b, c, d = g
        return (d, -b, -c, a)

    def val(self, x: Fraction):
        if not x:
            return INFINITY
        return int_valuation(x.numerator, self.q) - int_valuation(x.denominator, self.q)

    def _is_q_power(self, n: int) -> bool:
        while n % self.q == 0:
            n //= self.q
        return n == 1

    def validate(self, g):
        try:
            a, b, c, d = (Fraction(x) for x in g)
        except (TypeError, ValueError):
            raise DomainError(f"SL2 element must have four rational entries, got {g!r}") from None
        for x in (a, b, c, d):
            if not self._is_q_power(x.denominator):
                raise DomainError(f"entry {x} does not have a {self.q}-power denominator")
        if a * d - b * c != 1:
            raise DomainError(f"determinant {a * d - b * c} is not 1")
        return (a, b, c, d)

    def in_gamma(self, g):
        return all(x.denominator == 1 for x in g)

    def gamma_generators(self):
        return [(_ZERO, -_ONE, _ONE, _ZERO), (_ONE, _ONE, _ZERO, _ONE)]

    # -- the named matrices -----------------------------------------------
    def x(self, n: int):
        """``diag(q**n, q**-n)``."""
        p = Fraction(self.q) ** n
        return (p, _ZERO, _ZERO, 1 / p)

    def y(self, k):
        """``[[q, k], [0, 1/q]]``."""
        return (Fraction(self.q), Fraction(k), _ZERO, Fraction(1, self.q))

    # -- canonical forms -----------------------------------------------
    def _reduce_mod(self, x: Fraction, v: int) -> Fraction:
        """Representative of ``x + q**-v * Z_q`` in ``Z[1/q] ∩ [0, q**-v)``."""
        q = self.q
        den = x.denominator
        s = int_valuation(den, q)
        w = den // q**s
        k = max(s, v, 0)
        mod = q ** (k - v)
        if mod == 1:
            return _ZERO
        t = (x.numerator * q ** (k - s) * pow(w, -1, mod)) % mod
        return Fraction(t, q**k)

    def canonical_left_coset(self, g):
        a, b, c, d = g
        vc, vd = self.val(c), self.val(d)
        v = min(vc, vd)
        # g^-1 F integral at q  <=>  d*beta = b*q^v and c*beta = a*q^v modulo Z_q
        qv = Fraction(self.q) ** v
        if vd == v:
            beta = self._reduce_mod(b * qv / d, v)
        else:
            beta = self._reduce_mod(a * qv / c, v)
        return (1 / qv, beta, _ZERO, qv)

    def double_coset_index(self, g) -> int:
        return -min(self.val(x) for x in g)

    def canonical_double_coset(self, g):
        return self.x(self.double_coset_index(g))

    def coset_index(self, d: DoubleCoset) -> int:
        return self.double_coset_index(d.rep)

    def double_coset_of_index(self, n: int) -> DoubleCoset:
        if n < 0:
            raise DomainError("double coset index must be nonnegative")
        return DoubleCoset(self.x(n))

    def describe_double_coset(self, d):
        return {"n": self.coset_index(d), "rep": self.element_to_json(d.rep)}

    # -- io ----------------------------------------------------------------
    def element_to_json(self, g):
        a, b, c, d = g
        return [[format_rational(a), format_rational(b)], [format_rational(c), format_rational(d)]]

    def element_from_json(self, obj):
        try:
            (a, b), (c, d) = obj
        except (TypeError, ValueError):
            raise ParseError(f"SL2 element must be [[a, b], [c, d]], got {obj!r}") from None
        return self.validate(tuple(parse_rational(x) for x in (a, b, c, d)))

    # -- sampling ----------------------------------------------------------
    def random_element(self, rng: random.Random):
        """Random word in S, unipotents over Z[1/q] and x_1^{+-1}, kept within
        ``sample_depth`` so that products stay cheap to enumerate."""
        while True:
            g = self._random_word(rng)
            if self.double_coset_index(g) <= self.sample_depth:
                return g

    def _random_word(self, rng):
        q = self.q
        g = self.identity
        for _ in range(rng.randint(1, 4)):
            choice = rng.randrange(3)
            if choice == 0:
                g = self.mul(g, self.gamma_generators()[0])
            elif choice == 1:
                t = Fraction(rng.randint(-q * q, q * q), q ** rng.randint(0, 1))
                g = self.mul(g, (_ONE, t, _ZERO, _ONE))
            else:
                g = self.mul(g, self.x(rng.choice((-1, 1))))
        return g

    def small_double_cosets(self):
        return [DoubleCoset(self.x(n)) for n in range(self.sample_depth + 1)]
