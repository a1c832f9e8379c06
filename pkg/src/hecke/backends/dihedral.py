"""Infinite dihedral group Z x| Z/2 with Gamma the order-two subgroup.

Elements are pairs ``(n, s)`` with ``s = +-1`` and product
``(n, s)(m, t) = (n + s*m, s*t)``.
"""

from __future__ import annotations

import random

from ..errors import DomainError, ParseError
from ..pair import DoubleCoset, HeckePair


class DihedralPair(HeckePair):
    kind = "dihedral"

    def __init__(self, budget=None, sample_radius: int = 6):
        super().__init__(budget)
        self.sample_radius = sample_radius

    @property
    def key(self):
        return ("dihedral",)

    @property
    def identity(self):
        return (0, 1)

    def mul(self, g, h):
        return (g[0] + g[1] * h[0], g[1] * h[1])

    def inv(self, g):
        return (-g[1] * g[0], g[1])

    def validate(self, g):
        try:
            n, s = g
        except (TypeError, ValueError):
            raise DomainError(f"dihedral element must be a pair (n, s), got {g!r}") from None
        if isinstance(n, bool) or not isinstance(n, int) or s not in (1, -1) or isinstance(s, bool):
            raise DomainError(f"invalid dihedral element {g!r}")
        return (n, s)

    def in_gamma(self, g):
        return g[0] == 0

    def gamma_generators(self):
        return [(0, -1)]

    def canonical_left_coset(self, g):
        # (n, s) * Gamma = {(n, 1), (n, -1)}
        return (g[0], 1)

    def canonical_double_coset(self, g):
        return (abs(g[0]), 1)

    def coset_index(self, d: DoubleCoset) -> int:
        return d.rep[0]

    def double_coset_of_index(self, n: int) -> DoubleCoset:
        return DoubleCoset((abs(n), 1))

    def describe_double_coset(self, d):
        return {"coset": d.rep[0], "rep": self.element_to_json(d.rep)}

    def element_to_json(self, g):
        return [g[0], g[1]]

    def element_from_json(self, obj):
        if not (isinstance(obj, list) and len(obj) == 2 and all(isinstance(x, int) and not isinstance(x, bool) for x in obj)):
            raise ParseError(f"dihedral element must be [n, s], got {obj!r}")
        return self.validate(tuple(obj))

    def random_element(self, rng: random.Random):
        r = self.sample_radius
        return (rng.randint(-r, r), rng.choice((1, -1)))

    def small_double_cosets(self):
        return [DoubleCoset((n, 1)) for n in range(self.sample_radius + 1)]
