"""The Hecke-pair backend contract and generic coset combinatorics.

A backend supplies group arithmetic on hashable, totally ordered elements
(plain tuples), a membership test for the subgroup, canonical representatives
for left cosets ``g*Gamma`` and double cosets ``Gamma*g*Gamma``, and a finite
generating set of the subgroup.  Everything else here (left coset
enumeration, ``L``, ``R``, the modular function) is derived from those.
"""

from __future__ import annotations

import abc
import os
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Hashable, Sequence

from .errors import BudgetExceeded, DomainError

DEFAULT_BUDGET = 10**6

GroupElement = Hashable


def default_budget() -> int:
    env = os.environ.get("HECKE_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            pass
    return DEFAULT_BUDGET


@dataclass(frozen=True, order=True)
class LeftCoset:
    """``rep * Gamma`` with ``rep`` already canonical."""

    rep: Any


@dataclass(frozen=True, order=True)
class DoubleCoset:
    """``Gamma * rep * Gamma`` with ``rep`` already canonical."""

    rep: Any


class HeckePair(abc.ABC):
    """Base class for concrete pairs ``(G, Gamma)``.

    Instances are immutable after construction.  The dictionaries set up here
    are memo tables only: results never depend on what happens to be cached.
    """

    #: short selector name used by the CLI
    kind: str = "abstract"

    def __init__(self, budget: int | None = None):
        self.budget = default_budget() if budget is None else int(budget)
        if self.budget < 1:
            raise DomainError("enumeration budget must be positive")
        self._left_cosets_cache: dict = {}
        self._product_cache: dict = {}

    # -- identity of the backend ---------------------------------------
    @property
    @abc.abstractmethod
    def key(self) -> Hashable:
        """Hashable description; two pairs are equal iff their keys are."""

    def __eq__(self, other):
        if not isinstance(other, HeckePair):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"<{type(self).__name__} {self.key!r}>"

    @property
    def label(self) -> str:
        """Selector-style name, e.g. ``sl2:3``."""
        return self.kind

    # -- group structure -----------------------------------------------
    @property
    @abc.abstractmethod
    def identity(self) -> GroupElement: ...

    @abc.abstractmethod
    def mul(self, g, h) -> GroupElement: ...

    @abc.abstractmethod
    def inv(self, g) -> GroupElement: ...

    @abc.abstractmethod
    def validate(self, g) -> GroupElement:
        """Return ``g`` normalised, or raise :class:`DomainError`."""

    @abc.abstractmethod
    def in_gamma(self, g) -> bool: ...

    @abc.abstractmethod
    def gamma_generators(self) -> Sequence[GroupElement]:
        """Finite set generating (a dense subgroup of) Gamma."""

    @abc.abstractmethod
    def canonical_left_coset(self, g) -> GroupElement: ...

    @abc.abstractmethod
    def canonical_double_coset(self, g) -> GroupElement: ...

    # -- serialisation ---------------------------------------------------
    @abc.abstractmethod
    def element_to_json(self, g) -> Any: ...

    @abc.abstractmethod
    def element_from_json(self, obj) -> GroupElement: ...

    def describe_double_coset(self, d: DoubleCoset) -> dict:
        return {"rep": self.element_to_json(d.rep)}

    # -- random sampling for property checks ------------------------------
    @abc.abstractmethod
    def random_element(self, rng: random.Random) -> GroupElement: ...

    def random_gamma(self, rng: random.Random, length: int = 6) -> GroupElement:
        gens = self._generators_with_inverses()
        g = self.identity
        if not gens:
            return g
        for _ in range(rng.randint(0, length)):
            g = self.mul(g, rng.choice(gens))
        return g

    def small_double_cosets(self) -> Sequence[DoubleCoset]:
        """Double cosets cheap enough to enumerate freely in random tests."""
        raise NotImplementedError

    def random_double_coset(self, rng: random.Random) -> DoubleCoset:
        return rng.choice(list(self.small_double_cosets()))

    # -- derived --------------------------------------------------------
    def mul_many(self, *gs):
        out = self.identity
        for g in gs:
            out = self.mul(out, g)
        return out

    def left_coset(self, g) -> LeftCoset:
        return LeftCoset(self.canonical_left_coset(self.validate(g)))

    def double_coset(self, g) -> DoubleCoset:
        return DoubleCoset(self.canonical_double_coset(self.validate(g)))

    def identity_coset(self) -> DoubleCoset:
        return DoubleCoset(self.canonical_double_coset(self.identity))

    def _generators_with_inverses(self):
        gens = []
        for s in self.gamma_generators():
            for t in (s, self.inv(s)):
                if t not in gens:
                    gens.append(t)
        return gens

    def left_cosets_of(self, d: DoubleCoset) -> tuple[LeftCoset, ...]:
        """All left cosets inside ``d``, sorted by canonical representative."""
        try:
            return self._left_cosets_cache[d]
        except KeyError:
            pass
        result = tuple(sorted(LeftCoset(r) for r in self._enumerate_left_cosets(d)))
        self._left_cosets_cache[d] = result
        return result

    def _enumerate_left_cosets(self, d: DoubleCoset):
        # Gamma*g*Gamma/Gamma is a single orbit of Gamma; a dense subgroup of
        # Gamma already acts transitively because coset stabilisers are open.
        gens = self._generators_with_inverses()
        seed = self.canonical_left_coset(d.rep)
        seen = {seed}
        frontier = [seed]
        while frontier:
            nxt = []
            for h in frontier:
                for s in gens:
                    c = self.canonical_left_coset(self.mul(s, h))
                    if c not in seen:
                        seen.add(c)
                        if len(seen) > self.budget:
                            raise BudgetExceeded(
                                f"left coset enumeration of {d.rep!r} exceeded "
                                f"budget of {self.budget} cosets", self.budget)
                        nxt.append(c)
            frontier = nxt
        return seen

    def right_coset_reps(self, d: DoubleCoset) -> list:
        """Representatives ``k`` of the right cosets ``Gamma*k`` inside ``d``."""
        dinv = self.double_coset(self.inv(d.rep))
        return [self.inv(h.rep) for h in self.left_cosets_of(dinv)]

    def L(self, d: DoubleCoset) -> int:
        return len(self.left_cosets_of(d))

    def coset_counts(self, d: DoubleCoset) -> tuple[int, int]:
        """``(L, R)`` with ``R(g)`` computed as ``L(g^-1)``."""
        left = self.L(d)
        right = self.L(self.double_coset(self.inv(d.rep)))
        return left, right

    def delta(self, d: DoubleCoset) -> Fraction:
        left, right = self.coset_counts(d)
        return Fraction(left, right)


def coset_counts(pair: HeckePair, d: DoubleCoset) -> tuple[int, int]:
    return pair.coset_counts(d)


def delta(pair: HeckePair, d: DoubleCoset) -> Fraction:
    return pair.delta(d)


def canonical_double_coset(pair: HeckePair, g) -> DoubleCoset:
    return pair.double_coset(g)


def left_cosets_of(pair: HeckePair, d: DoubleCoset) -> tuple[LeftCoset, ...]:
    return pair.left_cosets_of(d)
