"""Finite pairs given by permutation generators, with brute-force tables.

Permutations are 0-based one-line tuples and compose right-to-left:
``(g*h)[i] == g[h[i]]``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import BudgetExceeded, DomainError, ParseError
from ..pair import DoubleCoset, HeckePair, LeftCoset

DEFAULT_ORDER_BUDGET = 10**4

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"


def _check_perm(p, n):
    if not isinstance(p, (list, tuple)) or len(p) != n:
        raise ParseError(f"permutation must be a list of length {n}, got {p!r}")
    if any(isinstance(x, bool) or not isinstance(x, int) for x in p) or sorted(p) != list(range(n)):
        raise ParseError(f"not a permutation of 0..{n - 1}: {p!r}")
    return tuple(p)


@dataclass(frozen=True)
class FinitePairSpec:
    n: int
    group_gens: tuple = field(default_factory=tuple)
    subgroup_gens: tuple = field(default_factory=tuple)
    name: str = ""

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise ParseError(f"n must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "group_gens", tuple(_check_perm(p, self.n) for p in self.group_gens))
        object.__setattr__(self, "subgroup_gens", tuple(_check_perm(p, self.n) for p in self.subgroup_gens))

    @classmethod
    def from_json(cls, obj, name: str = "") -> "FinitePairSpec":
        if not isinstance(obj, dict) or "n" not in obj:
            raise ParseError("finite pair spec must be an object with n, group_gens, subgroup_gens")
        return cls(obj["n"], tuple(obj.get("group_gens", ())), tuple(obj.get("subgroup_gens", ())),
                   name or obj.get("name", ""))

    def to_json(self) -> dict:
        return {"n": self.n,
                "group_gens": [list(p) for p in self.group_gens],
                "subgroup_gens": [list(p) for p in self.subgroup_gens]}

    @classmethod
    def load(cls, path) -> "FinitePairSpec":
        path = Path(path)
        try:
            obj = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from None
        return cls.from_json(obj, name=path.stem)


def builtin_fixtures() -> dict[str, Path]:
    return {p.stem: p for p in sorted(FIXTURE_DIR.glob("*.json"))}


def _compose(g, h):
    return tuple(g[i] for i in h)


def _invert(g):
    out = [0] * len(g)
    for i, gi in enumerate(g):
        out[gi] = i
    return tuple(out)


def _closure(gens, identity, limit):
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = _compose(s, x)
                if y not in seen:
                    seen.add(y)
                    if len(seen) > limit:
                        raise BudgetExceeded(f"group order exceeds budget of {limit}", limit)
                    nxt.append(y)
        frontier = nxt
    return seen


class FinitePair(HeckePair):
    kind = "finite"

    def __init__(self, spec: FinitePairSpec, order_budget: int = DEFAULT_ORDER_BUDGET, budget=None):
        super().__init__(budget)
        self.spec = spec
        self.n = spec.n
        e = tuple(range(spec.n))
        self._identity = e
        self.elements = sorted(_closure(spec.group_gens, e, order_budget))
        self.gamma = frozenset(_closure(spec.subgroup_gens, e, order_budget))
        element_set = set(self.elements)
        if not self.gamma <= element_set:
            raise DomainError("subgroup generators do not lie in the group")
        self._gamma_sorted = sorted(self.gamma)

        self._left = {}
        for g in self.elements:
            if g in self._left:
                continue
            coset = [_compose(g, c) for c in self._gamma_sorted]
            rep = min(coset)
            for x in coset:
                self._left[x] = rep

        self._double = {}
        self._double_members = {}
        for g in self.elements:
            if g in self._double:
                continue
            members = {_compose(_compose(a, g), b) for a in self._gamma_sorted for b in self._gamma_sorted}
            rep = min(members)
            for x in members:
                self._double[x] = rep
            self._double_members[rep] = members
            self._left_cosets_cache[DoubleCoset(rep)] = tuple(
                sorted({LeftCoset(self._left[x]) for x in members}))

    @property
    def key(self):
        return ("finite", self.spec.n, self.spec.group_gens, self.spec.subgroup_gens)

    @property
    def label(self):
        return f"finite:{self.spec.name or 'anonymous'}"

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self):
        return self._identity

    def mul(self, g, h):
        return _compose(g, h)

    def inv(self, g):
        return _invert(g)

    def validate(self, g):
        g = tuple(g) if isinstance(g, (list, tuple)) else g
        if g not in self._left:
            raise DomainError(f"{g!r} is not an element of the group")
        return g

    def in_gamma(self, g):
        return g in self.gamma

    def gamma_generators(self):
        return list(self.spec.subgroup_gens)

    def canonical_left_coset(self, g):
        return self._left[g]

    def canonical_double_coset(self, g):
        return self._double[g]

    def double_cosets(self) -> list[DoubleCoset]:
        return [DoubleCoset(r) for r in sorted(self._double_members)]

    def double_coset_members(self, d: DoubleCoset) -> frozenset:
        return frozenset(self._double_members[d.rep])

    def _enumerate_left_cosets(self, d):
        return {c.rep for c in self._left_cosets_cache[d]}

    def element_to_json(self, g):
        return list(g)

    def element_from_json(self, obj):
        if not isinstance(obj, list):
            raise ParseError(f"permutation must be a list, got {obj!r}")
        return self.validate(_check_perm(obj, self.n))

    def random_element(self, rng: random.Random):
        return rng.choice(self.elements)

    def random_gamma(self, rng: random.Random, length: int = 6):
        return rng.choice(self._gamma_sorted)

    def small_double_cosets(self):
        return self.double_cosets()

    # -- structure --------------------------------------------------------
    def core_subgroup(self) -> frozenset:
        """Normal core: the intersection of all conjugates ``g Gamma g^-1``."""
        core = set(self.gamma)
        for g in self.elements:
            gi = _invert(g)
            core &= {_compose(_compose(g, c), gi) for c in self.gamma}
        return frozenset(core)

    def is_reduced(self) -> bool:
        return len(self.core_subgroup()) == 1

    def reduce_pair(self):
        """Quotient by the normal core.

        Returns ``(reduced_pair, bijection)`` where ``bijection`` maps each
        double coset of ``self`` to the corresponding double coset of the
        reduced pair.  The quotient group is realised by its left regular
        action on the cosets of the core.
        """
        core = self.core_subgroup()
        if len(core) == 1:
            return self, {d: d for d in self.double_cosets()}
        core_sorted = sorted(core)
        labels = {}
        reps = []
        for g in self.elements:
            if g in labels:
                continue
            coset = [_compose(g, c) for c in core_sorted]
            idx = len(reps)
            reps.append(g)
            for x in coset:
                labels[x] = idx

        def image(g):
            return tuple(labels[_compose(g, r)] for r in reps)

        spec = FinitePairSpec(
            len(reps),
            tuple(image(s) for s in self.spec.group_gens),
            tuple(image(s) for s in self.spec.subgroup_gens),
            name=f"{self.spec.name}/core" if self.spec.name else "",
        )
        reduced = FinitePair(spec, budget=self.budget)
        bijection = {d: reduced.double_coset(image(d.rep)) for d in self.double_cosets()}
        return reduced, bijection


def load_finite_pair(spec, order_budget: int = DEFAULT_ORDER_BUDGET, budget=None) -> FinitePair:
    """Build a finite backend from a spec, a JSON path, or a builtin fixture name."""
    if isinstance(spec, FinitePairSpec):
        return FinitePair(spec, order_budget, budget)
    if isinstance(spec, dict):
        return FinitePair(FinitePairSpec.from_json(spec), order_budget, budget)
    path = Path(spec)
    if not path.exists():
        fixtures = builtin_fixtures()
        if str(spec) in fixtures:
            path = fixtures[str(spec)]
        else:
            raise ParseError(f"no such finite pair file or fixture: {spec}")
    return FinitePair(FinitePairSpec.load(path), order_budget, budget)


def core_subgroup(pair: FinitePair) -> frozenset:
    return pair.core_subgroup()


def reduce_pair(pair: FinitePair):
    return pair.reduce_pair()
