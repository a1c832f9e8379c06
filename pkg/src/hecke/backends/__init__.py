"""Concrete Hecke pairs and the selector syntax used by the CLI."""

from __future__ import annotations

from ..errors import ParseError
from .dihedral import DihedralPair
from .dyadic import DyadicAffinePair
from .finite import (
    FinitePair,
    FinitePairSpec,
    builtin_fixtures,
    core_subgroup,
    load_finite_pair,
    reduce_pair,
)
from .sl2 import SL2Pair

__all__ = [
    "DihedralPair",
    "DyadicAffinePair",
    "FinitePair",
    "FinitePairSpec",
    "SL2Pair",
    "builtin_fixtures",
    "core_subgroup",
    "load_finite_pair",
    "make_pair",
    "reduce_pair",
]


def make_pair(selector: str, budget=None):
    """Build a backend from ``dihedral``, ``dyadic``, ``sl2:<q>`` or ``finite:<path|fixture>``."""
    kind, _, arg = selector.partition(":")
    if kind == "dihedral" and not arg:
        return DihedralPair(budget)
    if kind == "dyadic" and not arg:
        return DyadicAffinePair(budget)
    if kind == "sl2":
        try:
            q = int(arg)
        except ValueError:
            raise ParseError(f"sl2 selector needs a prime, got {selector!r}") from None
        return SL2Pair(q, budget)
    if kind == "finite" and arg:
        return load_finite_pair(arg, budget=budget)
    raise ParseError(f"unknown pair selector {selector!r}")


def sl2_pair(q: int, budget=None) -> SL2Pair:
    """Shared SL2 backend per prime (its memo tables are reused)."""
    key = (q, budget)
    pair = _SL2_CACHE.get(key)
    if pair is None:
        pair = _SL2_CACHE[key] = SL2Pair(q, budget)
    return pair


_SL2_CACHE: dict = {}
