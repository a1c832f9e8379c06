"""Growth of Hecke pairs measured by ``L(A^n)`` for finite sets of double cosets.

The power is built by ``A^n = A * A^(n-1)`` starting from ``A^0 = A`` (so
``A^n`` has ``n + 1`` factors); the limsup of ``L(A^n)^(1/n)`` does not see
the shift.  Roots and ratios are floats derived from exact integers.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Iterable

from .algebra import HeckeElement, convolve
from .errors import BackendMismatch, BudgetExceeded
from .pair import DoubleCoset, HeckePair


class CosetSet(frozenset):
    """Finite set of canonical double cosets of one pair."""

    pair: HeckePair

    def __new__(cls, pair: HeckePair, elements: Iterable = ()):
        members = []
        for d in elements:
            members.append(d if isinstance(d, DoubleCoset) else pair.double_coset(d))
        self = super().__new__(cls, members)
        self.pair = pair
        return self

    def sorted(self) -> list[DoubleCoset]:
        return sorted(self)

    def __repr__(self):
        return f"CosetSet({[d.rep for d in self.sorted()]})"


def _indicator(A: CosetSet) -> HeckeElement:
    return HeckeElement(A.pair, {d: 1 for d in A})


def set_product(A: CosetSet, B: CosetSet) -> CosetSet:
    """Double cosets contained in ``Gamma a Gamma b Gamma`` for some ``a``, ``b``.

    Structure constants are nonnegative, so the support of ``1_A * 1_B`` is
    the union of the supports of ``e[a] * e[b]``.
    """
    if A.pair != B.pair:
        raise BackendMismatch(f"{A.pair!r} vs {B.pair!r}")
    return CosetSet(A.pair, convolve(_indicator(A), _indicator(B)).support())


def total_L(A: CosetSet) -> int:
    return sum(A.pair.L(d) for d in A)


def _fmt(x) -> str:
    return "" if x is None else f"{x:.6g}"


@dataclass
class GrowthRow:
    n: int
    size: int
    L: int
    root: float | None
    ratio: float | None


@dataclass
class GrowthReport:
    rows: list[GrowthRow] = field(default_factory=list)
    truncated: bool = False
    reason: str = ""

    def L_values(self) -> list[int]:
        return [r.L for r in self.rows]

    def classify(self, band: float = 0.05, last: int = 3) -> str:
        """Heuristic label from the last ``last`` successive ratios."""
        ratios = [r.ratio for r in self.rows if r.ratio is not None][-last:]
        if len(ratios) < last:
            return "inconclusive (heuristic)"
        if all(abs(x - 1) <= band for x in ratios):
            return "subexponential evidence (heuristic)"
        return "exponential evidence (heuristic)"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "size", "L", "root", "ratio"])
        for r in self.rows:
            w.writerow([r.n, r.size, r.L, _fmt(r.root), _fmt(r.ratio)])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "rows": [{"n": r.n, "size": r.size, "L": r.L, "root": _fmt(r.root) or None,
                      "ratio": _fmt(r.ratio) or None} for r in self.rows],
            "truncated": self.truncated,
            "reason": self.reason,
            "classification": self.classify(),
        }


def growth_sequence(A: CosetSet, nmax: int) -> GrowthReport:
    report = GrowthReport()
    power = A
    prev_L = None
    try:
        for n in range(nmax + 1):
            if n > 0:
                power = set_product(A, power)
            L = total_L(power)
            root = math.exp(math.log(L) / n) if n > 0 else None
            ratio = L / prev_L if prev_L else None
            report.rows.append(GrowthRow(n, len(power), L, root, ratio))
            prev_L = L
    except BudgetExceeded as exc:
        report.truncated = True
        report.reason = str(exc)
    return report
