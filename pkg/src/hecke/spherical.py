"""Spherical characters of the Hecke algebra of ``(SL2(Q_q), SL2(Z_q))`` and the
exact non-positivity certificate.

The closed formula ``phi(q, z, m)`` is the value of the character ``pi_z`` on
the double-averaged point mass ``p*x_m*p``.  In the characteristic-function
basis used by :mod:`hecke.algebra` that element is ``e[x_m] / L(x_m)``, so

    pi_z(e[x_m]) = L(x_m) * phi(q, z, m).

Multiplicativity of this against :func:`hecke.algebra.convolve` is what pins
the normalisation down (see the test suite).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .algebra import CosetFunction, HeckeElement, r_inner
from .backends import SL2Pair, sl2_pair
from .errors import DomainError, ParseError
from .scalar import check_prime, format_rational, parse_rational


def _pair_for(q, pair=None) -> SL2Pair:
    if pair is None:
        return sl2_pair(check_prime(q))
    if not isinstance(pair, SL2Pair) or pair.q != q:
        raise DomainError(f"expected the SL2 pair for q={q}, got {pair!r}")
    return pair


@dataclass(frozen=True)
class CharacterPoint:
    q: int
    z: Fraction

    def __post_init__(self):
        check_prime(self.q)
        object.__setattr__(self, "z", Fraction(self.z))
        if self.z == 1:
            raise DomainError("z = 1 is excluded (pi_1 has a different formula)")
        if not self.in_domain:
            raise DomainError(
                f"z = {self.z} is outside [-q, -1/q] u [1/q, q] for q = {self.q}")

    @property
    def in_domain(self) -> bool:
        return in_extension_domain(self.q, self.z)


def in_extension_domain(q: int, z) -> bool:
    """Whether ``pi_z`` extends to the L1-completion: ``1/q <= |z| <= q``, ``z != 1``."""
    z = Fraction(z)
    return z != 1 and Fraction(1, q) <= abs(z) <= q


def phi(q: int, z, m: int) -> Fraction:
    """``pi_z(p x_m p)`` for ``z`` not in ``{0, 1}``."""
    check_prime(q)
    z = Fraction(z)
    if z == 0 or z == 1:
        raise DomainError(f"phi is singular at z = {z}")
    if m < 0:
        raise DomainError("m must be nonnegative")
    denom = (q + 1) * (1 - z)
    return (1 - q * z) / denom * (z / q) ** m + (q - z) / denom * (1 / (q * z)) ** m


class SphericalElement:
    """Real-rational element ``sum h_m e[x_m]`` of the spherical Hecke algebra."""

    __slots__ = ("q", "coeffs")

    def __init__(self, q: int, coeffs: Mapping[int, Fraction] | Iterable = ()):
        self.q = check_prime(q)
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, Fraction] = {}
        for m, c in items:
            if isinstance(m, bool) or not isinstance(m, int) or m < 0:
                raise DomainError(f"index must be a nonnegative integer, got {m!r}")
            acc[m] = acc.get(m, Fraction(0)) + Fraction(c)
        self.coeffs = {m: c for m, c in sorted(acc.items()) if c}

    @classmethod
    def from_hecke(cls, h: HeckeElement) -> "SphericalElement":
        pair = h.pair
        if not isinstance(pair, SL2Pair):
            raise DomainError("spherical elements live on an SL2 pair")
        items = []
        for d, c in h.coeffs.items():
            m = pair.coset_index(d)
            # every double coset of this pair is some Gamma x_m Gamma
            assert d.rep == pair.x(m), f"non-spherical double coset {d.rep}"
            if not c.is_real():
                raise DomainError(f"coefficient {c} at x_{m} is not real")
            items.append((m, c.re))
        return cls(pair.q, items)

    def to_hecke(self, pair: SL2Pair | None = None) -> HeckeElement:
        pair = _pair_for(self.q, pair)
        return HeckeElement(pair, {pair.double_coset_of_index(m): c for m, c in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, SphericalElement):
            return NotImplemented
        return self.q == other.q and self.coeffs == other.coeffs

    def __repr__(self):
        terms = " + ".join(f"{c}*e{m}" for m, c in self.coeffs.items()) or "0"
        return f"SphericalElement(q={self.q}: {terms})"

    def to_json(self) -> list:
        return [{"m": m, "coeff": format_rational(c)} for m, c in self.coeffs.items()]


def character_eval(q: int, z, h, *, allow_outside_domain: bool = False,
                   pair: SL2Pair | None = None) -> Fraction:
    """``pi_z(h) = sum h_m * L(x_m) * phi(q, z, m)`` with ``L`` from enumeration."""
    z = Fraction(z)
    if not allow_outside_domain:
        CharacterPoint(q, z)
    pair = _pair_for(q, pair)
    if isinstance(h, HeckeElement):
        h = SphericalElement.from_hecke(h)
    total = Fraction(0)
    for m, c in h.coeffs.items():
        total += c * pair.L(pair.double_coset_of_index(m)) * phi(q, z, m)
    return total


def counterexample_element(q: int, pair: SL2Pair | None = None) -> CosetFunction:
    """``1_Gamma + sum_{k<q} 1_{y_k Gamma}``."""
    pair = _pair_for(check_prime(q), pair)
    items = [(pair.left_coset(pair.identity), 1)]
    items += [(pair.left_coset(pair.y(k)), 1) for k in range(q)]
    return CosetFunction(pair, items)


def default_grid(q: int) -> list[Fraction]:
    """``+-k`` and ``+-1/k`` for ``k = 1..q``, without ``z = 1``."""
    pts = set()
    for k in range(1, q + 1):
        for s in (1, -1):
            pts.add(Fraction(s * k))
            pts.add(Fraction(s, k))
    pts.discard(Fraction(1))
    return sorted(pts)


@dataclass(frozen=True)
class PositivityCertificate:
    q: int
    z: Fraction
    h: SphericalElement
    value: Fraction
    f: CosetFunction

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "z": format_rational(self.z),
            "h": self.h.to_json(),
            "value": format_rational(self.value),
            "input_f": self.f.to_json(),
            "conclusion": "not_R_positive",
        }

    def validate(self) -> bool:
        """Recompute everything from ``f`` and check the claims."""
        pair = _pair_for(self.q)
        f = CosetFunction.from_json(pair, self.f.to_json())
        h = SphericalElement.from_hecke(r_inner(f, f))
        if h != self.h or not in_extension_domain(self.q, self.z):
            return False
        value = character_eval(self.q, self.z, h)
        return value == self.value and value < 0

    @classmethod
    def from_json(cls, obj) -> "PositivityCertificate":
        try:
            q = int(obj["q"])
            pair = _pair_for(q)
            h = SphericalElement(q, [(int(t["m"]), parse_rational(t["coeff"])) for t in obj["h"]])
            return cls(q, parse_rational(obj["z"]), h, parse_rational(obj["value"]),
                       CosetFunction.from_json(pair, obj["input_f"]))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed certificate: {exc}") from None


@dataclass
class ScanReport:
    q: int
    h: SphericalElement
    values: list = field(default_factory=list)  # (z, value, in_domain)
    certificate: PositivityCertificate | None = None

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "h": self.h.to_json(),
            "values": [{"z": format_rational(z), "value": format_rational(v),
                        "in_domain": dom, **({} if dom else {"note": "informational only"})}
                       for z, v, dom in self.values],
            "certificate": self.certificate.to_json() if self.certificate else None,
        }


def scan_positivity(q: int, f: CosetFunction, zs: Sequence | None = None, *,
                    allow_outside_domain: bool = False) -> ScanReport:
    """Evaluate ``pi_z(<f, f>_R)`` over ``zs``; certify the first negative value.

    Points outside the extension domain are evaluated only with
    ``allow_outside_domain`` and never produce a certificate.
    """
    pair = _pair_for(q, f.pair)
    zs = default_grid(q) if zs is None else [Fraction(z) for z in zs]
    for z in zs:
        if z == 1 or z == 0:
            raise DomainError(f"z = {z} is not admissible")
        if not allow_outside_domain and not in_extension_domain(q, z):
            raise DomainError(f"z = {z} is outside [-q, -1/q] u [1/q, q] for q = {q}")
    h = SphericalElement.from_hecke(r_inner(f, f))
    report = ScanReport(q, h)
    for z in zs:
        dom = in_extension_domain(q, z)
        v = character_eval(q, z, h, allow_outside_domain=True, pair=pair)
        report.values.append((z, v, dom))
        if dom and v < 0 and report.certificate is None:
            report.certificate = PositivityCertificate(q, z, h, v, f)
    return report
