"""The Hecke algebra: elements, convolution, involution, L1-norm, the right
inner product on ``C_c(G)p`` and a brute-force group algebra oracle.

Basis convention: ``e[g]`` is the characteristic function of ``Gamma g Gamma``.
The double average ``p * delta_g * p`` equals ``e[g] / L(g)``.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple

from .errors import BackendMismatch, ParseError
from .pair import DoubleCoset, HeckePair, LeftCoset
from .scalar import GaussianRational, rational_sqrt, sqrt_ceil

GR = GaussianRational


class _SparseFunction:
    """Finitely supported function on cosets with Gaussian rational values."""

    __slots__ = ("pair", "coeffs")
    _coset_type: type = object

    def __init__(self, pair: HeckePair, coeffs: Mapping | Iterable = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict = {}
        for c, v in items:
            if not isinstance(c, self._coset_type):
                raise TypeError(f"expected {self._coset_type.__name__}, got {type(c).__name__}")
            v = GR.coerce(v)
            acc[c] = acc[c] + v if c in acc else v
        self.pair = pair
        self.coeffs = {c: v for c, v in sorted(acc.items()) if v}

    def __getitem__(self, c) -> GaussianRational:
        return self.coeffs.get(c, GR(0))

    def __iter__(self):
        return iter(self.coeffs.items())

    def __len__(self):
        return len(self.coeffs)

    def support(self) -> list:
        return list(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def _same_pair(self, other):
        if type(other) is not type(self):
            return False
        if self.pair != other.pair:
            raise BackendMismatch(f"{self.pair!r} vs {other.pair!r}")
        return True

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.pair == other.pair and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.pair, tuple(self.coeffs.items())))

    def __add__(self, other):
        if not self._same_pair(other):
            return NotImplemented
        return type(self)(self.pair, list(self.coeffs.items()) + list(other.coeffs.items()))

    def __neg__(self):
        return type(self)(self.pair, {c: -v for c, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "_SparseFunction":
        s = GR.coerce(s)
        return type(self)(self.pair, {c: s * v for c, v in self.coeffs.items()})

    def __rmul__(self, s):
        try:
            return self.scale(s)
        except TypeError:
            return NotImplemented

    def __repr__(self):
        terms = ", ".join(f"{c.rep}: {v}" for c, v in self.coeffs.items())
        return f"{type(self).__name__}({{{terms}}})"

    # -- json ----------------------------------------------------------------
    def to_json(self) -> dict:
        return {"terms": [{"coset": self.pair.element_to_json(c.rep), **v.to_json()}
                          for c, v in self.coeffs.items()]}

    @classmethod
    def _canon(cls, pair, g):
        raise NotImplementedError

    @classmethod
    def from_json(cls, pair: HeckePair, obj):
        if not isinstance(obj, dict) or not isinstance(obj.get("terms"), list):
            raise ParseError('expected {"terms": [...]}')
        items = []
        for t in obj["terms"]:
            if not isinstance(t, dict) or "coset" not in t:
                raise ParseError(f"bad term {t!r}")
            g = pair.element_from_json(t["coset"])
            items.append((cls._canon(pair, g), GR.from_json(t)))
        return cls(pair, items)


class HeckeElement(_SparseFunction):
    """Element of the Hecke algebra, keyed by :class:`DoubleCoset`."""

    __slots__ = ()
    _coset_type = DoubleCoset

    @classmethod
    def _canon(cls, pair, g):
        return pair.double_coset(g)

    @classmethod
    def basis(cls, pair: HeckePair, g, coeff=1) -> "HeckeElement":
        d = g if isinstance(g, DoubleCoset) else pair.double_coset(g)
        return cls(pair, {d: coeff})

    @classmethod
    def unit(cls, pair: HeckePair) -> "HeckeElement":
        return cls(pair, {pair.identity_coset(): 1})

    def __mul__(self, other):
        if isinstance(other, HeckeElement):
            return convolve(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def star(self) -> "HeckeElement":
        return star(self)


class CosetFunction(_SparseFunction):
    """Right-Gamma-invariant function of finite support, keyed by :class:`LeftCoset`."""

    __slots__ = ()
    _coset_type = LeftCoset

    @classmethod
    def _canon(cls, pair, g):
        return pair.left_coset(g)

    @classmethod
    def indicator(cls, pair: HeckePair, g, coeff=1) -> "CosetFunction":
        c = g if isinstance(g, LeftCoset) else pair.left_coset(g)
        return cls(pair, {c: coeff})

    def __mul__(self, s):
        try:
            return self.scale(s)
        except TypeError:
            return NotImplemented


def _check_pair(*fs):
    pair = fs[0].pair
    for f in fs[1:]:
        if f.pair != pair:
            raise BackendMismatch(f"{pair!r} vs {f.pair!r}")
    return pair


# -- convolution ---------------------------------------------------------

class ConvolutionError(AssertionError):
    """The counting sum differed between left cosets of one double coset."""


def structure_constants(pair: HeckePair, a: DoubleCoset, b: DoubleCoset,
                        check: bool = True) -> dict[DoubleCoset, int]:
    """Coefficients of ``e[a] * e[b]`` in the basis ``e[g]``.

    ``(e[a]*e[b])(g)`` counts left cosets ``h Gamma`` in ``a`` with
    ``h^-1 g`` in ``b``; equivalently right cosets ``Gamma k`` in ``b`` with
    ``g k^-1`` in ``a``.  The cheaper of the two sums is used, and the
    candidate double cosets are those of ``a*k`` (k over ``b/Gamma``) or of
    ``r*b`` (``Gamma r`` over ``Gamma\\a``), again whichever list is shorter.
    With ``check`` the count is re-evaluated at ``s*g`` for each generator
    ``s`` of Gamma, which must not change it.
    """
    key = (a, b)
    cache = pair._product_cache
    if key in cache:
        return cache[key]

    mul, inv, cdc = pair.mul, pair.inv, pair.canonical_double_coset
    La = pair.L(a)
    Lb = pair.L(b)
    right_a = pair.right_coset_reps(a)
    if Lb <= len(right_a):
        cands = {cdc(mul(a.rep, k.rep)) for k in pair.left_cosets_of(b)}
    else:
        cands = {cdc(mul(r, b.rep)) for r in right_a}

    right_b = pair.right_coset_reps(b)
    if La <= len(right_b):
        hinv = [inv(h.rep) for h in pair.left_cosets_of(a)]
        target = b.rep

        def count(g):
            return sum(1 for h in hinv if cdc(mul(h, g)) == target)
    else:
        kinv = [inv(k) for k in right_b]
        target = a.rep

        def count(g):
            return sum(1 for k in kinv if cdc(mul(g, k)) == target)

    gens = pair._generators_with_inverses() if check else []
    out = {}
    for rep in sorted(cands):
        c = count(rep)
        for s in gens:
            c2 = count(mul(s, rep))
            if c2 != c:
                raise ConvolutionError(
                    f"convolution count of {a.rep} * {b.rep} at {rep} is {c}, "
                    f"but {c2} at the translate by {s}")
        if c:
            out[DoubleCoset(rep)] = c
    cache[key] = out
    return out


def convolve(f1: HeckeElement, f2: HeckeElement, check: bool = True) -> HeckeElement:
    pair = _check_pair(f1, f2)
    acc: dict = defaultdict(lambda: GR(0))
    for a, ca in f1.coeffs.items():
        for b, cb in f2.coeffs.items():
            cab = ca * cb
            for d, n in structure_constants(pair, a, b, check).items():
                acc[d] = acc[d] + cab * n
    return HeckeElement(pair, acc)


def star(f: HeckeElement) -> HeckeElement:
    """``f*(Gamma g Gamma) = Delta(g^-1) * conj(f(Gamma g^-1 Gamma))``."""
    pair = f.pair
    items = []
    for d, c in f.coeffs.items():
        dinv = pair.double_coset(pair.inv(d.rep))
        items.append((dinv, c.conjugate() * pair.delta(d)))
    return HeckeElement(pair, items)


class L1Norm(NamedTuple):
    value: Fraction
    exact: bool

    def __float__(self):
        return float(self.value)


def l1_norm(f: HeckeElement, bits: int = 64) -> L1Norm:
    """``sum |f(d)| * L(d)``.

    Exact whenever each ``|f(d)|`` is rational; otherwise each modulus is
    rounded up to a multiple of ``2**-bits`` and the result is flagged.
    """
    total = Fraction(0)
    exact = True
    for d, c in f.coeffs.items():
        m2 = c.abs2()
        m = rational_sqrt(m2)
        if m is None:
            exact = False
            m = sqrt_ceil(m2, bits)
        total += m * f.pair.L(d)
    return L1Norm(total, exact)


def r_inner(f: CosetFunction, g: CosetFunction) -> HeckeElement:
    """``<f, g>_R = f^* * g`` computed in ``L1(G)``.

    For indicators, ``1_{h Gamma}^* * 1_{k Gamma} = e[h^-1 k] / L(h^-1 k)``
    with Haar measure normalised by ``mu(Gamma) = 1``.
    """
    pair = _check_pair(f, g)
    acc: dict = defaultdict(lambda: GR(0))
    for h, a in f.coeffs.items():
        hinv = pair.inv(h.rep)
        ac = a.conjugate()
        for k, b in g.coeffs.items():
            d = DoubleCoset(pair.canonical_double_coset(pair.mul(hinv, k.rep)))
            acc[d] = acc[d] + ac * b * Fraction(1, pair.L(d))
    return HeckeElement(pair, acc)


# -- finite group algebra oracle ----------------------------------------

class OracleReport(NamedTuple):
    product_ok: bool
    star_ok: bool
    mismatches: tuple

    @property
    def ok(self) -> bool:
        return self.product_ok and self.star_ok


def _embed(pair, f: HeckeElement) -> dict:
    out = {}
    for d, c in f.coeffs.items():
        for x in pair.double_coset_members(d):
            out[x] = c
    return out


def _group_convolve(pair, phi: dict, psi: dict) -> dict:
    # counting measure scaled so that mu(Gamma) = 1
    w = Fraction(1, len(pair.gamma))
    acc: dict = defaultdict(lambda: GR(0))
    for y, u in phi.items():
        for z, v in psi.items():
            x = pair.mul(y, z)
            acc[x] = acc[x] + u * v * w
    return {x: v for x, v in acc.items() if v}


def _group_star(pair, phi: dict) -> dict:
    return {pair.inv(x): v.conjugate() for x, v in phi.items()}


def group_algebra_oracle_check(pair, f1: HeckeElement, f2: HeckeElement) -> OracleReport:
    """Compare ``convolve``/``star`` with ``p C[G] p`` computed point by point."""
    from .backends.finite import FinitePair

    if not isinstance(pair, FinitePair):
        raise BackendMismatch("the group algebra oracle needs a finite pair")
    _check_pair(f1, f2)
    p = {g: GR(1) for g in pair.gamma}
    full = _group_convolve(pair, _group_convolve(pair, p, _group_convolve(pair, _embed(pair, f1), _embed(pair, f2))), p)
    hecke = _embed(pair, convolve(f1, f2))
    mismatches = []
    product_ok = full == hecke
    if not product_ok:
        mismatches.append(("product", f1.to_json(), f2.to_json()))
    star_ok = _group_star(pair, _embed(pair, f1)) == _embed(pair, star(f1))
    if not star_ok:
        mismatches.append(("star", f1.to_json()))
    return OracleReport(product_ok, star_ok, tuple(mismatches))
