"""Seeded property suites behind ``hecke verify``.

Each property is run ``trials`` times per applicable backend with its own
``random.Random`` seeded from ``(seed, suite, name, backend)``, so results do
not depend on which other suites run.  A failing trial raises
:class:`PropertyFailure` carrying the inputs needed to reproduce it.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .algebra import (
    CosetFunction,
    HeckeElement,
    convolve,
    group_algebra_oracle_check,
    l1_norm,
    r_inner,
    star,
    structure_constants,
)
from .backends import (
    DihedralPair,
    DyadicAffinePair,
    FinitePair,
    SL2Pair,
    builtin_fixtures,
    load_finite_pair,
    sl2_pair,
)
from .growth import CosetSet, growth_sequence, set_product, total_L
from .pair import DoubleCoset, HeckePair
from .scalar import GaussianRational
from .spherical import (
    character_eval,
    counterexample_element,
    in_extension_domain,
    phi,
    scan_positivity,
)

SUITES = ("core", "algebra", "spherical", "growth")


class PropertyFailure(AssertionError):
    def __init__(self, message: str, **inputs):
        super().__init__(message)
        self.inputs = inputs

    def repro(self) -> str:
        return json.dumps(self.inputs, sort_keys=True, default=str)


def require(cond: bool, message: str, **inputs):
    if not cond:
        raise PropertyFailure(message, **inputs)


@dataclass
class Property:
    suite: str
    name: str
    applies: Callable[[HeckePair], bool]
    check: Callable  # (pair, rng) -> None


@dataclass
class PropertyResult:
    suite: str
    name: str
    backend: str
    trials: int
    passed: bool
    failure: str = ""
    repro: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = f"{status} {self.suite}/{self.name} [{self.backend}] trials={self.trials}"
        if not self.passed:
            out += f"\n    {self.failure}\n    repro: {self.repro}"
        return out


PROPERTIES: list[Property] = []


def prop(suite, applies=lambda pair: True):
    def deco(fn):
        PROPERTIES.append(Property(suite, fn.__name__, applies, fn))
        return fn
    return deco


def _is(*types):
    return lambda pair: isinstance(pair, types)


def _any_pair(pair):
    return pair is not None


def _no_pair(pair):
    return pair is None


# -- random inputs --------------------------------------------------------

def random_scalar(rng: random.Random, real: bool = False) -> GaussianRational:
    re = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    im = 0 if real or rng.random() < 0.5 else Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    z = GaussianRational(re, im)
    return z if z else GaussianRational(1)


def random_hecke(pair: HeckePair, rng: random.Random, terms: int = 3, real: bool = False) -> HeckeElement:
    return HeckeElement(pair, [(pair.random_double_coset(rng), random_scalar(rng, real))
                               for _ in range(rng.randint(1, terms))])


def random_coset_function(pair: HeckePair, rng: random.Random, terms: int = 3) -> CosetFunction:
    return CosetFunction(pair, [(pair.left_coset(pair.random_element(rng)), random_scalar(rng))
                                for _ in range(rng.randint(1, terms))])


def random_coset_set(pair: HeckePair, rng: random.Random, size: int = 2) -> CosetSet:
    return CosetSet(pair, [pair.random_double_coset(rng) for _ in range(rng.randint(1, size))])


def _j(pair, g):
    return pair.element_to_json(g)


def random_admissible_z(q: int, rng: random.Random) -> Fraction:
    while True:
        z = Fraction(rng.randint(1, 12 * q), rng.randint(1, 12)) * rng.choice((1, -1))
        if in_extension_domain(q, z):
            return z


# -- core -----------------------------------------------------------------

@prop("core", _any_pair)
def group_axioms(pair, rng):
    g, h, k = (pair.random_element(rng) for _ in range(3))
    e = pair.identity
    require(pair.mul(pair.mul(g, h), k) == pair.mul(g, pair.mul(h, k)), "associativity",
            g=_j(pair, g), h=_j(pair, h), k=_j(pair, k))
    require(pair.mul(g, pair.inv(g)) == e and pair.mul(pair.inv(g), g) == e, "inverse", g=_j(pair, g))
    require(pair.mul(e, g) == g == pair.mul(g, e), "identity", g=_j(pair, g))


@prop("core", _any_pair)
def canonical_forms_invariant(pair, rng):
    g = pair.random_element(rng)
    a, b = pair.random_gamma(rng), pair.random_gamma(rng)
    require(pair.in_gamma(a) and pair.in_gamma(b), "sampled Gamma element not in Gamma",
            a=_j(pair, a), b=_j(pair, b))
    F = pair.canonical_left_coset(g)
    require(pair.canonical_left_coset(pair.mul(g, b)) == F, "left coset form not right-Gamma invariant",
            g=_j(pair, g), gamma=_j(pair, b))
    require(pair.in_gamma(pair.mul(pair.inv(F), g)), "canonical left rep not in g*Gamma", g=_j(pair, g))
    require(pair.canonical_left_coset(F) == F, "left form not idempotent", g=_j(pair, g))
    D = pair.canonical_double_coset(g)
    require(pair.canonical_double_coset(pair.mul_many(a, g, b)) == D,
            "double coset form not Gamma-biinvariant", g=_j(pair, g), a=_j(pair, a), b=_j(pair, b))
    require(pair.canonical_double_coset(D) == D, "double form not idempotent", g=_j(pair, g))


def count_right_cosets(pair: HeckePair, g) -> int:
    """Right cosets in ``Gamma g Gamma``, by orbit closure of ``Gamma g`` under
    right multiplication (independent of ``left_cosets_of``)."""
    if isinstance(pair, FinitePair):
        members = pair.double_coset_members(pair.double_coset(g))
        return len({frozenset(pair.mul(c, x) for c in pair.gamma) for x in members})

    def key(k):
        # Gamma k = Gamma k'  <=>  k^-1 Gamma = k'^-1 Gamma
        return pair.canonical_left_coset(pair.inv(k))

    gens = pair._generators_with_inverses()
    seen = {key(g): g}
    frontier = [g]
    while frontier:
        nxt = []
        for k in frontier:
            for s in gens:
                k2 = pair.mul(k, s)
                c = key(k2)
                if c not in seen:
                    seen[c] = k2
                    nxt.append(k2)
        frontier = nxt
    return len(seen)


@prop("core", _any_pair)
def left_count_equals_right_count_of_inverse(pair, rng):
    g = pair.random_element(rng)
    L = pair.L(pair.double_coset(g))
    R_inv = count_right_cosets(pair, pair.inv(g))
    require(L == R_inv, f"L(g) = {L} but R(g^-1) = {R_inv}", g=_j(pair, g))


@prop("core", _is(FinitePair))
def left_right_all_double_cosets(pair, rng):
    for d in pair.double_cosets():
        L = pair.L(d)
        require(L == count_right_cosets(pair, pair.inv(d.rep)), "L(g) != R(g^-1)", g=_j(pair, d.rep))
        require(L * len(pair.gamma) == len(pair.double_coset_members(d)), "L * |Gamma| != |double coset|",
                g=_j(pair, d.rep))


@prop("core", _any_pair)
def modular_function_homomorphism(pair, rng):
    g, h = pair.random_element(rng), pair.random_element(rng)
    dg, dh, dgh = (pair.delta(pair.double_coset(x)) for x in (g, h, pair.mul(g, h)))
    require(dgh == dg * dh, f"Delta(gh) = {dgh} != {dg} * {dh}", g=_j(pair, g), h=_j(pair, h))


@prop("core", _any_pair)
def left_cosets_partition_double_coset(pair, rng):
    d = pair.random_double_coset(rng)
    cosets = pair.left_cosets_of(d)
    require(len(set(cosets)) == len(cosets), "duplicate left cosets", d=_j(pair, d.rep))
    require(list(cosets) == sorted(cosets), "left cosets not sorted", d=_j(pair, d.rep))
    for c in cosets:
        require(pair.canonical_double_coset(c.rep) == d.rep, "left coset outside its double coset",
                d=_j(pair, d.rep), coset=_j(pair, c.rep))
        require(pair.canonical_left_coset(c.rep) == c.rep, "non-canonical left coset rep",
                coset=_j(pair, c.rep))
    if isinstance(pair, FinitePair):
        union = set()
        for c in cosets:
            union |= {pair.mul(c.rep, x) for x in pair.gamma}
        require(union == set(pair.double_coset_members(d)), "left cosets do not cover", d=_j(pair, d.rep))


@prop("core", _is(SL2Pair))
def sl2_index_from_valuations(pair, rng):
    g = pair.random_element(rng)
    n = pair.double_coset_index(g)
    require(n >= 0 and (n == 0) == pair.in_gamma(g), "index/Gamma-membership mismatch", g=_j(pair, g))
    require(pair.canonical_double_coset(g) == pair.x(n), "double coset rep is not x_n", g=_j(pair, g))


@prop("core", _is(DyadicAffinePair))
def dyadic_modular_function(pair, rng):
    g = pair.random_element(rng)
    require(pair.delta(pair.double_coset(g)) == Fraction(2) ** g[1], "Delta((b,k)) != 2^k", g=_j(pair, g))


# -- algebra --------------------------------------------------------------

@prop("algebra", _any_pair)
def convolution_associative(pair, rng):
    a, b, c = (random_hecke(pair, rng) for _ in range(3))
    require(convolve(convolve(a, b), c) == convolve(a, convolve(b, c)), "associativity fails",
            a=a.to_json(), b=b.to_json(), c=c.to_json())


@prop("algebra", _any_pair)
def involution_laws(pair, rng):
    a, b = random_hecke(pair, rng), random_hecke(pair, rng)
    s = random_scalar(rng)
    require(star(star(a)) == a, "star is not an involution", a=a.to_json())
    require(star(convolve(a, b)) == convolve(star(b), star(a)), "star(ab) != star(b) star(a)",
            a=a.to_json(), b=b.to_json())
    require(star(s * a + b) == s.conjugate() * star(a) + star(b), "star not conjugate-linear",
            a=a.to_json(), b=b.to_json(), s=s.to_json())


@prop("algebra", _any_pair)
def unit_is_projection(pair, rng):
    e = HeckeElement.unit(pair)
    f = random_hecke(pair, rng)
    require(convolve(e, f) == f == convolve(f, e), "unit fails", f=f.to_json())
    require(convolve(e, e) == e and star(e) == e, "unit is not a projection")


@prop("algebra", _any_pair)
def l1_star_isometry(pair, rng):
    f = random_hecke(pair, rng, real=True)
    n1, n2 = l1_norm(f), l1_norm(star(f))
    require(n1.exact and n2.exact and n1.value == n2.value, f"|f| = {n1.value}, |f*| = {n2.value}",
            f=f.to_json())


@prop("algebra", _any_pair)
def l1_submultiplicative(pair, rng):
    a, b = random_hecke(pair, rng, real=True), random_hecke(pair, rng, real=True)
    lhs = l1_norm(convolve(a, b)).value
    rhs = l1_norm(a).value * l1_norm(b).value
    require(lhs <= rhs, f"|ab| = {lhs} > {rhs}", a=a.to_json(), b=b.to_json())


@prop("algebra", _any_pair)
def r_inner_representative_independent(pair, rng):
    f, g = random_coset_function(pair, rng), random_coset_function(pair, rng)
    ref = r_inner(f, g)
    # rebuild the inner product from h*gamma representatives by hand
    acc = HeckeElement(pair)
    for h, a in f:
        hg = pair.mul(h.rep, pair.random_gamma(rng))
        for k, b in g:
            kg = pair.mul(k.rep, pair.random_gamma(rng))
            d = DoubleCoset(pair.canonical_double_coset(pair.mul(pair.inv(hg), kg)))
            acc = acc + HeckeElement(pair, {d: a.conjugate() * b * Fraction(1, pair.L(d))})
    require(acc == ref, "r_inner depends on representatives", f=f.to_json(), g=g.to_json())


@prop("algebra", _any_pair)
def r_inner_self_adjoint(pair, rng):
    f = random_coset_function(pair, rng)
    h = r_inner(f, f)
    require(star(h) == h, "<f, f>_R is not self-adjoint", f=f.to_json())


@prop("algebra", _is(FinitePair))
def group_algebra_oracle(pair, rng):
    a, b = random_hecke(pair, rng), random_hecke(pair, rng)
    report = group_algebra_oracle_check(pair, a, b)
    require(report.ok, f"oracle mismatch: {report.mismatches}", a=a.to_json(), b=b.to_json())


@prop("algebra", _is(FinitePair))
def reduction_structure_constants(pair, rng):
    reduced, bij = pair.reduce_pair()
    require(len(set(bij.values())) == len(bij) == len(reduced.double_cosets()), "not a bijection")
    a, b = pair.random_double_coset(rng), pair.random_double_coset(rng)
    lhs = {bij[d]: n for d, n in structure_constants(pair, a, b).items()}
    rhs = structure_constants(reduced, bij[a], bij[b])
    require(lhs == rhs, "structure constants differ after reduction", a=_j(pair, a.rep), b=_j(pair, b.rep))
    require(len(reduced.core_subgroup()) == 1, "reduced pair has nontrivial core")


# -- spherical (backend independent) ----------------------------------------

_PRIMES = (2, 3, 5, 7, 11, 13)


@prop("spherical", _no_pair)
def phi_inversion_symmetry(pair, rng):
    q = rng.choice(_PRIMES)
    z = random_admissible_z(q, rng)
    m = rng.randint(0, 6)
    require(phi(q, z, m) == phi(q, 1 / z, m), "phi(z) != phi(1/z)", q=q, z=str(z), m=m)


@prop("spherical", _no_pair)
def character_multiplicative(pair, rng):
    q = rng.choice((2, 3))
    P = sl2_pair(q)
    m, n = rng.randint(0, 2), rng.randint(0, 2)
    z = random_admissible_z(q, rng)
    em = HeckeElement.basis(P, P.x(m))
    en = HeckeElement.basis(P, P.x(n))
    lhs = character_eval(q, z, convolve(em, en))
    rhs = character_eval(q, z, em) * character_eval(q, z, en)
    require(lhs == rhs, f"pi(e_m e_n) = {lhs} != {rhs}", q=q, z=str(z), m=m, n=n)


@prop("spherical", _no_pair)
def character_nonnegative_on_positive_part(pair, rng):
    q = rng.choice((2, 3, 5))
    f = counterexample_element(q)
    h = r_inner(f, f)
    num = rng.randint(1, q * q * 10)
    z = Fraction(num, q * 10)
    if z == 1 or not in_extension_domain(q, z):
        z = Fraction(q)
    v = character_eval(q, z, h)
    require(v >= 0, f"pi_z(<f,f>) = {v} < 0 inside [1/q, q]", q=q, z=str(z))


@prop("spherical", _no_pair)
def negativity_small_primes(pair, rng):
    q = rng.choice(_PRIMES)
    rep = scan_positivity(q, counterexample_element(q), [-q])
    expected = (q + 1) - Fraction(q**3 + q + 2, q + 1)
    cert = rep.certificate
    require(cert is not None and cert.value == expected < 0, "no certificate at z = -q", q=q)
    require(q**3 - q**2 - q + 1 > 0, "cubic criterion fails", q=q)


@prop("spherical", _no_pair)
def certificate_soundness(pair, rng):
    q = rng.choice((2, 3))
    P = sl2_pair(q)
    f = counterexample_element(q)
    if rng.random() < 0.5:
        # perturb with extra random cosets; certificates, if any, must still check out
        f = f + random_coset_function(P, rng)
    rep = scan_positivity(q, f)
    if rep.certificate is not None:
        require(rep.certificate.validate(), "certificate does not re-validate", q=q, f=f.to_json())


# -- growth -----------------------------------------------------------------

def _growth_pair(pair):
    return isinstance(pair, (DihedralPair, DyadicAffinePair, FinitePair)) or (
        isinstance(pair, SL2Pair) and pair.q == 2)


@prop("growth", _growth_pair)
def set_product_associative(pair, rng):
    A, B, C = (random_coset_set(pair, rng) for _ in range(3))
    lhs = set_product(set_product(A, B), C)
    rhs = set_product(A, set_product(B, C))
    require(lhs == rhs, "set product not associative",
            A=[_j(pair, d.rep) for d in A.sorted()], B=[_j(pair, d.rep) for d in B.sorted()],
            C=[_j(pair, d.rep) for d in C.sorted()])


@prop("growth", _growth_pair)
def powers_monotone_with_identity(pair, rng):
    A = CosetSet(pair, list(random_coset_set(pair, rng)) + [pair.identity_coset()])
    prev = A
    for _ in range(2):
        nxt = set_product(A, prev)
        require(prev <= nxt, "A^n not contained in A^(n+1)", A=[_j(pair, d.rep) for d in A.sorted()])
        prev = nxt


@prop("growth", _growth_pair)
def total_L_submultiplicative(pair, rng):
    A, B = random_coset_set(pair, rng), random_coset_set(pair, rng)
    require(total_L(set_product(A, B)) <= total_L(A) * total_L(B), "L(AB) > L(A) L(B)",
            A=[_j(pair, d.rep) for d in A.sorted()], B=[_j(pair, d.rep) for d in B.sorted()])


@prop("growth", _is(FinitePair))
def reduction_preserves_growth(pair, rng):
    reduced, bij = pair.reduce_pair()
    A = random_coset_set(pair, rng, size=3)
    Ar = CosetSet(reduced, [bij[d] for d in A])
    lhs = growth_sequence(A, 4).L_values()
    rhs = growth_sequence(Ar, 4).L_values()
    require(lhs == rhs, f"growth {lhs} != reduced {rhs}", A=[_j(pair, d.rep) for d in A.sorted()])


# -- driver -----------------------------------------------------------------

def default_pairs(budget=None) -> list[HeckePair]:
    pairs: list[HeckePair] = [DihedralPair(budget), DyadicAffinePair(budget),
                              sl2_pair(2, budget), sl2_pair(3, budget)]
    pairs += [load_finite_pair(name, budget=budget) for name in builtin_fixtures()]
    return pairs


def run_suites(suites=SUITES, trials: int = 100, seed: int = 0, pairs=None,
               budget=None) -> list[PropertyResult]:
    suites = list(SUITES) if suites in ("all", None) else list(suites)
    for s in suites:
        if s not in SUITES:
            raise ValueError(f"unknown suite {s!r}")
    pairs = default_pairs(budget) if pairs is None else list(pairs)
    results = []
    for p in PROPERTIES:
        if p.suite not in suites:
            continue
        targets = [None] if p.applies(None) else [x for x in pairs if p.applies(x)]
        for pair in targets:
            label = "-" if pair is None else pair.label
            rng = random.Random(f"{seed}:{p.suite}:{p.name}:{label}")
            result = PropertyResult(p.suite, p.name, label, trials, True)
            for t in range(trials):
                try:
                    p.check(pair, rng)
                except PropertyFailure as exc:
                    result.passed = False
                    result.failure = f"trial {t}: {exc}"
                    result.repro = exc.repro()
                    break
            results.append(result)
    return results
