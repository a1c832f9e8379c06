import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hecke.algebra import CosetFunction, HeckeElement, r_inner
from hecke.backends import sl2_pair
from hecke.errors import DomainError, ParseError
from hecke.scalar import GaussianRational
from hecke.spherical import (CharacterPoint, PositivityCertificate, SphericalElement,
                             character_eval, counterexample_element, default_grid,
                             in_extension_domain, phi, scan_positivity)

PRIMES = [2, 3, 5, 7, 11, 13]


def certificate_value(q):
    return (q + 1) - F(q**3 + q + 2, q + 1)


def admissible(q):
    mags = st.fractions(min_value=F(1, q), max_value=q, max_denominator=50)
    return st.tuples(mags, st.sampled_from([1, -1])).map(lambda t: t[0] * t[1]).filter(lambda z: z != 1)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_phi_at_zero_index_is_one(q):
    for z in default_grid(q):
        assert phi(q, z, 0) == 1


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.data(), st.integers(0, 5))
def test_phi_inversion_symmetry(q, data, m):
    z = data.draw(admissible(q))
    assert phi(q, z, m) == phi(q, 1 / z, m)


def test_phi_rejects_singular_points():
    for z in (0, 1):
        with pytest.raises(DomainError):
            phi(2, z, 1)


@pytest.mark.parametrize("q", PRIMES)
def test_cubic_criterion(q):
    # negative iff (q+1)^2 < q^3 + q + 2 iff q^3 - q^2 - q + 1 = (q-1)^2 (q+1) > 0
    assert certificate_value(q) < 0
    assert q**3 - q**2 - q + 1 == (q - 1) ** 2 * (q + 1) > 0


@pytest.mark.parametrize("q", [2, 3, 5])
def test_counterexample_inner_product(q):
    f = counterexample_element(q)
    assert len(f) == q + 1
    h = SphericalElement.from_hecke(r_inner(f, f))
    assert h == SphericalElement(q, {0: q + 1, 1: 1})
    assert h.to_hecke() == r_inner(f, f)


@pytest.mark.parametrize("q, expected", [(2, -1), (3, -4), (5, -16), (7, -36), (11, -100), (13, -144)])
def test_certificate_values(q, expected):
    report = scan_positivity(q, counterexample_element(q), [-q])
    cert = report.certificate
    assert cert is not None and cert.value == expected == certificate_value(q)
    assert cert.validate()


def test_character_is_multiplicative_exactly():
    rng = random.Random(7)
    for q in (2, 3):
        p = sl2_pair(q)
        for _ in range(5):
            z = F(rng.randint(1, 4 * q), rng.randint(1, 4)) * rng.choice((1, -1))
            if not in_extension_domain(q, z):
                continue
            for m in range(3):
                for n in range(3):
                    em = HeckeElement.basis(p, p.x(m))
                    en = HeckeElement.basis(p, p.x(n))
                    lhs = character_eval(q, z, em * en)
                    assert lhs == character_eval(q, z, em) * character_eval(q, z, en)


@pytest.mark.parametrize("q", [2, 3])
def test_nonnegative_on_positive_half(q):
    f = counterexample_element(q)
    zs = [F(1, q) + k * (q - F(1, q)) / 40 for k in range(41)]
    report = scan_positivity(q, f, [z for z in zs if z != 1])
    assert report.certificate is None
    assert all(v >= 0 for _, v, _ in report.values)


def test_scan_domain_handling():
    f = counterexample_element(2)
    with pytest.raises(DomainError):
        scan_positivity(2, f, [-3])
    with pytest.raises(DomainError):
        scan_positivity(2, f, [1])
    report = scan_positivity(2, f, [-3, F(-1, 3)], allow_outside_domain=True)
    # out-of-domain negatives are reported but never certified
    assert report.certificate is None
    assert report.values[0][2] is False and report.values[0][1] < 0
    assert report.to_json()["values"][0]["note"] == "informational only"


def test_default_grid():
    grid = default_grid(3)
    assert F(1) not in grid and F(-1) in grid and F(1, 3) in grid
    assert len(grid) == 2 * (2 * 3 - 1) - 1


def test_character_point_validation():
    assert CharacterPoint(3, F(-1, 3)).in_domain
    with pytest.raises(DomainError):
        CharacterPoint(3, 4)
    with pytest.raises(DomainError):
        CharacterPoint(3, 1)
    with pytest.raises(DomainError):
        CharacterPoint(4, 2)


def test_certificate_json_round_trip_and_tamper():
    cert = scan_positivity(3, counterexample_element(3), [-3]).certificate
    obj = cert.to_json()
    assert obj["conclusion"] == "not_R_positive" and obj["value"] == "-4"
    again = PositivityCertificate.from_json(obj)
    assert again.validate()
    obj["value"] = "-5"
    assert not PositivityCertificate.from_json(obj).validate()
    with pytest.raises(ParseError):
        PositivityCertificate.from_json({"q": 3})


def test_from_hecke_requires_real_coefficients():
    p = sl2_pair(2)
    with pytest.raises(DomainError):
        SphericalElement.from_hecke(HeckeElement.basis(p, p.x(1), GaussianRational(0, 1)))


def test_unit_is_positive_everywhere():
    p = sl2_pair(2)
    one = CosetFunction.indicator(p, p.identity)
    report = scan_positivity(2, one)
    assert report.certificate is None
    assert all(v == 1 for _, v, _ in report.values)
