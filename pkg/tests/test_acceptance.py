"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest -s tests/test_acceptance.py``; the lines are also repeated
in the terminal summary.
"""

import random
import time
from contextlib import contextmanager
from fractions import Fraction as F

import pytest

from hecke.algebra import HeckeElement, group_algebra_oracle_check, r_inner
from hecke.backends import DihedralPair, SL2Pair, builtin_fixtures, load_finite_pair, sl2_pair
from hecke.cli import main
from hecke.growth import CosetSet, growth_sequence
from hecke.scalar import GaussianRational as GR
from hecke.spherical import (character_eval, counterexample_element, in_extension_domain,
                             scan_positivity)


@contextmanager
def criterion(log, label, limit):
    start = time.perf_counter()
    try:
        yield
        elapsed = time.perf_counter() - start
        assert elapsed < limit, f"took {elapsed:.2f}s, limit {limit}s"
    except BaseException as exc:
        line = f"FAIL {label} ({time.perf_counter() - start:.2f}s): {exc}".splitlines()[0]
        print(line)
        log.append(line)
        raise
    line = f"PASS {label} ({elapsed:.2f}s)"
    print(line)
    log.append(line)


def test_criterion_1_certificate(acceptance_log):
    with criterion(acceptance_log, "1 certificate values at z = -q", 5):
        for q in (2, 3, 5, 7, 11, 13):
            report = scan_positivity(q, counterexample_element(q), [-q])
            expected = (q + 1) - F(q**3 + q + 2, q + 1)
            cert = report.certificate
            assert cert is not None, f"no certificate for q={q}"
            assert isinstance(cert.value, F) and cert.value == expected < 0, (q, cert.value)
        assert scan_positivity(2, counterexample_element(2), [-2]).certificate.value == -1
        assert scan_positivity(3, counterexample_element(3), [-3]).certificate.value == -4


def test_criterion_2_product_ledger(acceptance_log):
    with criterion(acceptance_log, "2 <f, f>_R = (q+1) e0 + e1", 5):
        for q in (2, 3, 5):
            p = sl2_pair(q)
            f = counterexample_element(q)
            expected = HeckeElement(p, {p.double_coset_of_index(0): q + 1, p.double_coset_of_index(1): 1})
            assert r_inner(f, f) == expected, q


def test_criterion_3_coset_counts(acceptance_log):
    with criterion(acceptance_log, "3 L(x_n) = (q+1) q^(2n-1), L = R, Delta = 1", 60):
        for q in (2, 3):
            p = SL2Pair(q)
            for n in (1, 2, 3):
                d = p.double_coset_of_index(n)
                L, R = p.coset_counts(d)
                assert L == R == (q + 1) * q ** (2 * n - 1), (q, n, L, R)
                assert p.delta(d) == 1


def test_criterion_4_character_consistency(acceptance_log):
    with criterion(acceptance_log, "4 multiplicativity and positivity on [1/q, q]", 60):
        rng = random.Random(2024)
        for q in (2, 3):
            p = sl2_pair(q)
            zs = set()
            while len(zs) < 20:
                z = F(rng.randint(1, 100 * q), rng.randint(1, 100)) * rng.choice((1, -1))
                if in_extension_domain(q, z):
                    zs.add(z)
            basis = [HeckeElement.basis(p, p.x(m)) for m in range(3)]
            for z in zs:
                chars = [character_eval(q, z, b) for b in basis]
                for m in range(3):
                    for n in range(3):
                        assert character_eval(q, z, basis[m] * basis[n]) == chars[m] * chars[n], (q, z, m, n)
            grid = [F(1, q) + k * (q - F(1, q)) / 60 for k in range(61)]
            grid = [z for z in grid if z != 1]
            assert len(grid) >= 50
            report = scan_positivity(q, counterexample_element(q), grid)
            assert all(v >= 0 for _, v, _ in report.values)


def test_criterion_5_oracle(acceptance_log):
    with criterion(acceptance_log, "5 Hecke products and stars match the group algebra", 30):
        names = sorted(builtin_fixtures())
        assert len(names) >= 5 and {"s3_transposition", "s3_alternating"} <= set(names)
        rng = random.Random(5)
        for name in names:
            p = load_finite_pair(name)
            ds = p.double_cosets()

            def rand():
                return HeckeElement(p, {d: GR(rng.randint(-4, 4), rng.randint(-4, 4))
                                        for d in rng.sample(ds, rng.randint(1, len(ds)))})

            for _ in range(100):
                report = group_algebra_oracle_check(p, rand(), rand())
                assert report.ok, (name, report.mismatches)


def test_criterion_6_dihedral_growth(acceptance_log):
    with criterion(acceptance_log, "6 dihedral L(A^n) = 2n + 3, ratio at n=100 <= 1.01", 10):
        p = DihedralPair()
        A = CosetSet(p, [p.double_coset_of_index(0), p.double_coset_of_index(1)])
        report = growth_sequence(A, 100)
        assert not report.truncated
        assert report.L_values() == [2 * n + 3 for n in range(101)]
        assert F(report.rows[100].L, report.rows[99].L) <= F(101, 100)


def _sl2_growth():
    p = sl2_pair(2)
    return growth_sequence(CosetSet(p, [p.x(0), p.x(1)]), 5)


def test_criterion_7_sl2_growth_exact(acceptance_log):
    with criterion(acceptance_log, "7a SL2 q=2 L(A^n) = 2*4^(n+1) - 1 for n <= 5", 60):
        report = _sl2_growth()
        assert not report.truncated
        assert report.L_values() == [2 * 4 ** (n + 1) - 1 for n in range(6)]


def test_criterion_7_sl2_growth_ratio(acceptance_log):
    with criterion(acceptance_log, "7b SL2 q=2 successive ratios within 0.5% of 4 for n >= 3", 60):
        L = _sl2_growth().L_values()
        for n in range(3, 6):
            ratio = F(L[n], L[n - 1])
            assert abs(ratio - 4) <= F(5, 1000) * 4, f"n={n}: ratio {float(ratio):.5f}"


def test_criterion_8_property_suites(acceptance_log, capsys):
    argv = ["verify", "--suite", "all", "--trials", "100", "--seed", "0"]
    with criterion(acceptance_log, "8 verify --suite all, 100 trials, deterministic (two runs)", 240):
        start = time.perf_counter()
        code = main(argv)
        single = time.perf_counter() - start
        first = capsys.readouterr().out
        assert code == 0, first
        assert single < 120, f"one run took {single:.1f}s"
        assert "0 failed" in first
        rerun_code = main(argv)
        assert rerun_code == 0 and capsys.readouterr().out == first
