import pytest

from hecke.backends import DihedralPair
from hecke.verify import PROPERTIES, SUITES, Property, require, run_suites


def test_every_suite_has_properties():
    assert {p.suite for p in PROPERTIES} == set(SUITES)
    names = {p.name for p in PROPERTIES}
    for expected in ("convolution_associative", "involution_laws", "modular_function_homomorphism",
                     "left_count_equals_right_count_of_inverse", "l1_star_isometry",
                     "l1_submultiplicative", "r_inner_representative_independent",
                     "phi_inversion_symmetry", "reduction_structure_constants"):
        assert expected in names


def test_failure_carries_repro(monkeypatch):
    def broken(pair, rng):
        n = rng.randint(0, 9)
        require(n < 0, "n should be negative", n=n)

    monkeypatch.setattr("hecke.verify.PROPERTIES", [Property("core", "broken", lambda p: p is not None, broken)])
    (result,) = run_suites(["core"], trials=3, seed=4, pairs=[DihedralPair()])
    assert not result.passed
    assert result.failure.startswith("trial 0: n should be negative")
    assert '"n":' in result.repro
    assert result.line().startswith("FAIL core/broken [dihedral] trials=3\n")


def test_seeded_runs_repeat():
    a = [r.line() for r in run_suites(["algebra"], trials=3, seed=9)]
    b = [r.line() for r in run_suites(["algebra"], trials=3, seed=9)]
    assert a == b and all(line.startswith("PASS") for line in a)


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suites(["nope"])
