from fractions import Fraction as F

import pytest

from cubefar.audit import BOUNDARY_SAMPLES, SUITES, audit_theorem7, run_suite, tie_mismatch
from cubefar.farthest import farthest_fundamental
from cubefar.regions import psi1, psi2


@pytest.mark.parametrize("suite", ["walls", "corners", "dynamics", "metrics"])
def test_coarse_suites_pass(suite):
    res = run_suite(suite, grid=F(1, 4))
    assert res.passed and res.checked > 0
    data = res.to_json()
    assert data["schema"] == "cubefar.audit/1" and data["suite"] == suite


def test_eq11_suite_small():
    res = run_suite("eq11", grid=F(1, 4))
    assert res.passed and res.details["saturated"]


def test_theorem7_without_oracle():
    res = audit_theorem7(grid=F(1, 4), oracle_step=None)
    assert res.passed


def test_boundary_samples_are_on_boundaries():
    for a, b, c in BOUNDARY_SAMPLES:
        assert psi1(a, c) == 0 or psi2(a, c) == 0
        fr = farthest_fundamental((a, b, c))
        assert len(fr.region.members) > 1
        assert tie_mismatch((a, b, c), fr) is None


def test_unknown_suite():
    assert "eq11" in SUITES
    with pytest.raises(ValueError):
        run_suite("nope")
