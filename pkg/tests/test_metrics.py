import csv
import io
import math
from fractions import Fraction as F

import numpy as np
import pytest

from cubefar.metrics import (
    center_corner_sqdist,
    corner_ratio_formula,
    estimate_ratio_sampling,
    farthest_distance_field,
    field_csv,
    radius_diameter_exact,
    ratio_formula,
    unfolding_sqdist,
)
from cubefar.oracle import oracle_distance


@pytest.mark.parametrize("n, r2, d2", [(2, 4, 4), (3, 4, 5), (4, 4, 6)])
def test_exact_radius_and_diameter(n, r2, d2):
    rep = radius_diameter_exact(n, F(1, 4))
    assert (rep.radius_sq, rep.diameter_sq) == (r2, d2)
    assert math.isclose(rep.ratio, ratio_formula(n), rel_tol=1e-15)
    assert 0.5 <= rep.ratio <= 1
    if n > 2:
        assert rep.notes["grid_min"] >= 4
    assert rep.to_json()["status"] == "EXACT"


def test_radius_witness_n4():
    rep = radius_diameter_exact(4, F(1, 8))
    assert rep.witnesses["radius"] == [(F(1, 2),) * 3 + (0,), (F(1, 2),) * 3 + (1,)]
    assert rep.notes["grid_min"] == 4


def test_center_to_corner():
    assert center_corner_sqdist(10) == F(17, 4)
    assert center_corner_sqdist(4) == F(11, 4)
    # exact geodesic at n = 5 through the oracle
    p = (F(1, 2),) * 4 + (0,)
    assert oracle_distance(p, (1,) * 5, max_len=3) == center_corner_sqdist(5)
    assert corner_ratio_formula(10) > ratio_formula(10) / 2


def test_float_distances_high_dimension():
    n = 10
    p = np.array([0.5] * (n - 1) + [0.0])
    d = unfolding_sqdist(p, np.array([[1.0] * n, [0.5] * (n - 1) + [1.0]]), max_len=3)
    assert d[0] == pytest.approx(float(center_corner_sqdist(n)))
    assert d[1] == pytest.approx(4.0)
    assert d[0] > d[1]


@pytest.mark.parametrize("n", [3, 4])
def test_sampling_estimate_close_to_exact(n):
    rep = estimate_ratio_sampling(n, samples=6, seed=1)
    assert not rep.exact and rep.to_json()["status"] == "ESTIMATE"
    assert rep.ratio == pytest.approx(ratio_formula(n), abs=1e-2)
    assert 0.5 <= rep.ratio <= 1


def test_distance_field():
    rows = farthest_distance_field(4, F(1, 4))
    assert all(r[-1] >= 4 for r in rows)
    assert (F(1, 2), F(1, 2), F(1, 2), 4) in rows
    table = list(csv.reader(io.StringIO(field_csv(rows, 4))))
    assert table[0] == ["a", "b", "c", "sq_dist", "dist"] and len(table) == len(rows) + 1
    rows3 = farthest_distance_field(3, F(1, 4))
    assert min(r[-1] for r in rows3) == 4
