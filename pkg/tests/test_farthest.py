import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cubefar.cube import DomainError, dist_to_goal, iota, reduce_to_fundamental
from cubefar.farthest import (
    _corner_gap,
    _psi32_poly,
    blowup_coords,
    check_descent,
    cube3_limit_iterate,
    descent_windows,
    farthest,
    farthest_3cube,
    farthest_fundamental,
    in_iota_delta,
    iterate_orbit,
    landmarks,
    limit_set_summary,
)
from cubefar.regions import classify_delta, psi1, psi2, psi32
from strategies import delta_points, rationals, sample_window


def test_3cube_examples():
    assert farthest_3cube((F(1, 3), F(1, 6))).points == [(F(31, 42), F(5, 6), 1)]
    assert farthest_3cube((0, 0)).points == [(1, 1, 1)]
    two = farthest_3cube((F(1, 2), F(1, 5))).points
    assert len(two) == 2 and two[0][0] + two[1][0] == 1


def test_3cube_limit():
    a, b, steps = cube3_limit_iterate(F(7, 16), F(3, 16), 100)
    assert abs(a - 3 / 16) < 1e-9 and steps < 100


@pytest.mark.parametrize("p, q, d2", [
    ((F(2, 5), F(1, 3), F(1, 4)), (F(57, 88), F(39, 56), F(3, 4), 1), None),
    ((0, 0, 0), (1, 1, 1, 1), 6),
    ((F(1, 2),) * 3, (F(1, 2),) * 3 + (1,), 4),
])
def test_farthest_fundamental_examples(p, q, d2):
    r = farthest_fundamental(p)
    assert r.points == [q]
    assert r.certified and r.theorem_ok
    if d2 is not None:
        assert r.sq_dist == d2


def test_farthest_transports_by_witness():
    p = (F(9, 10), F(1, 5), F(3, 5), 1)
    r = farthest(p)
    dp = reduce_to_fundamental(p)
    base = farthest_fundamental(dp.abc)
    assert r.sq_dist == base.sq_dist
    assert r.points == [dp.witness.inverse()(q) for q in base.points]
    with pytest.raises(DomainError):
        farthest((F(1, 2),) * 4)


@given(rationals(0, F(1, 2)))
def test_diagonal_is_fixed_by_iota_f(t):
    p = (t, t, t, F(0))
    assert [iota(q) for q in farthest(p).points] == [p]


@given(delta_points())
def test_farthest_certified(abc):
    r = farthest_fundamental(abc)
    assert r.certified and r.theorem_ok
    for q in r.points:
        assert dist_to_goal(abc, q[:3])[0] == r.sq_dist


@given(rationals(), rationals(), st.sampled_from(["a=b", "b=c", "c=0"]))
def test_plane_preservation(x, y, plane):
    x, y = max(x, y), min(x, y)
    abc = {"a=b": (x, x, y), "b=c": (x, y, y), "c=0": (x, y, F(0))}[plane]
    base = [q for q in farthest_fundamental(abc).points if in_iota_delta(q)]
    assert base
    # other members are stabilizer copies of these
    for q in base:
        qa, qb, qc = (1 - v for v in q[:3])
        assert {"a=b": qa == qb, "b=c": qb == qc, "c=0": qc == 0}[plane]


# For c in roughly [0.097, 0.1015] the region D11 has a second piece near
# a = 1/2 whose image falls outside D11; invariance holds away from that band.
ESCAPE_BAND = (F(96, 1000), F(102, 1000))


@given(delta_points())
def test_d11_forward_invariant(abc):
    if classify_delta(abc).tag != "D11" or len(classify_delta(abc).members) > 1:
        return
    if ESCAPE_BAND[0] <= abc[2] <= ESCAPE_BAND[1]:
        return
    orb = iterate_orbit(abc + (0,), max_steps=2, exact_steps=2)
    a, b, c = abc
    nxt = orb.steps[1].delta
    assert classify_delta(nxt).tag == "D11" and nxt[2] == c
    # contraction toward c
    assert abs(nxt[0] - c) <= abs(a - c) and abs(nxt[1] - c) <= abs(b - c)


def test_d11_escape_near_c_one_tenth():
    p = (F(1, 2), F(1, 2), F(1, 10))
    assert classify_delta(p).members == ("D11",)
    orb = iterate_orbit(p + (0,), max_steps=500, exact_steps=8)
    assert orb.steps[1].delta == (F(17, 50), F(17, 50), F(1, 10))
    assert orb.steps[1].region == "D22A"
    # the orbit re-enters D11 and still reaches the diagonal at height c
    assert orb.steps[2].region == "D11"
    assert orb.converged and all(abs(float(x) - 0.1) < 1e-9 for x in orb.limit[:3])


def test_orbit_examples():
    orb = iterate_orbit((F(2, 5), F(1, 3), F(1, 4), 0))
    assert orb.converged and orb.exact_prefix_len == 9
    assert max(abs(float(x) - y) for x, y in zip(orb.limit, (0.25, 0.25, 0.25, 0))) < 1e-9
    fixed = iterate_orbit((F(1, 3),) * 3 + (0,))
    assert fixed.n_steps == 0 and fixed.limit == (F(1, 3),) * 3 + (0,)
    flat = iterate_orbit((F(2, 5), F(1, 3), 0, 0))
    assert flat.converged and flat.diagonal_deviation() < 1e-9


def test_orbit_in_original_coordinates():
    p = (F(3, 5), F(2, 3), F(3, 4), 1)
    orb = iterate_orbit(p)
    assert orb.steps[0].point == p
    assert orb.converged and orb.limit[3] == 1


def test_blowup_examples():
    assert blowup_coords((F(2, 5), F(1, 3), F(1, 6)))[0] == F(12, 5)
    t = F(1, 7)
    assert blowup_coords((t, t, t)) == (1, 0, 1)
    assert all(math.isinf(v) for v in blowup_coords((F(2, 5), F(1, 3), 0)))


def test_descent_outside_windows():
    assert check_descent((F(1, 5),) * 3)[0].in_window is False
    assert descent_windows((F(2, 5), F(1, 3), F(1, 4))) == []


@pytest.mark.parametrize("window", ["xz_drop", "r2_drop", "xz_identity", "yz_drop"])
def test_descent_inequalities(window):
    for p in sample_window(window, 15, random.Random(window)):
        (rep,) = check_descent(p, window)
        assert rep.in_window and rep.holds, (p, rep.margins)


@given(delta_points())
def test_psi32_float_polynomial(abc):
    v = psi32(*abc)
    assert math.isclose(_psi32_poly(*(float(x) for x in abc)), float(v), rel_tol=1e-9, abs_tol=1e-12)


PRINTED = {
    "p21": (0.2864, 0.09847, 0.06212),
    "p22A1": (0.3282, 0.3282, 0.06898),
    "p22A2": (0.2591, 0.2591, 0.05726),
    "p31": (0.2864, 0.09847, 0.06212),
    "p32A1": (0.3282, 0.3282, 0.06898),
    "p32A2": (0.2591, 0.2591, 0.05726),
    "p32B1": (0.3282, 0.3282, 0.06898),
}


def test_landmarks_match_printed_values():
    found = landmarks()
    for name, printed in PRINTED.items():
        got = found[name]
        assert max(abs(x - y) for x, y in zip(got, printed)) < 1e-4, name
        a, b, c = got
        assert abs(psi2(a, c)) < 1e-10
    for name in ("p21", "p31"):
        a, b, c = found[name]
        assert abs(psi1(b, c)) < 1e-10
    gap = _corner_gap(("BD", "D", "RD"), ("B", "BD", "RD"))
    assert abs(gap(*found["p22A1"])) < 1e-10


def test_limit_summary_same_facet():
    out = limit_set_summary([(F(2, 5), F(1, 3), F(1, 4)), (F(1, 4), F(1, 5), F(1, 8))])
    assert out["converged"] == 2
    assert all(r.same_facet for r in out["rows"])
    assert out["below_floor"] == []
