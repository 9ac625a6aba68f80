import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cubefar.corners import (
    CLOSED_FORM_TRIPLES,
    CORNER_LISTS,
    THEOREM_CANDIDATES,
    back_right_sites,
    bisector_height,
    closed_form_center,
    corner_set,
    dominated_status,
    f_max,
    generic_center,
    verify_corner,
    verify_corner_fmax,
)
from cubefar.cube import goal_closed_forms
from cubefar.exact import DegenerateError, sqdist
from strategies import delta_points, rationals, sample_region

P11 = (F(2, 5), F(1, 3), F(1, 4))


def test_corner_set_d11():
    cs = corner_set(P11)
    assert [c.triple for c in cs.corners] == list(CORNER_LISTS["D11"])
    assert cs.corners[0].point == (F(57, 88), F(39, 56), F(3, 4))


def test_corner_set_origin():
    assert corner_set((0, 0, 0)).points() == [(1, 1, 1)]


def test_verify_corner_examples():
    c = closed_form_center(("B", "D", "R"), P11)
    assert verify_corner(P11, c) and verify_corner_fmax(P11, c)
    for lab in ("B", "D", "R"):
        assert bisector_height(lab, c.point[0], c.point[1], P11) == F(3, 4)
    # a D33 corner is not a corner of V_U at a D11 point
    wrong = closed_form_center(("UB", "BD", "UR"), P11)
    assert not verify_corner(P11, wrong)


def test_back_right_sites_are_source_images():
    s = back_right_sites(P11)
    forms = goal_closed_forms(*P11)
    for lab, v in s.items():
        assert tuple(v) == tuple(forms[lab][:3])


@given(delta_points(), st.sampled_from(CLOSED_FORM_TRIPLES))
def test_closed_forms_match_solver(abc, triple):
    c = closed_form_center(triple, abc)
    try:
        g = generic_center(triple, abc)
    except DegenerateError:
        return
    assert c.point == g


@given(delta_points())
def test_eq8_at_every_corner(abc):
    for c in corner_set(abc).corners:
        assert verify_corner(abc, c)
        assert verify_corner_fmax(abc, c)


@given(delta_points(), rationals(0, 1, 16), rationals(0, 1, 16))
def test_dominated_sites_never_win(abc, x, y):
    a, b, _ = abc
    if not (a <= x < 1 and b <= y < 1):
        return
    assert "violated" not in dominated_status(abc, x, y).values()


@given(delta_points(), rationals(0, 1, 8), rationals(0, 1, 8))
def test_f_max_is_max_of_heights(abc, x, y):
    try:
        hs = [bisector_height(k, x, y, abc) for k in ("D", "R", "B", "UR", "RD", "UB", "BD")]
    except ZeroDivisionError:
        return
    assert f_max(x, y, abc) >= max(hs)


@pytest.mark.parametrize("tag", sorted(CORNER_LISTS))
def test_theorem_candidates_are_corners(tag):
    assert set(THEOREM_CANDIDATES[tag]) <= set(CORNER_LISTS[tag])
    for abc in sample_region(tag, 5, random.Random(tag)):
        cs = corner_set(abc)
        assert cs.region.tag == tag
        pU = back_right_sites(abc)["U"]
        best = max(sqdist(c.point, pU) for c in cs.corners)
        winners = {c.triple for c in cs.corners if sqdist(c.point, pU) == best}
        assert winners <= set(THEOREM_CANDIDATES[tag])
