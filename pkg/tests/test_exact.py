from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cubefar.exact import (
    INSIDE,
    ON,
    OUTSIDE,
    DegenerateError,
    Hyperplane,
    circumcenter,
    det,
    format_point,
    incircle_side,
    insphere_side,
    orient,
    parse_point,
    parse_rat,
    reflect,
    sqdist,
)

from strategies import rationals

small = rationals(-2, 2, 12)
pt2 = st.tuples(small, small)
pt3 = st.tuples(small, small, small)


def test_orient_examples():
    assert orient([(0, 0), (1, 0), (0, 1)]) == 1
    assert orient([(0, 0), (1, 1), (2, 2)]) == 0
    assert orient([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]) == 1


@pytest.mark.parametrize("q, side", [((F(1, 2), F(1, 2)), INSIDE), ((1, 1), ON), ((2, 2), OUTSIDE)])
def test_incircle_examples(q, side):
    assert incircle_side((0, 0), (1, 0), (0, 1), q) == side
    assert incircle_side((0, 0), (0, 1), (1, 0), q) == side


@pytest.mark.parametrize("q, side", [((F(1, 4),) * 3, INSIDE), ((1, 1, 1), ON), ((2, 2, 2), OUTSIDE)])
def test_insphere_examples(q, side):
    assert insphere_side((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), q) == side


def test_degenerate_base_raises():
    with pytest.raises(DegenerateError):
        incircle_side((0, 0), (1, 1), (2, 2), (5, 0))


def test_circumcenter_examples():
    assert circumcenter([(0, 0), (2, 0), (0, 2)]) == (1, 1)
    assert circumcenter([(0, 0, 3), (0, 2, -1), (0, 0, -1), (2, 0, -1)]) == (1, 1, 1)
    assert circumcenter([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]) == (F(1, 2),) * 3


def test_reflect_examples():
    assert reflect(Hyperplane((1, 0, 0, 0), F(1, 2)), (F(9, 10), F(1, 5), F(3, 5), 0)) == (F(1, 10), F(1, 5), F(3, 5), 0)
    assert reflect(Hyperplane((1, -1, 0, 0), 0), (F(2, 5), F(1, 3), F(1, 6), 0)) == (F(1, 3), F(2, 5), F(1, 6), 0)


@given(st.tuples(small, small, small, small), st.tuples(small, small, small, small), small)
def test_reflect_is_involution(normal, p, off):
    if all(v == 0 for v in normal):
        return
    h = Hyperplane(normal, off)
    r = reflect(h, p)
    assert reflect(h, r) == p
    assert h.value(r) == -h.value(p)


@given(pt3, pt3, pt3)
def test_circumcenter_equidistant(a, b, c):
    if orient([a[:2], b[:2], c[:2]]) == 0:
        return
    o = circumcenter([a[:2], b[:2], c[:2]])
    assert sqdist(o, a[:2]) == sqdist(o, b[:2]) == sqdist(o, c[:2])


@given(pt2, pt2, pt2, pt2)
def test_incircle_permutation_invariant(a, b, c, d):
    if orient([a, b, c]) == 0:
        return
    side = incircle_side(a, b, c, d)
    for perm in ((b, c, a), (c, a, b), (b, a, c), (a, c, b)):
        assert incircle_side(*perm, d) == side


@given(pt3, pt3, pt3, pt3, pt3)
def test_insphere_matches_circumcenter(a, b, c, d, q):
    if orient([a, b, c, d]) == 0:
        return
    o = circumcenter([a, b, c, d])
    r, s = sqdist(o, a), sqdist(o, q)
    expected = INSIDE if s < r else ON if s == r else OUTSIDE
    assert insphere_side(a, b, c, d, q) == expected
    assert insphere_side(b, a, c, d, q) == expected


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3), small)
def test_det_row_scaling(rows, k):
    scaled = [[k * x for x in rows[0]]] + rows[1:]
    assert det(scaled) == k * det(rows)


@given(small, small, small)
def test_rational_field_identities(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x + y == y + x


def test_parse_point_round_trip():
    p = parse_point("2/5,1/3,0.25,0", 4)
    assert p == (F(2, 5), F(1, 3), F(1, 4), 0)
    assert parse_point(format_point(p)) == p


@pytest.mark.parametrize("text, pos", [("1/x,0,0,0", 1), ("0,0,a,0", 3), ("0,0,0,1/0", 4)])
def test_parse_point_reports_position(text, pos):
    with pytest.raises(ValueError, match=f"component {pos}"):
        parse_point(text, 4)


def test_parse_point_dimension():
    with pytest.raises(ValueError):
        parse_point("1,2,3", 4)
    with pytest.raises(ValueError):
        parse_rat("")
