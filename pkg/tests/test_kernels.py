from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cubefar import kernels
from cubefar._kernels_py import nearest_sqdist as numpy_kernel

backends = ["python"] + (["cython"] if kernels._compiled is not None else [])
ints = st.integers(-1000, 1000)


def brute(sites, points):
    d = [[sum((a - b) ** 2 for a, b in zip(s, q)) for s in sites] for q in points]
    return [min(r) for r in d], [r.index(min(r)) for r in d]


@pytest.mark.parametrize("backend", backends)
@given(st.lists(st.tuples(ints, ints, ints), min_size=1, max_size=20),
       st.lists(st.tuples(ints, ints, ints), min_size=1, max_size=50))
def test_backends_match_brute_force(backend, sites, points):
    mins, args = kernels.nearest_sqdist_int(sites, points, backend)
    ref_min, ref_arg = brute(sites, points)
    assert list(mins) == ref_min
    assert list(args) == ref_arg


def test_compiled_kernel_is_built():
    assert kernels.BACKEND in ("cython", "python")
    if kernels._compiled is None:
        pytest.skip("extension not built")
    s = np.array([[0, 0], [10, 0]], dtype=np.int64)
    q = np.array([[4, 0], [6, 0], [5, 0]], dtype=np.int64)
    mins, args = kernels._compiled.nearest_sqdist(s, q)
    assert list(mins) == [16, 16, 25] and list(args) == [0, 1, 0]


def test_huge_coordinates_stay_exact():
    big = 2**40
    sites = [(0, 0), (big, big)]
    pts = [(big - 1, big), (1, 0)]
    mins, args = kernels.nearest_sqdist_int(sites, pts)
    assert [int(m) for m in mins] == [1, 1]
    assert list(args) == [1, 0]


def test_rational_wrapper():
    mins, args = kernels.nearest_sqdist([(F(1, 3), 0)], [(0, 0), (F(1, 2), F(1, 2))])
    assert mins == [F(1, 9), F(1, 36) + F(1, 4)] and args == [0, 0]


def test_numpy_kernel_ties_take_first_site():
    mins, args = numpy_kernel(np.array([[0], [2]]), np.array([[1]]))
    assert list(mins) == [1] and list(args) == [0]
