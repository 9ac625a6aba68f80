"""Backend selection for the exact nearest-site sweep.

The compiled extension is used when it imports; ``CUBEFAR_BACKEND=python``
forces the numpy fallback.  Inputs are rational coordinates, scaled to a
common integer grid so every comparison stays exact.  Coordinates too large
for int64 squared sums go through object arrays (Python ints).
"""

from __future__ import annotations

import math
import os
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _kernels_py

BACKEND = "python"
_compiled = None
if os.environ.get("CUBEFAR_BACKEND", "").lower() != "python":
    try:
        from . import _kernels as _compiled  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        _compiled = None

_INT64_MAX = 2**63 - 1


def _fits_int64(bound: int, dim: int) -> bool:
    return dim * (2 * bound) ** 2 <= _INT64_MAX


def _as_int_array(rows) -> np.ndarray:
    if isinstance(rows, np.ndarray) and rows.dtype == np.int64:
        return rows
    return np.array(rows, dtype=object)


def nearest_sqdist_int(sites, points, backend: str | None = None):
    """Min squared distance and argmin site for integer coordinates."""
    backend = backend or BACKEND
    s, q = _as_int_array(sites), _as_int_array(points)
    if q.size == 0:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    dim = s.shape[1]
    bound = max(int(np.abs(s).max()), int(np.abs(q).max()))
    if not _fits_int64(bound, dim):
        return _kernels_py.nearest_sqdist(s.astype(object), q.astype(object))
    s = np.ascontiguousarray(s, dtype=np.int64).reshape(-1, dim)
    q = np.ascontiguousarray(q, dtype=np.int64).reshape(-1, dim)
    if backend == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernel is not available")
        return _compiled.nearest_sqdist(s, q)
    return _kernels_py.nearest_sqdist(s, q)


def common_scale(values) -> int:
    scale = 1
    for v in values:
        scale = math.lcm(scale, Fraction(v).denominator)
    return scale


def nearest_sqdist(sites: Sequence[Sequence], points: Sequence[Sequence], backend: str | None = None):
    """Exact min squared distances (as Fractions) and argmin site indices."""
    flat = [x for row in sites for x in row] + [x for row in points for x in row]
    scale = common_scale(flat)

    def scaled(rows):
        return [tuple(int(Fraction(x) * scale) for x in r) for r in rows]

    mins, args = nearest_sqdist_int(scaled(sites), scaled(points), backend)
    den = scale * scale
    return [Fraction(int(m), den) for m in mins], [int(a) for a in args]


def argmax_nearest(sites, points, backend: str | None = None):
    """Indices of the points farthest from their nearest site, and that squared distance."""
    flat = [x for row in sites for x in row] + [x for row in points for x in row]
    scale = common_scale(flat)
    s = [tuple(int(Fraction(x) * scale) for x in r) for r in sites]
    q = [tuple(int(Fraction(x) * scale) for x in r) for r in points]
    mins, _ = nearest_sqdist_int(s, q, backend)
    top = max(int(m) for m in mins)
    idx = [i for i, m in enumerate(mins) if int(m) == top]
    return idx, Fraction(top, scale * scale)
