"""Exact rational scalars, points and determinant-based predicates.

Every decision in this package is made on :class:`fractions.Fraction`
values.  Squared distances are compared instead of distances, so no square
root ever enters a predicate.  Floats appear only at output boundaries
(:func:`to_float` rounds to nearest binary64).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rat = Fraction
Point = tuple  # tuple[Fraction, ...]

INSIDE = "inside"
ON = "on"
OUTSIDE = "outside"


class DegenerateError(ValueError):
    """Input points are affinely dependent where independence is required."""


def rat(x) -> Fraction:
    """Convert ``x`` to an exact rational.

    Strings accept ``"num/den"`` and decimal notation (``"0.9"`` is 9/10).
    Floats are read through their shortest repr, so ``0.9`` also gives 9/10.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def point(*coords) -> Point:
    if len(coords) == 1 and not isinstance(coords[0], (int, str, Fraction, float)):
        coords = tuple(coords[0])
    return tuple(rat(c) for c in coords)


def format_rat(x: Fraction) -> str:
    x = rat(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_point(p: Iterable) -> str:
    return ",".join(format_rat(c) for c in p)


def parse_rat(text: str, where: str = "") -> Fraction:
    s = text.strip()
    if not s:
        raise ValueError(f"empty rational{where}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed rational {text!r}{where}: {exc}") from None


def parse_point(text: str, dim: int | None = None) -> Point:
    """Parse ``"x,y,z,w"`` with components like ``2/5``; errors name the position."""
    parts = text.split(",")
    if dim is not None and len(parts) != dim:
        raise ValueError(f"expected {dim} components, got {len(parts)} in {text!r}")
    return tuple(parse_rat(s, f" at component {i + 1}") for i, s in enumerate(parts))


def to_float(x) -> float:
    """Nearest binary64 value (``Fraction.__float__`` rounds correctly)."""
    return float(x)


def sub(p: Sequence, q: Sequence) -> Point:
    return tuple(a - b for a, b in zip(p, q))


def dot(p: Sequence, q: Sequence):
    return sum((a * b for a, b in zip(p, q)), Fraction(0))


def sqdist(p: Sequence, q: Sequence):
    return sum(((a - b) ** 2 for a, b in zip(p, q)), Fraction(0))


def sign(x) -> int:
    return (x > 0) - (x < 0)


def det(rows: Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction Gaussian elimination."""
    m = [[rat(v) for v in row] for row in rows]
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant needs a square matrix")
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            result = -result
        pv = m[col][col]
        result *= pv
        for r in range(col + 1, n):
            f = m[r][col]
            if f:
                f /= pv
                row_r, row_c = m[r], m[col]
                for k in range(col + 1, n):
                    row_r[k] -= f * row_c[k]
    return result


def solve(a: Sequence[Sequence], b: Sequence) -> Point:
    """Solve ``a x = b`` exactly; raises :class:`DegenerateError` if singular."""
    n = len(a)
    m = [[rat(v) for v in row] + [rat(bv)] for row, bv in zip(a, b)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise DegenerateError("singular linear system")
        m[col], m[pivot] = m[pivot], m[col]
        pv = m[col][col]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col] / pv
                row_r, row_c = m[r], m[col]
                for k in range(col, n + 1):
                    row_r[k] -= f * row_c[k]
    return tuple(m[i][n] / m[i][i] for i in range(n))


def _check_dims(points: Sequence[Sequence], count: int | None = None) -> int:
    dims = {len(p) for p in points}
    if len(dims) != 1:
        raise ValueError(f"dimension mismatch: {sorted(dims)}")
    d = dims.pop()
    if count is not None and len(points) != count:
        raise ValueError(f"expected {count} points, got {len(points)}")
    return d


def orient(points: Sequence[Sequence]) -> int:
    """Sign of det(p1 - p0, ..., pd - p0) for d+1 points in d dimensions."""
    d = _check_dims(points)
    if d not in (2, 3) or len(points) != d + 1:
        raise ValueError(f"orient needs d+1 points with d in (2, 3), got {len(points)} in {d}D")
    p0 = points[0]
    return sign(det([sub(p, p0) for p in points[1:]]))


def outcircle(p1, p2, p3, p4) -> Fraction:
    """The 4x4 lifted determinant with rows (x, y, 1, x^2 + y^2)."""
    return det([(p[0], p[1], 1, p[0] ** 2 + p[1] ** 2) for p in (p1, p2, p3, p4)])


def outsphere(p1, p2, p3, p4, p5) -> Fraction:
    """The 5x5 lifted determinant with rows (x, y, z, 1, x^2 + y^2 + z^2)."""
    return det([(p[0], p[1], p[2], 1, p[0] ** 2 + p[1] ** 2 + p[2] ** 2) for p in (p1, p2, p3, p4, p5)])


def _homog_det(points) -> Fraction:
    return det([tuple(p) + (1,) for p in points])


def _side(value) -> str:
    return INSIDE if value > 0 else (OUTSIDE if value < 0 else ON)


def incircle_side(p1, p2, p3, p4) -> str:
    """Position of ``p4`` relative to the circle through ``p1, p2, p3``.

    Uses det(p1, p2, p3) * incircle(p1, p2, p3, p4) with incircle = -outcircle,
    which does not depend on the orientation of the base triangle.
    """
    pts = [point(p) for p in (p1, p2, p3, p4)]
    _check_dims(pts)
    if len(pts[0]) != 2:
        raise ValueError("incircle_side works in the plane")
    base = _homog_det(pts[:3])
    if base == 0:
        raise DegenerateError("collinear base triple")
    return _side(base * -outcircle(*pts))


def insphere_side(p1, p2, p3, p4, p5) -> str:
    """Position of ``p5`` relative to the sphere through ``p1..p4``."""
    pts = [point(p) for p in (p1, p2, p3, p4, p5)]
    _check_dims(pts)
    if len(pts[0]) != 3:
        raise ValueError("insphere_side works in 3-space")
    base = _homog_det(pts[:4])
    if base == 0:
        raise DegenerateError("coplanar base quadruple")
    return _side(base * -outsphere(*pts))


def circumcenter(points: Sequence[Sequence]) -> Point:
    """Point equidistant from d+1 affinely independent points in d dimensions."""
    pts = [point(p) for p in points]
    d = _check_dims(pts)
    if len(pts) != d + 1:
        raise ValueError(f"circumcenter needs {d + 1} points in {d}D, got {len(pts)}")
    p0 = pts[0]
    n0 = dot(p0, p0)
    rows = [tuple(2 * (a - b) for a, b in zip(p, p0)) for p in pts[1:]]
    rhs = [dot(p, p) - n0 for p in pts[1:]]
    try:
        return solve(rows, rhs)
    except DegenerateError:
        raise DegenerateError("affinely dependent points have no circumcenter") from None


def circumcenter_affine(points: Sequence[Sequence]) -> Point:
    """Circumcenter of k+1 independent points inside their own affine hull.

    Works in any ambient dimension, e.g. for a triangle sitting in 3-space.
    """
    pts = [point(p) for p in points]
    _check_dims(pts)
    p0 = pts[0]
    edges = [sub(p, p0) for p in pts[1:]]
    gram = [[2 * dot(u, v) for v in edges] for u in edges]
    rhs = [dot(u, u) for u in edges]
    try:
        lam = solve(gram, rhs)
    except DegenerateError:
        raise DegenerateError("affinely dependent points have no circumcenter") from None
    return tuple(p0[k] + sum((l * e[k] for l, e in zip(lam, edges)), Fraction(0)) for k in range(len(p0)))


@dataclass(frozen=True)
class Hyperplane:
    """The set {x : <normal, x> = offset}."""

    normal: Point
    offset: Fraction

    def __post_init__(self):
        object.__setattr__(self, "normal", point(self.normal))
        object.__setattr__(self, "offset", rat(self.offset))
        if all(v == 0 for v in self.normal):
            raise ValueError("hyperplane normal must be nonzero")

    def value(self, p: Sequence) -> Fraction:
        return dot(self.normal, p) - self.offset

    def contains(self, p: Sequence) -> bool:
        return self.value(p) == 0


def reflect(h: Hyperplane, p: Sequence) -> Point:
    p = point(p)
    if len(p) != len(h.normal):
        raise ValueError("dimension mismatch")
    s = 2 * h.value(p) / dot(h.normal, h.normal)
    return tuple(x - s * n for x, n in zip(p, h.normal))
