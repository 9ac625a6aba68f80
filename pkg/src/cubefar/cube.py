"""Facet complex of the n-cube boundary, unfolding maps and source images.

A facet is a pair ``(axis, side)``: the set of points whose ``axis``
coordinate equals ``side`` (0 or 1).  For the 3-cube and 4-cube the usual
letters are used:

    L x=0   R x=1   F y=0   B y=1   D z=0   U z=1   S w=0   G w=1

Charts: the facet ``(axis, side)`` is identified with the unit cube of one
dimension less by deleting coordinate ``axis``.  For the goal facet G this
is the identification (x, y, z, 1) ~ (x, y, z).

Unfolding maps are affine isometries with integer matrices (signed
permutations) and integer offsets, so composing them stays exact and cheap.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .exact import Point, point, rat, sqdist

LETTERS = "LRFBDUSG"
_AXES = {"L": (0, 0), "R": (0, 1), "F": (1, 0), "B": (1, 1), "D": (2, 0), "U": (2, 1), "S": (3, 0), "G": (3, 1)}

HALF = Fraction(1, 2)
ZERO = Fraction(0)
ONE = Fraction(1)


class DomainError(ValueError):
    """A point is outside the domain an operation is defined on."""


def facet(label, n: int = 4) -> tuple[int, int]:
    """Resolve a letter (or an ``(axis, side)`` pair) to ``(axis, side)``."""
    if isinstance(label, tuple):
        axis, side = label
    else:
        if label not in _AXES:
            raise ValueError(f"unknown facet label {label!r}")
        axis, side = _AXES[label]
    if axis >= n:
        raise ValueError(f"facet {label!r} does not exist on the {n}-cube")
    return axis, side


def facet_name(f: tuple[int, int], n: int = 4) -> str:
    if n <= 4:
        for k, v in _AXES.items():
            if v == f:
                return k
    return f"x{f[0]}={f[1]}"


def facets(n: int = 4) -> list[tuple[int, int]]:
    return [(axis, side) for axis in range(n) for side in (0, 1)]


def adjacent(f1, f2, n: int = 4) -> bool:
    return facet(f1, n)[0] != facet(f2, n)[0]


def on_boundary(p: Sequence) -> bool:
    return all(0 <= x <= 1 for x in p) and any(x == 0 or x == 1 for x in p)


def facet_of(p: Sequence) -> set[str] | set[tuple[int, int]]:
    """All facets containing a boundary point (letters for n <= 4)."""
    p = point(p)
    n = len(p)
    if not on_boundary(p):
        raise DomainError(f"{p} is not on the boundary of the {n}-cube")
    out = {(k, int(x)) for k, x in enumerate(p) if x == 0 or x == 1}
    if n <= 4:
        return {facet_name(f, n) for f in out}
    return out


def chart(p: Sequence, f) -> Point:
    """Coordinates of ``p`` in the chart of facet ``f`` (drop its axis)."""
    axis = f[0] if isinstance(f, tuple) else _AXES[f][0]
    return tuple(x for k, x in enumerate(p) if k != axis)


def unchart(y: Sequence, f, n: int | None = None) -> Point:
    n = n if n is not None else len(y) + 1
    axis, side = facet(f, n)
    out = list(y)
    out.insert(axis, Fraction(side))
    return tuple(out)


@dataclass(frozen=True)
class Isometry:
    """The affine map x -> matrix @ x + offset (integer, orthogonal matrix)."""

    matrix: tuple
    offset: tuple

    @classmethod
    def identity(cls, n: int) -> "Isometry":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), (0,) * n)

    @property
    def dim(self) -> int:
        return len(self.offset)

    def __call__(self, p: Sequence) -> tuple:
        return tuple(sum(m * x for m, x in zip(row, p)) + t for row, t in zip(self.matrix, self.offset))

    def compose(self, other: "Isometry") -> "Isometry":
        """``self o other``: apply ``other`` first."""
        n = self.dim
        m = tuple(
            tuple(sum(self.matrix[i][k] * other.matrix[k][j] for k in range(n)) for j in range(n))
            for i in range(n)
        )
        t = tuple(sum(self.matrix[i][k] * other.offset[k] for k in range(n)) + self.offset[i] for i in range(n))
        return Isometry(m, t)

    def inverse(self) -> "Isometry":
        n = self.dim
        mt = tuple(tuple(self.matrix[j][i] for j in range(n)) for i in range(n))
        t = tuple(-sum(mt[i][k] * self.offset[k] for k in range(n)) for i in range(n))
        return Isometry(mt, t)


@lru_cache(maxsize=None)
def _unfold_step(f: tuple[int, int], g: tuple[int, int], n: int) -> Isometry:
    i, si = f
    j, sj = g
    if i == j:
        raise ValueError(f"facets {facet_name(f, n)} and {facet_name(g, n)} are not adjacent")
    ei, ej = 1 - 2 * si, 1 - 2 * sj
    k = ei * ej
    # Rotation by 90 degrees in the (i, j) plane about the shared face,
    # turning the far facet outward.
    m = [[int(r == c) for c in range(n)] for r in range(n)]
    t = [0] * n
    m[i][i] = 0
    m[j][j] = 0
    m[i][j] = k
    m[j][i] = -k
    t[i] = si - k * sj
    t[j] = sj + k * si
    return Isometry(tuple(tuple(r) for r in m), tuple(t))


def unfold_step(f, g, n: int = 4) -> Isometry:
    """phi_{f g}: aff(g) -> aff(f) for adjacent facets, fixing f & g."""
    return _unfold_step(facet(f, n), facet(g, n), n)


def parse_seq(seq, n: int = 4) -> tuple[tuple[int, int], ...]:
    items = list(seq) if not isinstance(seq, str) else list(seq)
    if not items:
        raise ValueError("empty facet sequence")
    fs = tuple(facet(x, n) for x in items)
    for a, b in zip(fs, fs[1:]):
        if a == b:
            raise ValueError("facet sequence repeats a facet immediately")
        if a[0] == b[0]:
            raise ValueError(f"{facet_name(a, n)} and {facet_name(b, n)} are not adjacent")
    return fs


@lru_cache(maxsize=None)
def _unfold_seq(fs: tuple, n: int) -> Isometry:
    out = Isometry.identity(n)
    for a, b in zip(fs, fs[1:]):
        out = out.compose(_unfold_step(a, b, n))
    return out


def unfold_seq(seq, n: int = 4) -> Isometry:
    """phi_L = phi_{F1 F2} o ... o phi_{F(l-1) Fl}: aff(last) -> aff(first)."""
    return _unfold_seq(parse_seq(seq, n), n)


# ---------------------------------------------------------------------------
# Hyperoctahedral symmetries and the fundamental domain


@dataclass(frozen=True, order=True)
class Symmetry:
    """y[k] = 1 - x[perm[k]] if flip[k] else x[perm[k]]."""

    perm: tuple
    flip: tuple

    def __call__(self, p: Sequence) -> tuple:
        return tuple((1 - p[j]) if fl else p[j] for j, fl in zip(self.perm, self.flip))

    def inverse(self) -> "Symmetry":
        n = len(self.perm)
        perm = [0] * n
        flip = [False] * n
        for k, (j, fl) in enumerate(zip(self.perm, self.flip)):
            perm[j] = k
            flip[j] = fl
        return Symmetry(tuple(perm), tuple(flip))

    def compose(self, other: "Symmetry") -> "Symmetry":
        """``self o other``."""
        perm = tuple(other.perm[j] for j in self.perm)
        flip = tuple(fl != other.flip[j] for j, fl in zip(self.perm, self.flip))
        return Symmetry(perm, flip)

    @classmethod
    def identity(cls, n: int) -> "Symmetry":
        return cls(tuple(range(n)), (False,) * n)

    def describe(self) -> str:
        names = "xyzw" if len(self.perm) <= 4 else [f"x{i}" for i in range(len(self.perm))]
        return ",".join(("1-" if fl else "") + names[j] for j, fl in zip(self.perm, self.flip))


@lru_cache(maxsize=None)
def symmetry_group(n: int) -> tuple[Symmetry, ...]:
    """All 2^n n! symmetries in lexicographic (perm, flip) order."""
    return tuple(
        Symmetry(perm, flip)
        for perm in itertools.permutations(range(n))
        for flip in itertools.product((False, True), repeat=n)
    )


def in_fundamental(p: Sequence) -> bool:
    """0 <= x[n-2] <= ... <= x[0] <= 1/2 and x[n-1] = 0."""
    if p[-1] != 0:
        return False
    head = p[:-1]
    return all(0 <= x for x in head) and head[0] <= HALF and all(a >= b for a, b in zip(head, head[1:]))


def fundamental_image(p: Sequence) -> tuple:
    """The representative of ``p``'s orbit in the fundamental domain."""
    if not on_boundary(p):
        raise DomainError(f"{tuple(p)} is not on the cube boundary")
    folded = sorted((min(x, 1 - x) for x in p), reverse=True)
    # the smallest folded value is 0 because p lies on a facet
    return tuple(folded[:-1]) + (folded[-1],)


def reduce_point(p: Sequence) -> tuple[tuple, Symmetry]:
    """Fundamental representative and the lexicographically least witness."""
    p = point(p)
    target = fundamental_image(p)
    for g in symmetry_group(len(p)):
        if g(p) == target:
            return target, g
    raise AssertionError("no symmetry reaches the fundamental image")  # pragma: no cover


def stabilizer(p: Sequence) -> tuple[Symmetry, ...]:
    p = tuple(p)
    return tuple(g for g in symmetry_group(len(p)) if g(p) == p)


@dataclass(frozen=True)
class DeltaPoint:
    """Source point (a, b, c, 0) with 0 <= c <= b <= a <= 1/2."""

    a: Fraction
    b: Fraction
    c: Fraction
    witness: Symmetry = field(default_factory=lambda: Symmetry.identity(4))

    def __post_init__(self):
        a, b, c = rat(self.a), rat(self.b), rat(self.c)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        if not (0 <= c <= b <= a <= HALF):
            raise DomainError(f"({a}, {b}, {c}) is outside 0 <= c <= b <= a <= 1/2")

    @property
    def point(self) -> Point:
        return (self.a, self.b, self.c, ZERO)

    @property
    def abc(self) -> tuple:
        return (self.a, self.b, self.c)

    def surface_point(self) -> Point:
        return self.witness.inverse()(self.point)


def delta(a, b, c) -> DeltaPoint:
    return DeltaPoint(rat(a), rat(b), rat(c))


def reduce_to_fundamental(p: Sequence) -> DeltaPoint:
    p = point(p)
    if len(p) != 4:
        raise ValueError("reduce_to_fundamental works on the 4-cube")
    target, g = reduce_point(p)
    return DeltaPoint(target[0], target[1], target[2], g)


def as_delta(p) -> DeltaPoint:
    if isinstance(p, DeltaPoint):
        return p
    p = point(p)
    if len(p) == 3:
        return DeltaPoint(*p)
    if len(p) == 4 and p[3] == 0 and in_fundamental(p):
        return DeltaPoint(*p[:3])
    raise DomainError(f"{p} is not a point of the fundamental domain")


# ---------------------------------------------------------------------------
# Source images


@dataclass(frozen=True)
class SourceImage:
    label: str
    seq: tuple
    point: Point


GOAL_LABELS = (
    "U", "D",
    "UF", "F", "FD",
    "UB", "B", "BD",
    "UL", "L", "LD",
    "UR", "R", "RD",
    "ULF", "LF", "LFD",
    "URF", "RF", "RFD",
    "UBL", "BL", "BLD",
    "UBR", "BR", "BRD",
)


def goal_closed_forms(a, b, c) -> dict[str, tuple]:
    """The 26 images p_L in aff(G), as (x, y, z, 1)."""
    return {
        "U": (a, b, 3 - c, 1),
        "D": (a, b, -1 - c, 1),
        "UF": (a, -1 + c, 2 + b, 1),
        "F": (a, -1 - b, c, 1),
        "FD": (a, -1 - c, -b, 1),
        "UB": (a, 2 - c, 3 - b, 1),
        "B": (a, 3 - b, c, 1),
        "BD": (a, 2 + c, -1 + b, 1),
        "UL": (-1 + c, b, 2 + a, 1),
        "L": (-1 - a, b, c, 1),
        "LD": (-1 - c, b, -a, 1),
        "UR": (2 - c, b, 3 - a, 1),
        "R": (3 - a, b, c, 1),
        "RD": (2 + c, b, -1 + a, 1),
        "ULF": (-1 + c, -a, 2 + b, 1),
        "LF": (-1 - b, -a, c, 1),
        "LFD": (-1 - c, -a, -b, 1),
        "URF": (2 - c, -1 + a, 2 + b, 1),
        "RF": (2 + b, -1 + a, c, 1),
        "RFD": (2 + c, -1 + a, -b, 1),
        "UBL": (-1 + b, 2 - c, 2 + a, 1),
        "BL": (-1 + b, 2 + a, c, 1),
        "BLD": (-1 + b, 2 + c, -a, 1),
        "UBR": (2 - b, 2 - c, 3 - a, 1),
        "BR": (2 - b, 3 - a, c, 1),
        "BRD": (2 - b, 2 + c, -1 + a, 1),
    }


def source_images_4cube(p) -> list[SourceImage]:
    """The 26 source images of ``p`` in aff(G)."""
    dp = as_delta(p)
    forms = goal_closed_forms(dp.a, dp.b, dp.c)
    return [
        SourceImage(lab, ("G",) + tuple(lab) + ("S",), tuple(rat(v) for v in forms[lab]))
        for lab in GOAL_LABELS
    ]


CUBE3_LABELS = ("F", "B", "BL", "L", "LF", "BR", "R", "RF")


def cube3_closed_forms(a, b) -> dict[str, tuple]:
    return {
        "F": (a, -1 - b, 1),
        "B": (a, 3 - b, 1),
        "BL": (-1 + b, 2 + a, 1),
        "L": (-1 - a, b, 1),
        "LF": (-1 - b, -a, 1),
        "BR": (2 - b, 3 - a, 1),
        "R": (3 - a, b, 1),
        "RF": (2 + b, -1 + a, 1),
    }


def check_cube3_domain(a, b) -> tuple[Fraction, Fraction]:
    a, b = rat(a), rat(b)
    if not (0 <= b <= a <= HALF):
        raise DomainError(f"({a}, {b}) is outside 0 <= b <= a <= 1/2")
    return a, b


def source_images_3cube(p) -> list[SourceImage]:
    """The 8 source images of p = (a, b, 0) on D, placed in aff(U)."""
    a, b = check_cube3_domain(*tuple(p)[:2])
    forms = cube3_closed_forms(a, b)
    return [
        SourceImage(lab, ("U",) + tuple(lab) + ("D",), tuple(rat(v) for v in forms[lab]))
        for lab in CUBE3_LABELS
    ]


# Facet sequences (from the facet down to S) generating src(F) for p in Delta.
FACET_SEQUENCES = {
    "S": ("S",),
    "D": ("DS",),
    "F": ("FS", "FDS"),
    "L": ("LS", "LDS", "LFS", "LFDS"),
    "R": ("RS", "RDS", "RFS", "RFDS"),
    "B": ("BS", "BDS", "BLS", "BLDS", "BRS", "BRDS"),
    "U": ("US", "UFS", "UBS", "ULS", "ULFS", "UBLS", "URS", "URFS", "UBRS"),
    "G": tuple("G" + lab + "S" for lab in GOAL_LABELS),
}


def src_facet(p, f: str) -> list[SourceImage]:
    """src(f): images of p in aff(f) whose minimum distance gives dist(p, .)."""
    dp = as_delta(p)
    if f == "G":
        return source_images_4cube(dp)
    out = []
    for seq in FACET_SEQUENCES[f]:
        img = unfold_seq(seq)(dp.point)
        label = seq[:-1] if len(seq) > 1 else seq
        out.append(SourceImage(label, tuple(seq), img))
    return out


def src_all_facets(p) -> dict[str, list[SourceImage]]:
    dp = as_delta(p)
    return {f: src_facet(dp, f) for f in "SDFLRBUG"}


def dist_to_goal(p, q) -> tuple[Fraction, tuple[str, ...]]:
    """Squared intrinsic distance from p in Delta to q in G (chart coords).

    Returns the squared distance and the labels of all minimizing images.
    """
    dp = as_delta(p)
    q = point(q)
    if len(q) == 4:
        if q[3] != 1:
            raise DomainError(f"{q} is not on facet G")
        q = q[:3]
    if len(q) != 3 or not all(0 <= x <= 1 for x in q):
        raise DomainError(f"{q} is not in the unit cube of facet G")
    forms = goal_closed_forms(dp.a, dp.b, dp.c)
    best = None
    labels: list[str] = []
    for lab in GOAL_LABELS:
        v = forms[lab]
        d = (v[0] - q[0]) ** 2 + (v[1] - q[1]) ** 2 + (v[2] - q[2]) ** 2
        if best is None or d < best:
            best, labels = d, [lab]
        elif d == best:
            labels.append(lab)
    return rat(best), tuple(labels)


class InconsistentDistance(AssertionError):
    """Facets sharing a point disagree on its distance."""


def dist_on_surface_detail(p, q) -> tuple[Fraction, dict[str, Fraction]]:
    dp = as_delta(p)
    q = point(q)
    per_facet = {}
    for f in sorted(facet_of(q)):
        per_facet[f] = min(sqdist(img.point, q) for img in src_facet(dp, f))
    values = set(per_facet.values())
    if len(values) != 1:
        raise InconsistentDistance(f"facets disagree at {q}: {per_facet}")
    return values.pop(), per_facet


def dist_on_surface(p, q) -> Fraction:
    """Squared intrinsic distance from p in Delta to any boundary point q."""
    return dist_on_surface_detail(p, q)[0]


def dist4(p, q) -> Fraction:
    """Squared intrinsic distance between two arbitrary points of the 4-cube boundary."""
    dp = reduce_to_fundamental(p)
    return dist_on_surface(dp, dp.witness(point(q)))


def iota(p: Sequence) -> tuple:
    return tuple(1 - x for x in p)


def iter_delta_grid(step, include=None) -> Iterable[DeltaPoint]:
    """Grid points of Delta with the given step (a divisor of 1/2)."""
    step = rat(step)
    m = HALF / step
    if m.denominator != 1:
        raise ValueError("grid step must divide 1/2")
    m = int(m)
    for i in range(m + 1):
        for j in range(i + 1):
            for k in range(j + 1):
                dp = DeltaPoint(i * step, j * step, k * step)
                if include is None or include(dp):
                    yield dp
