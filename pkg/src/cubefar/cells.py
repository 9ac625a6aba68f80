"""Exact Voronoi cells of source images, source unfoldings and the star
unfolding of the 3-cube.

Cells are convex polytopes obtained by clipping the unit cube (or square)
with bisector half-spaces; every coordinate stays a Fraction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cube import (
    FACET_SEQUENCES,
    as_delta,
    check_cube3_domain,
    chart,
    cube3_closed_forms,
    facet,
    src_facet,
    unchart,
    unfold_seq,
)
from .exact import format_point, format_rat, rat, sqdist

# ---------------------------------------------------------------------------
# Convex polygons (2D)


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull_2d(points) -> list[tuple]:
    """Counter-clockwise hull without collinear points (monotone chain)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for q in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], q) <= 0:
            lower.pop()
        lower.append(q)
    for q in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], q) <= 0:
            upper.pop()
        upper.append(q)
    return lower[:-1] + upper[:-1]


def polygon_area(poly: Sequence) -> Fraction:
    """Signed shoelace area (positive for counter-clockwise)."""
    s = Fraction(0)
    for i in range(len(poly)):
        (x0, y0), (x1, y1) = poly[i][:2], poly[(i + 1) % len(poly)][:2]
        s += x0 * y1 - x1 * y0
    return s / 2


def _clip_polygon(poly, a, b):
    """Sutherland-Hodgman step for a . x <= b."""
    out = []
    for i in range(len(poly)):
        p, q = poly[i], poly[(i + 1) % len(poly)]
        hp = sum(x * y for x, y in zip(a, p)) - b
        hq = sum(x * y for x, y in zip(a, q)) - b
        if hp <= 0:
            out.append(p)
        if (hp < 0 < hq) or (hq < 0 < hp):
            t = hp / (hp - hq)
            out.append(tuple(x + t * (y - x) for x, y in zip(p, q)))
    # drop consecutive duplicates
    clean = []
    for v in out:
        if not clean or clean[-1] != v:
            clean.append(v)
    if len(clean) > 1 and clean[0] == clean[-1]:
        clean.pop()
    return clean


def clip_square(halfspaces) -> list[tuple]:
    poly = [(Fraction(0), Fraction(0)), (Fraction(1), Fraction(0)), (Fraction(1), Fraction(1)), (Fraction(0), Fraction(1))]
    for a, b in halfspaces:
        poly = _clip_polygon(poly, a, b)
        if len(poly) < 3:
            return []
    return poly if polygon_area(poly) != 0 else []


# ---------------------------------------------------------------------------
# Convex polytopes (3D)


@dataclass
class Polytope:
    """Convex polytope as a list of convex polygonal faces (vertex tuples)."""

    faces: list

    def vertices(self) -> list[tuple]:
        out = []
        for f in self.faces:
            for v in f:
                if v not in out:
                    out.append(v)
        return out

    def volume(self) -> Fraction:
        vs = self.vertices()
        if len(vs) < 4:
            return Fraction(0)
        c = tuple(sum(v[k] for v in vs) / len(vs) for k in range(3))
        total = Fraction(0)
        for f in self.faces:
            for i in range(1, len(f) - 1):
                total += abs(_det3(_sub(f[0], c), _sub(f[i], c), _sub(f[i + 1], c)))
        return total / 6

    def mesh(self) -> tuple[list, list]:
        vs = self.vertices()
        index = {v: i for i, v in enumerate(vs)}
        return vs, [[index[v] for v in f] for f in self.faces]


def _sub(p, q):
    return tuple(x - y for x, y in zip(p, q))


def _det3(u, v, w):
    return (
        u[0] * (v[1] * w[2] - v[2] * w[1])
        - u[1] * (v[0] * w[2] - v[2] * w[0])
        + u[2] * (v[0] * w[1] - v[1] * w[0])
    )


def unit_cube() -> Polytope:
    z, o = Fraction(0), Fraction(1)
    c = {(i, j, k): (Fraction(i), Fraction(j), Fraction(k)) for i in (0, 1) for j in (0, 1) for k in (0, 1)}
    faces = [
        [c[0, 0, 0], c[0, 1, 0], c[1, 1, 0], c[1, 0, 0]],
        [c[0, 0, 1], c[1, 0, 1], c[1, 1, 1], c[0, 1, 1]],
        [c[0, 0, 0], c[1, 0, 0], c[1, 0, 1], c[0, 0, 1]],
        [c[0, 1, 0], c[0, 1, 1], c[1, 1, 1], c[1, 1, 0]],
        [c[0, 0, 0], c[0, 0, 1], c[0, 1, 1], c[0, 1, 0]],
        [c[1, 0, 0], c[1, 1, 0], c[1, 1, 1], c[1, 0, 1]],
    ]
    del z, o
    return Polytope(faces)


def _order_cap(points, a) -> list[tuple]:
    """Order coplanar points of the cutting plane as a convex polygon."""
    drop = max(range(3), key=lambda k: abs(a[k]))
    keep = [k for k in range(3) if k != drop]
    lift = {}
    for p in points:
        lift[(p[keep[0]], p[keep[1]])] = p
    hull = convex_hull_2d(list(lift))
    return [lift[q] for q in hull]


def clip_polytope(poly: Polytope, a, b) -> Polytope:
    """Intersection with a . x <= b; an empty or flat result has no faces."""
    vals = {v: sum(x * y for x, y in zip(a, v)) - b for v in poly.vertices()}
    if all(h <= 0 for h in vals.values()):
        return poly
    if all(h >= 0 for h in vals.values()):
        return Polytope([])
    faces = []
    cap = []
    for f in poly.faces:
        g = _clip_polygon(f, a, b)
        for v in g:
            if sum(x * y for x, y in zip(a, v)) == b and v not in cap:
                cap.append(v)
        if len(g) >= 3:
            faces.append(g)
    if len(cap) >= 3:
        ordered = _order_cap(cap, a)
        if len(ordered) >= 3:
            faces.append(ordered)
    out = Polytope(faces)
    return out if out.volume() > 0 else Polytope([])


def clip_cube(halfspaces) -> Polytope:
    poly = unit_cube()
    for a, b in halfspaces:
        poly = clip_polytope(poly, a, b)
        if not poly.faces:
            break
    return poly


def bisector_halfspace(s, t):
    """|w - s|^2 <= |w - t|^2 as a . w <= b."""
    a = tuple(2 * (y - x) for x, y in zip(s, t))
    b = sum(y * y for y in t) - sum(x * x for x in s)
    return a, b


# ---------------------------------------------------------------------------
# Cell complexes


@dataclass
class Cell:
    facet: str
    label: str
    vertices: list  # exact points (chart coordinates of the complex)
    faces: list  # index lists (3D cells) or [] for polygons
    measure: Fraction  # volume or area
    aliases: tuple = ()  # labels of coincident source images sharing the cell

    def to_json(self) -> dict:
        return {
            "facet": self.facet,
            "label": self.label,
            "aliases": list(self.aliases),
            "vertices": [format_point(v) for v in self.vertices],
            "faces": self.faces,
            "volume": format_rat(self.measure),
        }


@dataclass
class CellComplex:
    kind: str
    source: tuple
    cells: list = field(default_factory=list)

    @property
    def total_measure(self) -> Fraction:
        return sum((c.measure for c in self.cells), Fraction(0))

    def to_json(self) -> dict:
        return {
            "schema": "cubefar.cells/1",
            "kind": self.kind,
            "source": format_point(self.source),
            "total": format_rat(self.total_measure),
            "cells": [c.to_json() for c in self.cells],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)


def _cells_from_sites(sites: dict, dim: int, facet_name: str) -> list[Cell]:
    # coincident images (p on a lower-dimensional face) share one cell
    groups: dict = {}
    for lab, s in sites.items():
        groups.setdefault(s, []).append(lab)
    out = []
    for s, labs in groups.items():
        lab, aliases = labs[0], tuple(labs[1:])
        hs = [bisector_halfspace(s, t) for t in groups if t != s]
        if dim == 3:
            poly = clip_cube(hs)
            if not poly.faces:
                continue
            vs, fs = poly.mesh()
            out.append(Cell(facet_name, lab, vs, fs, poly.volume(), aliases))
        else:
            poly = clip_square(hs)
            if not poly:
                continue
            out.append(Cell(facet_name, lab, poly, [], polygon_area(poly), aliases))
    return out


def voronoi_cells_on_facet(p, f: str, n: int = 4) -> CellComplex:
    """Voronoi cells of src(f) restricted to the facet, in its chart.

    For n = 3 the source is (a, b) on D and only f = "U" is supported.
    """
    if n == 3:
        if f != "U":
            raise ValueError("the 3-cube cells are available on facet U only")
        a, b = check_cube3_domain(*tuple(p)[:2])
        sites = {k: tuple(rat(x) for x in v[:2]) for k, v in cube3_closed_forms(a, b).items()}
        return CellComplex("voronoi3", (a, b, Fraction(0)), _cells_from_sites(sites, 2, "U"))
    dp = as_delta(p)
    fac = facet(f)
    sites = {img.label: chart(img.point, fac) for img in src_facet(dp, f)}
    return CellComplex("voronoi", dp.point, _cells_from_sites(sites, 3, f))


def _seq_for(f: str, label: str) -> str:
    for seq in FACET_SEQUENCES[f]:
        lab = seq[:-1] if len(seq) > 1 else seq
        if f == "G":
            lab = seq[1:-1]
        if lab == label:
            return seq
    raise KeyError(label)


def source_unfolding(p) -> CellComplex:
    """All facet cells pulled back into aff(S) (chart coordinates x, y, z)."""
    dp = as_delta(p)
    out = CellComplex("source", dp.point)
    s = facet("S")
    for f in "SDFLRBUG":
        fac = facet(f)
        for cell in voronoi_cells_on_facet(dp, f).cells:
            back = unfold_seq(_seq_for(f, cell.label)).inverse()
            vs = [chart(back(unchart(v, fac)), s) for v in cell.vertices]
            out.cells.append(Cell(f, cell.label, vs, cell.faces, cell.measure, cell.aliases))
    return out


def source_unfolding_radius(complex_: CellComplex) -> Fraction:
    """max |v - p|^2 over cell vertices, with p in chart coordinates of S."""
    src = complex_.source[:3]
    return max(sqdist(v, src) for c in complex_.cells for v in c.vertices)


# ---------------------------------------------------------------------------
# Star unfolding of the 3-cube

# Boundary of the polygon: each source image is followed by the image of
# the cube vertex whose two cut copies meet there.
_STAR_ORDER = (
    ("L", (-1, 0), (0, 0, 0)),
    ("LF", (0, 0), (0, 0, 1)),
    ("F", (1, 0), (1, 0, 1)),
    ("RF", (2, 0), (1, 0, 0)),
    ("R", (1, 1), (1, 1, 1)),
    ("BR", (1, 2), (1, 1, 0)),
    ("B", (0, 2), (0, 1, 0)),
    ("BL", (0, 1), (0, 1, 1)),
)


@dataclass
class StarPolygon:
    source: tuple
    vertices: list  # (x, y) in aff(U), counter-clockwise
    kinds: list  # "source:<label>" or "vertex:<x><y><z>"

    @property
    def area(self) -> Fraction:
        return polygon_area(self.vertices)

    def to_json(self) -> dict:
        return {
            "schema": "cubefar.star3/1",
            "source": format_point(self.source),
            "vertices": [format_point(v) for v in self.vertices],
            "kinds": self.kinds,
            "area": format_rat(self.area),
        }


def star_unfolding_3cube(p) -> StarPolygon:
    """Star unfolding of the 3-cube from p = (a, b, 0) into aff(U).

    Source images alternate with cube-vertex images; coincident neighbours
    (p at a cube vertex) are merged.
    """
    a, b = check_cube3_domain(*tuple(p)[:2])
    forms = cube3_closed_forms(a, b)
    verts, kinds = [], []
    for lab, w, v in _STAR_ORDER:
        for pt, kind in ((tuple(rat(x) for x in forms[lab][:2]), f"source:{lab}"),
                         ((Fraction(w[0]), Fraction(w[1])), "vertex:" + "".join(map(str, v)))):
            if verts and verts[-1] == pt:
                continue
            verts.append(pt)
            kinds.append(kind)
    if len(verts) > 1 and verts[0] == verts[-1]:
        verts.pop()
        kinds.pop()
    return StarPolygon((a, b, Fraction(0)), verts, kinds)


# ---------------------------------------------------------------------------
# Export


def to_off(complex_: CellComplex, precision: int = 12) -> str:
    """ASCII OFF of all 3D cells; coordinates rendered as decimals."""
    verts, faces = [], []
    for c in complex_.cells:
        base = len(verts)
        verts += c.vertices
        faces += [[base + i for i in f] for f in c.faces]
    lines = ["OFF", f"{len(verts)} {len(faces)} 0"]
    lines += [" ".join(f"{float(x):.{precision}g}" for x in v) for v in verts]
    lines += [" ".join(map(str, [len(f)] + f)) for f in faces]
    return "\n".join(lines) + "\n"


def polygon_off(vertices, precision: int = 12) -> str:
    lines = ["OFF", f"{len(vertices)} 1 0"]
    lines += [" ".join(f"{float(x):.{precision}g}" for x in tuple(v) + (0,)) for v in vertices]
    lines.append(" ".join(map(str, [len(vertices)] + list(range(len(vertices))))))
    return "\n".join(lines) + "\n"
