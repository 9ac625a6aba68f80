"""Corners of the Voronoi domain of p_U among the BackRight sites.

All coordinates here are goal-chart coordinates (x, y, z) of aff(G).  A
corner c(F1, F2, F3) is the circumcenter of p_U, p_F1, p_F2, p_F3.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cube import DeltaPoint, as_delta, goal_closed_forms
from .exact import DegenerateError, circumcenter, rat, sqdist
from .regions import REGION_ORDER, Region, classify_delta

BACK_RIGHT = ("U", "D", "UR", "R", "RD", "UB", "B", "BD", "UBR", "BR", "BRD")
BISECTOR_SITES = BACK_RIGHT[1:]
DOMINATED = {"UBR": ("UB", "UR"), "BR": ("B", "UR"), "BRD": ("BD", "UR")}


def back_right_sites(p) -> dict[str, tuple]:
    dp = as_delta(p)
    forms = goal_closed_forms(*dp.abc)
    return {k: tuple(rat(v) for v in forms[k][:3]) for k in BACK_RIGHT}


# ---------------------------------------------------------------------------
# Bisector heights z = f_F(x, y)


def _bisector_terms(a, b, c):
    """(numerator as function of x, y; denominator) for each site."""
    return {
        "D": (lambda x, y: 1 - c, Fraction(1)),
        "UB": (lambda x, y: -2 + 3 * b - c + (2 - b - c) * y, b - c),
        "B": (lambda x, y: 3 * b - 3 * c + (3 - 2 * b) * y, 3 - 2 * c),
        "BD": (lambda x, y: 2 + b - 5 * c + (2 - b + c) * y, 4 - b - c),
        "UR": (lambda x, y: -2 + 3 * a - c + (2 - a - c) * x, a - c),
        "R": (lambda x, y: 3 * a - 3 * c + (3 - 2 * a) * x, 3 - 2 * c),
        "RD": (lambda x, y: 2 + a - 5 * c + (2 - a + c) * x, 4 - a - c),
        "UBR": (lambda x, y: -4 + 3 * a + 2 * b - c + (2 - a - b) * x + (2 - b - c) * y, a - c),
        "BR": (lambda x, y: -2 + 3 * a + 2 * b - 3 * c + (2 - a - b) * x + (3 - a - b) * y, 3 - 2 * c),
        "BRD": (lambda x, y: a + 2 * b - 5 * c + (2 - a - b) * x + (2 - b + c) * y, 4 - a - c),
    }


def bisector_height(label: str, x, y, p) -> Fraction:
    """Height of the perpendicular bisector of p_U and p_label above (x, y)."""
    dp = as_delta(p)
    terms = _bisector_terms(*dp.abc)
    if label not in terms:
        raise ValueError(f"{label!r} is not a BackRight site other than U")
    num, den = terms[label]
    if den == 0:
        raise ZeroDivisionError(f"the bisector of U and {label} is vertical at this p")
    return rat(num(rat(x), rat(y))) / den


def f_max(x, y, p) -> Fraction:
    """Max of the bisector heights (sites with vertical bisectors are skipped)."""
    vals = []
    for lab in BISECTOR_SITES:
        try:
            vals.append(bisector_height(lab, x, y, p))
        except ZeroDivisionError:
            continue
    return max(vals)


# ---------------------------------------------------------------------------
# Circumcenters


def _phi1(c, t):
    return (t + 2 * c * (1 - c)) / (3 - 2 * t)


def _phi2(c, t):
    # the circumcenter needs (t + c)(1 - c)/(2 - t + c), the c -> -c image of
    # the printed (t - c)(1 + c)/(2 - t - c)
    return (t + c) * (1 - c) / (2 - t + c)


def _closed_forms(a, b, c) -> dict[frozenset, tuple]:
    h = Fraction(3, 2)
    ea = 3 - 4 * a + a * a - c + c * c
    eb = 3 - 4 * b + b * b - c + c * c
    fa = 4 - 4 * a + a * a - 2 * c + c * c
    fb = 4 - 4 * b + b * b - 2 * c + c * c
    out = {
        ("B", "D", "R"): (1 - _phi1(c, a), 1 - _phi1(c, b), 1 - c),
        ("B", "D", "RD"): (1 - _phi2(c, a), 1 - _phi1(c, b), 1 - c),
        ("BD", "D", "R"): (1 - _phi1(c, a), 1 - _phi2(c, b), 1 - c),
        ("BD", "D", "RD"): (1 - _phi2(c, a), 1 - _phi2(c, b), 1 - c),
        ("B", "RD", "R"): (
            h - (1 - a + 2 * c) * (3 - 2 * c) / (2 * ea),
            h - (3 - 2 * a) * (1 - a + 2 * c) * (3 - 2 * c) / (2 * (3 - 2 * b) * ea),
            h - (3 - 2 * a) * (1 - a + 2 * c) / (2 * ea),
        ),
        ("B", "RD", "UR"): (
            1 - (2 - a + c) * (a - c) / fa,
            h - (3 - 2 * c) * (4 - 4 * a + 2 * c + a * a - 3 * c * c) / (2 * (3 - 2 * b) * fa),
            1 - 2 * (1 - c) * c / fa,
        ),
        ("B", "BD", "RD"): (
            3 - (4 - a - c) * (3 - 3 * b + c) * (2 - b + c) / (2 * (2 - a + c) * eb),
            2 - (1 - b + c) * (6 - b - 3 * c) / (2 * eb),
            (1 - b - c) * (6 - b - 3 * c) / (2 * eb),
        ),
        ("B", "BD", "UR"): (
            1 - (a - c) * (3 - 3 * b + c) * (2 - b + c) / (2 * (2 - a - c) * eb),
            h - (1 - b + 2 * c) * (3 - 2 * c) / (2 * eb),
            h - (3 - 2 * b) * (1 - b + 2 * c) / (2 * eb),
        ),
        ("BD", "RD", "UR"): (
            1 - (2 - a + c) * (a - c) / fa,
            3 - (2 - a + c) * (2 - a - c) * (4 - b - c) / ((2 - b + c) * fa),
            1 - 2 * (1 - c) * c / fa,
        ),
        ("UB", "BD", "UR"): (
            1 - (a - c) * (2 - b + c) * (2 - b - c) / ((2 - a - c) * fb),
            1 - (2 - b + c) * (b - c) / fb,
            1 - 2 * (1 - c) * c / fb,
        ),
    }
    return {frozenset(k): v for k, v in out.items()}


CLOSED_FORM_TRIPLES = (
    ("B", "D", "R"), ("B", "D", "RD"), ("BD", "D", "R"), ("BD", "D", "RD"),
    ("B", "RD", "R"), ("B", "RD", "UR"), ("B", "BD", "RD"), ("B", "BD", "UR"),
    ("BD", "RD", "UR"), ("UB", "BD", "UR"),
)


def generic_center(triple, p) -> tuple:
    s = back_right_sites(p)
    return circumcenter([s["U"]] + [s[k] for k in triple])


@dataclass(frozen=True)
class Center:
    triple: tuple
    point: tuple
    closed_form: bool


def closed_form_center(triple, p) -> Center:
    """c(F1, F2, F3); uses the closed form when one exists, else the solver."""
    dp = as_delta(p)
    key = frozenset(triple)
    if len(key) != 3 or not key <= set(BISECTOR_SITES):
        raise ValueError(f"bad site triple {triple!r}")
    forms = _closed_forms(*dp.abc)
    if key in forms:
        try:
            return Center(tuple(triple), tuple(rat(v) for v in forms[key]), True)
        except ZeroDivisionError:
            pass
    return Center(tuple(triple), generic_center(triple, dp), False)


# ---------------------------------------------------------------------------
# Corner sets per region

CORNER_LISTS = {
    "D11": (("B", "D", "R"), ("B", "R", "UR"), ("UB", "B", "UR")),
    "D12": (("BD", "D", "R"), ("B", "BD", "R"), ("B", "R", "UR"), ("UB", "B", "UR")),
    "D21": (("B", "D", "RD"), ("B", "RD", "R"), ("B", "R", "UR"), ("UB", "B", "UR")),
    "D22A": (("BD", "D", "RD"), ("B", "BD", "RD"), ("B", "RD", "R"), ("B", "R", "UR"), ("UB", "B", "UR")),
    "D22B": (("BD", "D", "RD"), ("BD", "RD", "R"), ("B", "BD", "R"), ("B", "R", "UR"), ("UB", "B", "UR")),
    "D31": (("B", "D", "RD"), ("B", "RD", "UR"), ("UB", "B", "UR")),
    "D32A": (("BD", "D", "RD"), ("B", "BD", "RD"), ("B", "RD", "UR"), ("UB", "B", "UR")),
    "D32B": (("BD", "D", "RD"), ("BD", "RD", "UR"), ("B", "BD", "UR"), ("UB", "B", "UR")),
    "D33": (("BD", "D", "RD"), ("BD", "RD", "UR"), ("UB", "BD", "UR")),
}

# Candidate farthest corners per region.
THEOREM_CANDIDATES = {
    "D11": (("B", "D", "R"),),
    "D12": (("BD", "D", "R"),),
    "D21": (("B", "D", "RD"), ("B", "RD", "R")),
    "D22A": (("BD", "D", "RD"), ("B", "BD", "RD"), ("B", "RD", "R")),
    "D22B": (("BD", "D", "RD"),),
    "D31": (("B", "D", "RD"), ("B", "RD", "UR")),
    "D32A": (("BD", "D", "RD"), ("B", "BD", "RD"), ("B", "RD", "UR")),
    "D32B": (("BD", "D", "RD"), ("BD", "RD", "UR"), ("B", "BD", "UR")),
    "D33": (("BD", "D", "RD"), ("BD", "RD", "UR"), ("UB", "BD", "UR")),
}


@dataclass(frozen=True)
class CornerSet:
    region: Region
    corners: tuple  # of Center

    def points(self) -> list[tuple]:
        out = []
        for c in self.corners:
            if c.point not in out:
                out.append(c.point)
        return out


def corner_set(p, region: Region | None = None) -> CornerSet:
    """v_k(U) for the region of p; on boundaries the union over member regions.

    Triples whose four sites are affinely dependent at p (possible only on
    boundaries, where the list of a neighbouring region is used) are skipped.
    """
    dp = as_delta(p)
    region = region or classify_delta(dp)
    seen = []
    corners = []
    for tag in region.members:
        for triple in CORNER_LISTS[tag]:
            key = frozenset(triple)
            if key in seen:
                continue
            seen.append(key)
            try:
                corners.append(closed_form_center(triple, dp))
            except DegenerateError:
                continue
    return CornerSet(region, tuple(corners))


def verify_corner(p, corner: Center | tuple, triple=None) -> bool:
    """Eq. (8) in distance form: the point is no closer to any BackRight site
    than to p_U, with equality on its own triple.

    This is z0 = f_max(x0, y0) whenever no bisector in play is vertical, and
    stays meaningful when a = c or b = c makes some bisector vertical.
    """
    if isinstance(corner, Center):
        triple, point = corner.triple, corner.point
    else:
        point = tuple(rat(v) for v in corner)
    s = back_right_sites(p)
    d0 = sqdist(point, s["U"])
    for lab in BISECTOR_SITES:
        d = sqdist(point, s[lab])
        if d < d0:
            return False
        if triple is not None and lab in triple and d != d0:
            return False
    return True


def verify_corner_fmax(p, corner: Center) -> bool:
    """z0 == f_max(x0, y0) using the bisector height formulas directly."""
    x0, y0, z0 = corner.point
    return f_max(x0, y0, p) == z0


def dominated_strictly(p, x, y) -> dict[str, bool]:
    """f_F < max(f_G, f_H) for the three dominated sites at (x, y)."""
    out = {}
    for lab, (g, h) in DOMINATED.items():
        try:
            out[lab] = bisector_height(lab, x, y, p) < max(bisector_height(g, x, y, p), bisector_height(h, x, y, p))
        except ZeroDivisionError:
            out[lab] = None
    return out


def dominated_status(p, x, y) -> dict[str, str]:
    """Per dominated site: "strict" (below the max of its pair), "tie" (all
    three equal, which happens on the line where the pair agree), "violated",
    or "vertical" when a bisector is vertical at p."""
    out = {}
    for lab, (g, h) in DOMINATED.items():
        try:
            f, fg, fh = (bisector_height(k, x, y, p) for k in (lab, g, h))
        except ZeroDivisionError:
            out[lab] = "vertical"
            continue
        if f < max(fg, fh):
            out[lab] = "strict"
        elif f == fg == fh:
            out[lab] = "tie"
        else:
            out[lab] = "violated"
    return out


def region_of_tag(tag: str) -> int:
    return REGION_ORDER.index(tag)
