"""Classification polynomials and the region charts of the fundamental domain.

The planar charts live on Delta0 = {(a, c) : 0 <= c <= a <= 1/2}; the spatial
chart splits Delta = {0 <= c <= b <= a <= 1/2} into the nine regions

    D11 D12 D21 D22A D22B D31 D32A D32B D33

Boundary points belong to every region whose closed definition they meet;
``Region.tag`` is the first member in the order above.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .cube import HALF, DeltaPoint, DomainError, as_delta, goal_closed_forms
from .exact import INSIDE, DegenerateError, circumcenter, format_rat, incircle_side, outcircle, outsphere, rat, sqdist

REGION_ORDER = ("D11", "D12", "D21", "D22A", "D22B", "D31", "D32A", "D32B", "D33")


class InconsistentRegion(AssertionError):
    """Sign pattern that no region admits (an implementation bug)."""


# ---------------------------------------------------------------------------
# Polynomials


def psi1(a, c):
    return 8 * (-a + c + a * a + 4 * a * c + c * c - 2 * a * a * c - 2 * c ** 3)


def psi2(a, c):
    return 4 * (-2 * a + 8 * c + 3 * a * a - 8 * a * c - 5 * c * c - a ** 3 + 3 * a * a * c - a * c * c + 3 * c ** 3)


def psi1L(a, c):
    return psi1(1 - a, c)


def psi2L(a, c):
    return psi2(1 - a, c)


def psi3L(a, c):
    return 16 * c * (-1 + 2 * a + a * a + c * c)


def psi4L(a, c):
    return 4 * (a - a ** 3 - 3 * c - 2 * a * c + a * a * c - 2 * c * c - a * c * c + c ** 3)


def psi5L(a, c):
    return 8 * (a - a * a - c - 4 * a * c - 2 * a * a * c + 3 * c * c - 2 * c ** 3)


def psi22(a, b, c):
    """Expanded cubic; defined everywhere, including a = b."""
    return (
        3 - 3 * a - 3 * b - 17 * c + 3 * a * b + 8 * a * c + 8 * b * c + c * c
        - 4 * a * b * c - 2 * a * c * c - 2 * b * c * c + 4 * c ** 3
    )


def psi32(a, b, c):
    """outsphere(pU, pB, pBD, pRD, pUR) on the goal-chart coordinates."""
    s = goal_closed_forms(rat(a), rat(b), rat(c))
    return outsphere(*(s[k][:3] for k in ("U", "B", "BD", "RD", "UR")))


PSI = {
    "psi1": (psi1, 2),
    "psi2": (psi2, 2),
    "psi1L": (psi1L, 2),
    "psi2L": (psi2L, 2),
    "psi3L": (psi3L, 2),
    "psi4L": (psi4L, 2),
    "psi5L": (psi5L, 2),
    "psi22": (psi22, 3),
    "psi32": (psi32, 3),
}


def eval_psi(name: str, *args) -> Fraction:
    if name not in PSI:
        raise ValueError(f"unknown classifier {name!r}")
    fn, arity = PSI[name]
    if len(args) == 1 and isinstance(args[0], (tuple, list)):
        args = tuple(args[0])
    if len(args) != arity:
        raise ValueError(f"{name} takes {arity} arguments, got {len(args)}")
    return rat(fn(*(rat(x) for x in args)))


# ---------------------------------------------------------------------------
# Planar sites and charts


def planar_sites_y(a, c) -> dict[str, tuple]:
    """W_{y=b}: the (x, z) projections of the eight sites with y = b."""
    a, c = rat(a), rat(c)
    return {
        "U": (a, 3 - c),
        "D": (a, -1 - c),
        "UL": (-1 + c, 2 + a),
        "L": (-1 - a, c),
        "LD": (-1 - c, -a),
        "UR": (2 - c, 3 - a),
        "R": (3 - a, c),
        "RD": (2 + c, -1 + a),
    }


def planar_sites_x(b, c) -> dict[str, tuple]:
    """W_{x=a}: the (y, z) projections; the same set with L, R renamed F, B."""
    sites = planar_sites_y(b, c)
    return {k.replace("L", "F").replace("R", "B"): v for k, v in sites.items()}


def _check_delta0(a, c) -> tuple[Fraction, Fraction]:
    a, c = rat(a), rat(c)
    if not (0 <= c <= a <= HALF):
        raise DomainError(f"({a}, {c}) is outside 0 <= c <= a <= 1/2")
    return a, c


@dataclass(frozen=True)
class PlanarRegion:
    tag: str
    members: tuple
    flags: tuple
    values: dict


def _three_way(v1, v2) -> list[int]:
    out = []
    if v1 >= 0:
        out.append(1)
    if v1 <= 0 <= v2:
        out.append(2)
    if v2 <= 0:
        out.append(3)
    return out


def classify_planar_right(a, c) -> PlanarRegion:
    a, c = _check_delta0(a, c)
    v1, v2 = psi1(a, c), psi2(a, c)
    members = tuple(f"D{i}" for i in _three_way(v1, v2))
    if not members:
        raise InconsistentRegion(f"psi1={v1}, psi2={v2} fit no planar region")
    flags = tuple(name for name, v in (("psi1", v1), ("psi2", v2)) if v == 0)
    return PlanarRegion(members[0], members, flags, {"psi1": v1, "psi2": v2})


def _cmp_sqrt7(x: Fraction, u: int, v: int, w: int) -> int:
    """Sign of x - (u + v*sqrt(7))/w for w > 0, v = +-1, without irrationals."""
    # x - (u + v r)/w has the sign of (w x - u) - v r
    t = w * x - u
    if v > 0:
        if t <= 0:
            return -1
        return 1 if t * t > 7 else (0 if t * t == 7 else -1)
    if t >= 0:
        return 1
    return -1 if t * t > 7 else (0 if t * t == 7 else 1)


def a_vs_left_threshold(a) -> int:
    """Sign of a - (-1 + sqrt 7)/4."""
    return _cmp_sqrt7(rat(a), -1, 1, 4)


def c_vs_left_threshold(c) -> int:
    """Sign of c - (3 - sqrt 7)/4."""
    return _cmp_sqrt7(rat(c), 3, -1, 4)


LEFT_PSI = {"psi1L": psi1L, "psi2L": psi2L, "psi3L": psi3L, "psi4L": psi4L, "psi5L": psi5L}


def classify_planar_left(a, c) -> PlanarRegion:
    """Left-side chart D1L..D5L.

    The c bound printed for D1L is read as c <= (3 + sqrt 7)/4, which holds on
    all of Delta0; with the lower bound c >= (3 - sqrt 7)/4 instead, points
    such as (1/12, 1/15) would fall in no region.
    """
    a, c = _check_delta0(a, c)
    v = {k: f(a, c) for k, f in LEFT_PSI.items()}
    sa, sc = a_vs_left_threshold(a), c_vs_left_threshold(c)
    assert _cmp_sqrt7(c, 3, 1, 4) <= 0
    tests = (
        ("D1L", v["psi5L"] <= 0 <= v["psi1L"]),
        ("D2L", sa >= 0 and v["psi1L"] <= 0 <= v["psi2L"]),
        ("D3L", sa >= 0 and v["psi2L"] <= 0 <= v["psi3L"]),
        ("D4L", sc <= 0 and v["psi3L"] <= 0 <= v["psi4L"]),
        ("D5L", sa <= 0 and v["psi4L"] <= 0 <= v["psi5L"]),
    )
    members = tuple(tag for tag, ok in tests if ok)
    if not members:
        raise InconsistentRegion(f"({a}, {c}) fits no left-side region: {v}")
    flags = tuple(k for k, x in v.items() if x == 0)
    return PlanarRegion(members[0], members, flags, v)


# Delaunay triangles claimed for each planar region (right and left of [qU, qD]).
PLANAR_TRIANGLES = {
    "D1": (("U", "D", "R"), ("D", "R", "RD"), ("U", "UR", "R")),
    "D2": (("U", "UR", "R"), ("U", "R", "RD"), ("U", "D", "RD")),
    "D3": (("U", "D", "RD"), ("U", "UR", "RD"), ("UR", "R", "RD")),
    "D1L": (("U", "D", "L"), ("D", "L", "LD"), ("U", "UL", "L")),
    "D2L": (("U", "UL", "L"), ("U", "L", "LD"), ("U", "D", "LD")),
    "D3L": (("U", "D", "LD"), ("U", "UL", "LD"), ("UL", "L", "LD")),
    "D4L": (("UL", "L", "LD"), ("D", "UL", "LD"), ("U", "D", "UL")),
    "D5L": (("U", "D", "UL"), ("D", "UL", "L"), ("D", "L", "LD")),
}


def planar_triangle_violations(a, c) -> list[tuple[str, tuple, str]]:
    """(region, triangle, site) for sites strictly inside a claimed Delaunay circle.

    Both charts are checked for every member region of (a, c).  Triangles
    whose sites coincide or are collinear at (a, c) carry no circle and
    are skipped.
    """
    sites = planar_sites_y(a, c)
    regions = classify_planar_right(a, c).members + classify_planar_left(a, c).members
    bad = []
    for reg in regions:
        for tri in PLANAR_TRIANGLES[reg]:
            pts = [sites[k] for k in tri]
            for lab, v in sites.items():
                if lab in tri:
                    continue
                try:
                    if incircle_side(*pts, v) == INSIDE:
                        bad.append((reg, tri, lab))
                except DegenerateError:
                    break
    return bad


def wall_phis(a, c) -> dict[str, Fraction]:
    """First coordinates of the circumcenters of qU, qD, qF (second is 1 - c)."""
    a, c = rat(a), rat(c)

    def ul(a, c):
        return (1 + c) * (1 - a - c) / (1 + a - c)

    def l(a, c):
        return Fraction(-1, 2) + (3 - 2 * c) * (1 + 2 * c) / (2 + 4 * a)

    def ld(a, c):
        return (1 - a + c) * (1 - c) / (1 + a + c)

    return {
        "UL": ul(a, c),
        "L": l(a, c),
        "LD": ld(a, c),
        "UR": 1 - ul(1 - a, c),
        "R": 1 - l(1 - a, c),
        "RD": 1 - ld(1 - a, c),
    }


def wall_ordering_holds(a, c) -> bool:
    phi = wall_phis(a, c)
    mid = 1 - rat(a)
    return all(phi[k] <= mid for k in ("UL", "L", "LD")) and all(mid <= phi[k] for k in ("UR", "R", "RD"))


def wall_circle_empty(a, c) -> bool:
    """No site of W_{y=b} lies strictly inside the circle at (1-a, 1-c) through qU, qD."""
    a, c = rat(a), rat(c)
    sites = planar_sites_y(a, c)
    center = (1 - a, 1 - c)
    r2 = sqdist(center, sites["U"])
    return all(sqdist(center, v) >= r2 for v in sites.values())


# ---------------------------------------------------------------------------
# Spatial regions


@dataclass(frozen=True)
class Region:
    tag: str
    members: tuple
    flags: tuple
    values: dict

    def to_json(self) -> dict:
        return {
            "region": self.tag,
            "members": list(self.members),
            "flags": [f"{f}_zero" for f in self.flags],
            "psi": {k: format_rat(v) for k, v in self.values.items()},
        }


def psi_values(p) -> dict[str, Fraction]:
    dp = as_delta(p)
    a, b, c = dp.abc
    return {
        "psi1_ac": psi1(a, c),
        "psi2_ac": psi2(a, c),
        "psi1_bc": psi1(b, c),
        "psi2_bc": psi2(b, c),
        "psi22": psi22(a, b, c),
        "psi32": psi32(a, b, c),
    }


def classify_delta(p) -> Region:
    dp = as_delta(p)
    v = psi_values(dp)
    rows = _three_way(v["psi1_ac"], v["psi2_ac"])
    cols = _three_way(v["psi1_bc"], v["psi2_bc"])
    combos = [(i, j) for i in rows for j in cols]
    allowed = [ij for ij in combos if ij not in ((1, 3), (2, 3))]
    if not allowed:
        raise InconsistentRegion(f"{dp.abc} only meets the empty combinations {combos}")
    members = set()
    for i, j in allowed:
        key = f"{i}{j}"
        if key == "22":
            if v["psi22"] >= 0:
                members.add("D22A")
            if v["psi22"] <= 0:
                members.add("D22B")
        elif key == "32":
            if v["psi32"] >= 0:
                members.add("D32A")
            if v["psi32"] <= 0:
                members.add("D32B")
        else:
            members.add("D" + key)
    ordered = tuple(t for t in REGION_ORDER if t in members)
    relevant = {"psi1_ac", "psi2_ac", "psi1_bc", "psi2_bc"}
    if any(t.startswith("D22") for t in ordered):
        relevant.add("psi22")
    if any(t.startswith("D32") for t in ordered):
        relevant.add("psi32")
    flags = tuple(k for k in v if k in relevant and v[k] == 0)
    return Region(ordered[0], ordered, flags, v)


def region_index(tag: str) -> tuple[int, int]:
    return int(tag[1]), int(tag[2])


def psi22_determinant(a, b, c) -> Fraction:
    """outsphere(pU, pB, pBD, pRD, pR) / (4 (a - b)), the form undefined at a = b."""
    a, b, c = rat(a), rat(b), rat(c)
    if a == b:
        raise ZeroDivisionError("the determinant form needs a != b")
    s = goal_closed_forms(a, b, c)
    return outsphere(*(s[k][:3] for k in ("U", "B", "BD", "RD", "R"))) / (4 * (a - b))


def psi22_consistency(a, b, c) -> tuple[Fraction, Fraction]:
    """(psi22, its expression through psi1(a, c) and psi1(b, c)).

    The expression uses psi1 / 8, i.e. psi1 without its leading factor.
    """
    a, b, c = rat(a), rat(b), rat(c)
    if a == b or 2 * c == 1:
        raise ZeroDivisionError("decomposition needs a != b and c != 1/2")
    den = (a - b) * (1 - 2 * c)
    rhs = (
        -(3 - 3 * b - 8 * c + 4 * b * c + 2 * c * c) / den * psi1(a, c) / 8
        + (3 - 3 * a - 8 * c + 4 * a * c + 2 * c * c) / den * psi1(b, c) / 8
    )
    return psi22(a, b, c), rhs


def psi32_combination(a, b, c) -> Fraction:
    """psi32 rebuilt from psi22 and psi2(a, c).

    The printed combination matches the determinant once psi22 enters with
    the opposite sign, so ``g = -psi22`` below.
    """
    a, b, c = rat(a), rat(b), rat(c)
    k = 3 - 3 * a - 8 * c + 4 * a * c + 2 * c * c
    if k == 0:
        raise ZeroDivisionError("combination needs 3 - 3a - 8c + 4ac + 2c^2 != 0")
    g = -psi22(a, b, c)
    return (
        -4 * (a - b) * (4 - 4 * a - 6 * c + a * a + 5 * c * c) / k * g
        + (2 - a + c) * (5 * c * (1 - c) * (3 - 2 * c) * (1 + 2 * c) - (3 - 4 * c) * g) / (k * k) * psi2(a, c)
    )


# ---------------------------------------------------------------------------
# Planar circumcenters q(F1, F2, F3) and the spatial wall spheres


def _planar_q_forms(a, b, c) -> dict[tuple, tuple]:
    e1 = 1 - 2 * a + a * a + c + c * c
    e2 = 3 - 3 * a + a * a - 2 * c + c * c
    e3 = 3 - 4 * a + a * a - c + c * c
    e4 = 4 - 4 * a + a * a - 2 * c + c * c
    e5 = 2 - 3 * a + a * a - c + c * c
    h = Fraction(3, 2)
    return {
        ("U", "D", "R"): (h - (3 - 2 * c) * (1 + 2 * c) / (2 * (3 - 2 * a)), b, 1 - c),
        ("D", "R", "RD"): (h - (1 - a) * (1 + 2 * c) / (2 * e1), b, -Fraction(1, 2) + (1 - a) * (3 - 2 * a) / (2 * e1)),
        ("U", "UR", "R"): (h - (1 - c) * (3 - 2 * c) / (2 * e2), b, h - (1 - c) * (3 - 2 * a) / (2 * e2)),
        ("U", "R", "RD"): (h - (1 - a + 2 * c) * (3 - 2 * c) / (2 * e3), b, h - (1 - a + 2 * c) * (3 - 2 * a) / (2 * e3)),
        ("U", "D", "RD"): (1 - (1 - c) * (a + c) / (2 - a + c), b, 1 - c),
        ("U", "UR", "RD"): (2 - 2 * (2 - a) * (1 - c) / e4, b, 1 - 2 * c * (1 - c) / e4),
        ("UR", "R", "RD"): (2 - (2 - a) * (1 - a + c) / e5, b, 1 - c * (1 - a + c) / e5),
    }


PLANAR_Q_TRIPLES = tuple(_planar_q_forms(Fraction(1, 3), Fraction(1, 5), Fraction(1, 7)))


def planar_q(triple, p) -> tuple:
    """q(F1, F2, F3) in goal-chart coordinates (x, y, z) from the closed forms."""
    dp = as_delta(p)
    forms = _planar_q_forms(*dp.abc)
    key = tuple(triple)
    if key not in forms:
        raise KeyError(f"no closed form for q{key}")
    return tuple(rat(v) for v in forms[key])


def planar_q_generic(triple, p) -> tuple:
    dp = as_delta(p)
    s = goal_closed_forms(*dp.abc)
    xz = circumcenter([(s[k][0], s[k][2]) for k in triple])
    return (xz[0], dp.b, xz[1])


def _alpha_b(q, b, c):
    return (q[0], 1 - b, q[2])


def _alpha_bc(q, b, c):
    return (q[0], c - b + q[2], q[2])


def _mirror(triple):
    return tuple(t.replace("R", "B") for t in triple)


@dataclass(frozen=True)
class WallSphere:
    plane: str  # "y=b" or "x=a"
    triple: tuple
    center: tuple
    sites: tuple


# (triple, condition on (psi1, psi2), lift) for the y = b plane.
_WALL_RULES: tuple[tuple[tuple, Callable, Callable], ...] = (
    (("U", "D", "R"), lambda v1, v2: v1 >= 0, _alpha_b),
    (("D", "R", "RD"), lambda v1, v2: v1 >= 0, _alpha_b),
    (("U", "UR", "R"), lambda v1, v2: v2 >= 0, _alpha_bc),
    # lifted with alpha_bc: the alpha_b centre admits RF inside when b is small
    (("U", "R", "RD"), lambda v1, v2: v1 <= 0 <= v2, _alpha_bc),
    (("U", "D", "RD"), lambda v1, v2: v1 <= 0, _alpha_b),
    (("U", "UR", "RD"), lambda v1, v2: v2 <= 0, _alpha_bc),
    (("UR", "R", "RD"), lambda v1, v2: v2 <= 0, _alpha_bc),
)


def wall_spheres(p) -> list[WallSphere]:
    """Empty spheres certifying the planar Delaunay triangles in aff(G).

    For the x = a plane the construction is the mirror image under the swap
    of the first two coordinates together with a <-> b.
    """
    dp = as_delta(p)
    a, b, c = dp.abc
    out = []
    forms_y = _planar_q_forms(a, b, c)
    forms_x = _planar_q_forms(b, a, c)
    for triple, cond, lift in _WALL_RULES:
        if cond(psi1(a, c), psi2(a, c)):
            center = lift(forms_y[triple], b, c)
            out.append(WallSphere("y=b", triple, center, triple))
        if cond(psi1(b, c), psi2(b, c)):
            q = lift(forms_x[triple], a, c)
            center = (q[1], q[0], q[2])
            out.append(WallSphere("x=a", _mirror(triple), center, _mirror(triple)))
    return out


def wall_sphere_violations(p) -> list[tuple[WallSphere, str]]:
    """Sites of src(G) strictly inside a certified sphere (should be empty)."""
    dp = as_delta(p)
    s = goal_closed_forms(*dp.abc)
    bad = []
    for ws in wall_spheres(dp):
        r2 = {sqdist(ws.center, s[k][:3]) for k in ws.sites}
        if len(r2) != 1:
            bad.append((ws, "not-equidistant"))
            continue
        r2v = r2.pop()
        for lab, v in s.items():
            if sqdist(ws.center, v[:3]) < r2v:
                bad.append((ws, lab))
    return bad
