"""Farthest-point map on the 3-cube and 4-cube boundary and its dynamics."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .corners import THEOREM_CANDIDATES, Center, back_right_sites, closed_form_center, corner_set
from .cube import (
    HALF,
    DeltaPoint,
    DomainError,
    Symmetry,
    as_delta,
    check_cube3_domain,
    dist_to_goal,
    iota,
    on_boundary,
    reduce_point,
    reduce_to_fundamental,
    stabilizer,
)
from .exact import point, rat, sqdist
from .regions import Region, classify_delta, psi1, psi2

# ---------------------------------------------------------------------------
# 3-cube


def farthest_3cube(p) -> "FarthestResult":
    """Farthest points of p = (a, b, 0), 0 <= b <= a <= 1/2, on the 3-cube.

    The point is the circumcenter of the images p_F, p_R, p_B in aff(U).
    """
    a, b = check_cube3_domain(*tuple(p)[:2])
    x = 1 - (a + 2 * b * (1 - b)) / (3 - 2 * a)
    q = (x, 1 - b, Fraction(1))
    pts = [q]
    if a == HALF and x != HALF:
        pts.append((1 - x, 1 - b, Fraction(1)))
    d2 = sqdist((a, -1 - b), q[:2])
    return FarthestResult((a, b, Fraction(0)), pts, [("F", "R", "B")] * len(pts), d2)


def cube3_limit_iterate(a, b, steps: int, tol: float = 1e-15) -> tuple[float, float, int]:
    """Iterate (a, b) -> iota f in floats; returns (a, b, steps used)."""
    a, b = float(a), float(b)
    for k in range(steps):
        a2 = (a + 2 * b * (1 - b)) / (3 - 2 * a)
        if abs(a2 - a) < tol:
            return a2, b, k + 1
        a = a2
    return a, b, steps


# ---------------------------------------------------------------------------
# 4-cube


def in_iota_delta(q: Sequence) -> bool:
    """1/2 <= x <= y <= z <= 1 on facet G."""
    x, y, z = q[:3]
    return (len(q) == 3 or q[3] == 1) and HALF <= x <= y <= z <= 1


@dataclass
class FarthestResult:
    source: tuple
    points: list
    witnesses: list
    sq_dist: Fraction
    region: Region | None = None
    certified: bool = True
    theorem_ok: bool = True

    def to_json(self) -> dict:
        from .exact import format_point, format_rat

        return {
            "source": format_point(self.source),
            "points": [format_point(q) for q in self.points],
            "witnesses": [",".join(t) for t in self.witnesses],
            "sq_dist": format_rat(self.sq_dist),
            "dist": math.sqrt(self.sq_dist),
            "region": self.region.tag if self.region else None,
        }


def _theorem_points(dp: DeltaPoint, region: Region) -> set:
    pts = set()
    for tag in region.members:
        for triple in THEOREM_CANDIDATES[tag]:
            pts.add(closed_form_center(triple, dp).point)
    return pts


def _stabilizer_closure(dp: DeltaPoint, pts: list, wit: list) -> None:
    a, b, c = dp.abc
    if not (a == b or b == c or c == 0 or a == HALF):
        return
    for g in stabilizer(dp.point):
        for q, t in list(zip(pts, wit)):
            gq = g(q)
            if gq not in pts:
                pts.append(gq)
                wit.append(t)


def farthest_fundamental(p, check: bool = True) -> FarthestResult:
    """Exact farthest points of p in Delta: argmax of |p_U - .|^2 over the corners."""
    dp = as_delta(p)
    cs = corner_set(dp)
    pU = back_right_sites(dp)["U"]
    best = None
    chosen: list[Center] = []
    for ctr in cs.corners:
        d = sqdist(ctr.point, pU)
        if best is None or d > best:
            best, chosen = d, [ctr]
        elif d == best:
            chosen.append(ctr)
    pts: list = []
    wit: list = []
    for ctr in chosen:
        q = ctr.point + (Fraction(1),)
        if q not in pts:
            pts.append(q)
            wit.append(ctr.triple)
    certified = theorem_ok = True
    if check:
        certified = all(in_iota_delta(q) for q in pts) and all(
            dist_to_goal(dp, q[:3])[0] == best for q in pts
        )
        allowed = _theorem_points(dp, cs.region)
        theorem_ok = all(q[:3] in allowed for q in pts)
    _stabilizer_closure(dp, pts, wit)
    return FarthestResult(dp.point, pts, wit, best, cs.region, certified, theorem_ok)


def farthest(p) -> FarthestResult:
    """Farthest points of any boundary point of the 4-cube."""
    p = point(p)
    if len(p) != 4 or not on_boundary(p):
        raise DomainError(f"{p} is not on the boundary of the 4-cube")
    dp = reduce_to_fundamental(p)
    res = farthest_fundamental(dp)
    back = dp.witness.inverse()
    res.points = [back(q) for q in res.points]
    res.source = p
    return res


# ---------------------------------------------------------------------------
# Orbits


def _psi32_poly(a, b, c):
    # expansion of the psi32 determinant (checked against it in the tests)
    return 4 * (
        a * a * b * b - 4 * a * a * b * c - a * a * b - a * a * c * c + 7 * a * a * c - 4 * a * b * b
        + 16 * a * b * c + 4 * a * b + 4 * a * c * c - 28 * a * c + 5 * b * b * c * c - 6 * b * b * c
        + 4 * b * b - 4 * b * c ** 3 - 9 * b * c * c + 2 * b * c - 4 * b + 3 * c ** 4 + c ** 3
        - 2 * c * c + 16 * c
    )


_FLOAT_GUARD = 1e-9


def _phi1_float(c, t):
    return (t + 2 * c * (1 - c)) / (3 - 2 * t)


@dataclass
class OrbitStep:
    index: int
    delta: tuple  # (a, b, c), Fractions on exact steps, floats afterwards
    point: tuple  # the iterate on the 4-cube boundary
    region: str
    exact: bool


@dataclass
class Orbit:
    start: tuple
    steps: list = field(default_factory=list)
    exact_prefix_len: int = 0
    converged: bool = False
    limit: tuple | None = None
    limit_delta: tuple | None = None
    n_steps: int = 0

    @property
    def iterates(self) -> list:
        return [s.point for s in self.steps]

    @property
    def region_trace(self) -> list:
        return [s.region for s in self.steps]

    def diagonal_deviation(self) -> float:
        if self.limit_delta is None:
            return math.inf
        v = [float(x) for x in self.limit_delta]
        return max(v) - min(v)


def _select(dp: DeltaPoint, res: FarthestResult) -> tuple[tuple, Symmetry]:
    """Lexicographically least Delta-reduced image of iota(q) over the farthest set."""
    best = None
    for q in res.points:
        iq = iota(q)
        red, h = reduce_point(iq)
        key = (red, iq)
        if best is None or key < best[0]:
            best = (key, red, h)
    return best[1], best[2]


def _float_region_is_11(a, b, c) -> bool:
    return psi1(a, c) > _FLOAT_GUARD and psi1(b, c) > _FLOAT_GUARD


def _exact_step(dp: DeltaPoint) -> tuple[tuple, Symmetry, str]:
    res = farthest_fundamental(dp, check=False)
    red, h = _select(dp, res)
    return red[:3], h, res.region.tag


def iterate_orbit(p, max_steps: int = 500, exact_steps: int = 8, tol: float = 1e-12) -> Orbit:
    """Iterates q_{j+1} = iota(f(q_j)) from q_0 = p.

    Work happens in Delta coordinates while the accumulated symmetry G maps
    the current iterate of the original orbit into Delta.  The first
    ``exact_steps`` steps are exact; afterwards floats are used, with the
    exact step (on the float's exact binary value) whenever the iterate is
    outside the clear interior of D11.
    """
    if exact_steps > max_steps:
        raise ValueError("exact_steps must not exceed max_steps")
    p = point(p)
    dp = reduce_to_fundamental(p)
    G = dp.witness
    orbit = Orbit(start=p)
    cur = dp.abc
    region = classify_delta(dp).tag
    orbit.steps.append(OrbitStep(0, cur, p, region, True))
    for j in range(max_steps):
        exact = j < exact_steps
        if exact:
            nxt, h, _ = _exact_step(DeltaPoint(*cur))
        else:
            a, b, c = (float(x) for x in cur)
            if _float_region_is_11(a, b, c):
                nxt, h = (_phi1_float(c, a), _phi1_float(c, b), c), None
            else:
                q = DeltaPoint(Fraction(a), Fraction(b), Fraction(c))
                ex, h, _ = _exact_step(q)
                nxt = tuple(float(x) for x in ex)
        if h is not None:
            G = h.compose(G)
        orig = G.inverse()(tuple(nxt) + (0,))
        if exact:
            region = classify_delta(DeltaPoint(*nxt)).tag
        else:
            region = _float_region_tag(*nxt)
        orbit.steps.append(OrbitStep(j + 1, tuple(nxt), orig, region, exact))
        if exact:
            orbit.exact_prefix_len = j + 2
        diff = max(abs(float(x) - float(y)) for x, y in zip(nxt, cur))
        cur = tuple(nxt)
        if diff < tol:
            orbit.converged = True
            orbit.n_steps = j
            break
    else:
        orbit.n_steps = max_steps
    if orbit.converged:
        orbit.limit_delta = cur
        orbit.limit = orbit.steps[-1].point
    return orbit


def _float_region_tag(a, b, c) -> str:
    vals = (psi1(a, c), psi1(b, c))
    if all(v > _FLOAT_GUARD for v in vals):
        return "D11"
    exact = DeltaPoint(Fraction(a), Fraction(b), Fraction(c))
    return classify_delta(exact).tag


# ---------------------------------------------------------------------------
# Blow-up coordinates and descent checks

INF = math.inf


def blowup_coords(p) -> tuple:
    """(r_xz, r_2, r_yz) = (a/c, (a - c)/c^2, b/c); infinite when c = 0."""
    dp = as_delta(p)
    a, b, c = dp.abc
    if c == 0:
        return (INF, INF, INF)
    return (a / c, (a - c) / (c * c), b / c)


# Small-|p| window: strictly below the smallest landmark coordinates
# a_22A2 = 0.259158..., c_22A2 = 0.057262... (see landmarks()).
SMALL_A = Fraction(2591, 10000)
SMALL_C = Fraction(5726, 100000)


@dataclass
class DescentReport:
    window: str
    in_window: bool
    holds: bool | None = None
    margins: dict = field(default_factory=dict)


def descent_windows(p) -> list[str]:
    """Hypothesis windows containing p."""
    dp = as_delta(p)
    a, b, c = dp.abc
    if c == 0 or a == b == c or not (a < SMALL_A and c < SMALL_C):
        return []
    region = classify_delta(dp)
    members = set(region.members)
    r_xz, r_2, r_yz = blowup_coords(dp)
    out = []
    if members & {"D21", "D22A", "D22B"}:
        if r_xz > 3:
            out.append("xz_drop")
        if r_xz < Fraction(3535, 1000):
            out.append("r2_drop")
    if members & {"D31", "D32A"}:
        out.append("xz_identity")
    if "D33" in members:
        out.append("yz_drop")
    return out


def _next_delta(dp: DeltaPoint) -> DeltaPoint:
    red, _ = _select(dp, farthest_fundamental(dp, check=False))
    return DeltaPoint(*red[:3])


def check_descent(p, window: str | None = None) -> list[DescentReport]:
    """Evaluate the descent inequalities for the windows containing p."""
    dp = as_delta(p)
    windows = descent_windows(dp)
    if window is not None:
        if window not in windows:
            return [DescentReport(window, False)]
        windows = [window]
    if not windows:
        return [DescentReport("none", False)]
    a, b, c = dp.abc
    nq = _next_delta(dp)
    r = blowup_coords(dp)
    rn = blowup_coords(nq)
    out = []
    for w in windows:
        if w == "xz_drop":
            m = r[0] - 1 - rn[0]
            out.append(DescentReport(w, True, m > 0, {"drop_minus_1": m}))
        elif w == "r2_drop":
            m1 = r[0] - rn[0]
            m2 = r[1] - 6
            m3 = r[1] - 4 - rn[1]
            out.append(DescentReport(w, True, m1 > 0 and m2 > 0 and m3 > 0,
                                     {"xz_drop": m1, "r2_minus_6": m2, "r2_drop_minus_4": m3}))
        elif w == "xz_identity":
            lhs = rn[0] - r[0] + 1
            rhs = -(a - 3 * c) * (a - c) / (2 * c * (1 - c))
            out.append(DescentReport(w, True, lhs == rhs and rhs < 0 and r[0] > 4,
                                     {"lhs": lhs, "rhs": rhs, "r_xz_minus_4": r[0] - 4}))
        elif w == "yz_drop":
            m = r[2] - 1 - rn[2]
            out.append(DescentReport(w, True, m > 0 and r[2] > 4, {"drop_minus_1": m, "r_yz_minus_4": r[2] - 4}))
    return out


# ---------------------------------------------------------------------------
# Limit sets


@dataclass
class LimitSample:
    start: tuple
    limit: tuple | None
    c_start: Fraction
    c_limit: float | None
    deviation: float
    converged: bool
    same_facet: bool


def limit_set_summary(samples: Iterable, floor: float = 1e-6, **orbit_kw) -> dict:
    """Run orbits from each start and summarize their limits."""
    rows = []
    for s in samples:
        s = point(s)
        if len(s) == 3:
            s = s + (Fraction(0),)
        orb = iterate_orbit(s, **orbit_kw)
        dp = reduce_to_fundamental(s)
        c_lim = None if orb.limit_delta is None else float(min(orb.limit_delta))
        same = False
        if orb.limit is not None:
            start_facets = {(k, int(x)) for k, x in enumerate(s) if x in (0, 1)}
            lim_facets = {(k, round(float(x))) for k, x in enumerate(orb.limit)
                          if abs(float(x)) < 1e-9 or abs(float(x) - 1) < 1e-9}
            same = bool(start_facets & lim_facets)
        rows.append(LimitSample(s, orb.limit, dp.c, c_lim, orb.diagonal_deviation(), orb.converged, same))
    conv = [r for r in rows if r.converged]
    low = [r for r in rows if r.c_start > 0 and (r.c_limit is None or r.c_limit < floor)]
    return {
        "samples": len(rows),
        "converged": len(conv),
        "max_deviation": max((r.deviation for r in conv), default=0.0),
        "below_floor": [r.start for r in low],
        "rows": rows,
    }


# ---------------------------------------------------------------------------
# Small-|p| landmarks


def _corner_gap(t1, t2):
    """|p_U - c(t1)|^2 - |p_U - c(t2)|^2 in floats."""
    from .corners import _closed_forms
    from .cube import goal_closed_forms

    def gap(a, b, c):
        forms = _closed_forms(a, b, c)
        u = goal_closed_forms(a, b, c)["U"][:3]
        d1 = sum((x - y) ** 2 for x, y in zip(forms[frozenset(t1)], u))
        d2 = sum((x - y) ** 2 for x, y in zip(forms[frozenset(t2)], u))
        return d1 - d2

    return gap


def _root(f, lo, hi, xtol=1e-15):
    from scipy.optimize import brentq

    return brentq(f, lo, hi, xtol=xtol)


def _on_psi2_diagonal(gap, a0, across=False):
    """a = b, psi2(a, c) = 0, gap = 0; solved along the curve in a."""

    def c_of(a):
        return _root(lambda c: psi2(a, c), 0.0, a)

    def h(a):
        c = c_of(a)
        if not across:
            return gap(a, a, c)
        # the gap vanishes on the whole plane a = b; use its slope across it
        eps = 1e-5
        return (gap(a, a + eps, c) - gap(a, a - eps, c)) / (2 * eps)

    a = _root(h, a0 - 0.005, a0 + 0.005)
    return (a, a, c_of(a))


def _on_psi2_psi1(gap, p0):
    """psi2(a, c) = 0, psi1(b, c) = 0, gap = 0; solved along the curve in c."""

    def ab_of(c):
        return _root(lambda a: psi2(a, c), 0.0, 0.5), _root(lambda b: psi1(b, c), 0.0, 0.3)

    c = _root(lambda c: gap(*ab_of(c), c), p0[2] - 0.005, p0[2] + 0.005)
    return ab_of(c) + (c,)


# name -> (printed approximation, corner triples with equal distance)
_LANDMARKS = {
    "p21": ((0.2864, 0.09847, 0.06212), ("B", "D", "RD"), ("B", "RD", "R")),
    "p22A1": ((0.3282, 0.3282, 0.06898), ("BD", "D", "RD"), ("B", "BD", "RD")),
    "p22A2": ((0.2591, 0.2591, 0.05726), ("B", "BD", "RD"), ("B", "RD", "R")),
    "p31": ((0.2864, 0.09847, 0.06212), ("B", "D", "RD"), ("B", "RD", "UR")),
    "p32A1": ((0.3282, 0.3282, 0.06898), ("BD", "D", "RD"), ("B", "BD", "RD")),
    "p32A2": ((0.2591, 0.2591, 0.05726), ("B", "BD", "RD"), ("B", "RD", "UR")),
    "p32B1": ((0.3282, 0.3282, 0.06898), ("BD", "D", "RD"), ("BD", "RD", "UR")),
}


# equal distances hold on all of a = b here; the landmark is where the sign
# of the gap just off that plane changes
_ACROSS = ("p22A2", "p32A2")


def landmarks() -> dict[str, tuple[float, float, float]]:
    """Re-derive the small-|p| landmarks by root-finding on their defining equations.

    p21 and p31 lie on psi2(a, c) = psi1(b, c) = 0; the others on a = b,
    psi2(a, c) = 0.  The third equation equates two corner distances.
    """
    out = {}
    for name, (guess, t1, t2) in _LANDMARKS.items():
        gap = _corner_gap(t1, t2)
        if guess[0] == guess[1]:
            out[name] = _on_psi2_diagonal(gap, guess[0], across=name in _ACROSS)
        else:
            out[name] = _on_psi2_psi1(gap, guess)
    return out
