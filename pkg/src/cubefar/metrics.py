"""Intrinsic radius and diameter of the n-cube boundary."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .cube import HALF, DomainError, dist4, facets, iter_delta_grid
from .exact import format_point, format_rat
from .farthest import farthest_3cube, farthest_fundamental
from .oracle import _candidates, oracle_distance


@dataclass
class RadiusReport:
    n: int
    radius_sq: Fraction | float
    diameter_sq: Fraction | float
    witnesses: dict = field(default_factory=dict)
    exact: bool = True
    notes: dict = field(default_factory=dict)

    @property
    def radius(self) -> float:
        return math.sqrt(self.radius_sq)

    @property
    def diameter(self) -> float:
        return math.sqrt(self.diameter_sq)

    @property
    def ratio(self) -> float:
        return self.radius / self.diameter

    @staticmethod
    def _point(p):
        if all(isinstance(x, (int, Fraction)) for x in p):
            return format_point(p)
        return [float(x) for x in p]

    def to_json(self) -> dict:
        def val(x):
            return format_rat(x) if isinstance(x, Fraction) else float(x) if isinstance(x, np.floating) else x

        return {
            "schema": "cubefar.radius/1",
            "n": self.n,
            "status": "EXACT" if self.exact else "ESTIMATE",
            "radius_sq": val(self.radius_sq),
            "diameter_sq": val(self.diameter_sq),
            "radius": self.radius,
            "diameter": self.diameter,
            "ratio": self.ratio,
            "witnesses": {k: [self._point(p) for p in v] for k, v in self.witnesses.items()},
            "notes": {k: val(v) for k, v in self.notes.items()},
        }


def ratio_formula(n: int) -> float:
    """2 / sqrt(n + 2)."""
    return 2 / math.sqrt(n + 2)


def corner_ratio_formula(n: int) -> float:
    """(sqrt(n + 7) / 2) / sqrt(n + 2): radius realized by a corner."""
    return math.sqrt(n + 7) / 2 / math.sqrt(n + 2)


def center_corner_sqdist(n: int) -> Fraction:
    """Squared distance from (1/2, ..., 1/2, 0) to the corner (1, ..., 1)."""
    return Fraction(9, 4) + Fraction(n - 2, 4)


def _certify_radius_4(step) -> tuple[Fraction, tuple]:
    best = None
    for dp in iter_delta_grid(step):
        d = farthest_fundamental(dp, check=False).sq_dist
        if best is None or d < best[0]:
            best = (d, dp.point)
    return best


def _certify_radius_3(step) -> tuple[Fraction, tuple]:
    m = int(HALF / step)
    best = None
    for i in range(m + 1):
        for j in range(i + 1):
            a, b = i * step, j * step
            d = farthest_3cube((a, b)).sq_dist
            if best is None or d < best[0]:
                best = (d, (a, b, Fraction(0)))
    return best


def radius_diameter_exact(n: int, grid_step=Fraction(1, 16)) -> RadiusReport:
    """Exact radius and diameter for n = 2, 3, 4 with witnesses.

    The radius is certified on a grid of the fundamental domain: the minimum
    of d(p, f(p))^2 over the grid is reported as ``grid_min``.
    """
    step = Fraction(grid_step)
    h, z, o = HALF, Fraction(0), Fraction(1)
    if n == 2:
        r = oracle_distance((h, z), (h, o), max_len=3)
        d = oracle_distance((z, z), (o, o), max_len=3)
        return RadiusReport(2, r, d, {"radius": [(h, z), (h, o)], "diameter": [(z, z), (o, o)]})
    if n == 3:
        p, q = (h, h, z), (h, h, o)
        r = oracle_distance(p, q, max_len=4)
        d = oracle_distance((z, z, z), (o, o, o), max_len=4)
        gmin, at = _certify_radius_3(step)
        return RadiusReport(3, r, d, {"radius": [p, q], "diameter": [(z,) * 3, (o,) * 3]},
                            notes={"grid_min": gmin, "grid_argmin": format_point(at), "grid_step": step})
    if n == 4:
        p, q = (h, h, h, z), (h, h, h, o)
        r = dist4(p, q)
        d = dist4((z,) * 4, (o,) * 4)
        gmin, at = _certify_radius_4(step)
        return RadiusReport(4, r, d, {"radius": [p, q], "diameter": [(z,) * 4, (o,) * 4]},
                            notes={"grid_min": gmin, "grid_argmin": format_point(at), "grid_step": step})
    raise ValueError(f"exact values are available for n = 2, 3, 4, not {n}")


# ---------------------------------------------------------------------------
# Float unfolding distance for general n


@lru_cache(maxsize=None)
def _float_tables(src, dst, max_len, n):
    """Candidates grouped by length as numpy arrays."""
    groups = {}
    for cand in _candidates(src, dst, max_len, n):
        groups.setdefault(len(cand.seq), []).append(cand)
    out = []
    for length, cands in sorted(groups.items()):
        m = np.array([c.unfold.matrix for c in cands], dtype=float)
        t = np.array([c.unfold.offset for c in cands], dtype=float)
        if length > 1:
            lo = np.array([[w[0] for w in c.windows] for c in cands], dtype=float)
            hi = np.array([[w[1] for w in c.windows] for c in cands], dtype=float)
        else:
            lo = hi = np.zeros((len(cands), 0, n))
        out.append((m, t, lo, hi))
    return out


_EPS = 1e-12


def _facets_of(x: np.ndarray):
    return [(k, int(round(v))) for k, v in enumerate(x) if abs(v) < _EPS or abs(v - 1) < _EPS]


def _group_sqdist(p, src, dst, qs, max_len, best):
    """Update best (J,) with validated distances from p (on src) to qs (on dst)."""
    n = len(p)
    for m, t, lo, hi in _float_tables(src, dst, max_len, n):
        img = m @ p + t  # (K, n)
        d = qs[None, :, :] - img[:, None, :]  # (K, J, n)
        sq = (d * d).sum(axis=2)
        ok = sq < best[None, :]
        if not ok.any():
            continue
        tcur = np.zeros(sq.shape)
        flat = np.abs(d) < _EPS
        base = img[:, None, :]
        for w in range(lo.shape[1]):
            lw, hw = lo[:, w][:, None, :], hi[:, w][:, None, :]
            with np.errstate(divide="ignore", invalid="ignore"):
                a = (lw - base) / d
                b = (hw - base) / d
            inside = (base >= lw - _EPS) & (base <= hw + _EPS)
            a = np.where(flat, np.where(inside, -np.inf, np.inf), a)
            b = np.where(flat, np.where(inside, np.inf, -np.inf), b)
            t0 = np.maximum(np.minimum(a, b).max(axis=2), 0.0)
            t1 = np.minimum(np.maximum(a, b).min(axis=2), 1.0)
            ok &= (t0 <= t1 + _EPS) & (t1 >= tcur - _EPS)
            tcur = np.maximum(tcur, t0)
        cand = np.where(ok, sq, np.inf).min(axis=0)
        np.minimum(best, cand, out=best)


def unfolding_sqdist(p, qs, max_len: int = 4) -> np.ndarray:
    """Float squared distances from p to each q by validated unfolding.

    Returns inf where no unfolding up to ``max_len`` carries a straight path.
    """
    p = np.asarray(p, dtype=float)
    qs = np.atleast_2d(np.asarray(qs, dtype=float))
    n = len(p)
    best = np.full(len(qs), np.inf)
    best[np.all(np.abs(qs - p) < _EPS, axis=1)] = 0.0
    groups: dict = {}
    for j, q in enumerate(qs):
        for f in _facets_of(q):
            groups.setdefault(f, []).append(j)
    for src in _facets_of(p):
        for dst, idx in groups.items():
            idx = np.array(idx)
            sub = best[idx].copy()
            _group_sqdist(p, src, dst, qs[idx], max_len, sub)
            best[idx] = sub
    return best


def _probe_points(n: int, rng: np.random.Generator, extra: int) -> np.ndarray:
    """Corners, facet centers and random surface points."""
    pts = [np.ones(n), np.zeros(n)]
    for axis, side in facets(n):
        c = np.full(n, 0.5)
        c[axis] = side
        pts.append(c)
    r = rng.random((extra, n))
    axes = rng.integers(0, n, extra)
    r[np.arange(extra), axes] = rng.integers(0, 2, extra)
    return np.vstack([np.array(pts), r])


def _refine(p, q, max_len, rng, rounds=40, batch=32):
    """Random local search for a farther point on q's facet."""
    axis = _facets_of(q)[0][0]
    best_q, best_d = q, unfolding_sqdist(p, [q], max_len)[0]
    sigma = 0.1
    for _ in range(rounds):
        trial = best_q + rng.normal(0, sigma, (batch, len(q)))
        trial[:, axis] = q[axis]
        np.clip(trial, 0, 1, out=trial)
        d = unfolding_sqdist(p, trial, max_len)
        k = int(np.argmax(d))
        if d[k] > best_d:
            best_q, best_d = trial[k], d[k]
        else:
            sigma *= 0.7
    return best_q, best_d


def estimate_ratio_sampling(n: int, samples: int = 100, seed: int = 0, max_len: int | None = None,
                            probes: int = 400, refine: int = 4) -> RadiusReport:
    """Sampling estimate of radius, diameter and their ratio (never exact).

    Sources are the facet center, the corner and random points of facet
    x_n = 0.  For each source, d(p, f(p)) is estimated by the farthest of
    the probe targets (corners, facet centers, random surface points),
    refined by a local random search.
    """
    if n < 2:
        raise DomainError("n must be at least 2")
    max_len = max_len or min(n + 1, 4)
    rng = np.random.default_rng(seed)
    q = _probe_points(n, rng, probes)
    sources = [np.array([0.5] * (n - 1) + [0.0]), np.zeros(n)]
    for _ in range(max(samples - 2, 0)):
        sources.append(np.append(rng.random(n - 1), 0.0))
    rad, diam = None, None
    for s in sources:
        d = unfolding_sqdist(s, q, max_len)
        qk, dk = None, -1.0
        for k in np.argsort(d)[::-1][:refine]:
            qr, dr = _refine(s, q[k], max_len, rng)
            if dr > dk:
                qk, dk = qr, float(dr)
        if rad is None or dk < rad[0]:
            rad = (dk, tuple(s), tuple(qk))
        if diam is None or dk > diam[0]:
            diam = (dk, tuple(s), tuple(qk))
    rep = RadiusReport(n, rad[0], diam[0], {"radius": [rad[1], rad[2]], "diameter": [diam[1], diam[2]]},
                       exact=False)
    rep.notes.update({
        "samples": len(sources),
        "max_len": max_len,
        "formula_center": ratio_formula(n),
        "formula_corner": corner_ratio_formula(n),
        "center_to_corner_sq": float(center_corner_sqdist(n)),
    })
    return rep


def farthest_distance_field(n: int, grid_step=Fraction(1, 16)) -> list[tuple]:
    """Rows (coordinates..., d(p, f(p))^2) over the fundamental domain grid."""
    step = Fraction(grid_step)
    rows = []
    if n == 4:
        for dp in iter_delta_grid(step):
            rows.append(dp.abc + (farthest_fundamental(dp, check=False).sq_dist,))
    elif n == 3:
        m = int(HALF / step)
        for i in range(m + 1):
            for j in range(i + 1):
                a, b = i * step, j * step
                rows.append((a, b, farthest_3cube((a, b)).sq_dist))
    else:
        raise ValueError("the distance field is available for n = 3, 4")
    return rows


def field_csv(rows, n: int) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    head = ["a", "b", "c"] if n == 4 else ["a", "b"]
    w.writerow(head + ["sq_dist", "dist"])
    for r in rows:
        w.writerow([format_rat(x) for x in r] + [f"{math.sqrt(r[-1]):.15g}"])
    return buf.getvalue()
