"""Brute-force geodesic distances on the n-cube boundary.

Every simple chain of adjacent facets from the facet of p to the facet of q
is unfolded into the chart of q's facet.  A chain is accepted only when the
straight segment from the unfolded p to q passes through the unfolded shared
faces in order; the shortest accepted segment is the geodesic distance.
This never looks at the source-image tables used elsewhere.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .cube import (
    DomainError,
    as_delta,
    dist_on_surface,
    dist_to_goal,
    facet,
    facet_name,
    facets,
    on_boundary,
    src_facet,
    unfold_seq,
)
from .exact import format_point, format_rat, point, rat, sqdist
from .kernels import common_scale, nearest_sqdist, nearest_sqdist_int


def _names(seq, n):
    return "".join(facet_name(f, n) for f in seq) if n <= 4 else seq


def enumerate_sequences(fsrc, fdst, max_len: int, n: int = 4) -> list[tuple]:
    """Chains of pairwise adjacent, non-repeating facets from fsrc to fdst.

    Lengths count facets, so a single facet has length 1.  Facets are
    returned as letters for n <= 4 and as (axis, side) pairs otherwise.
    """
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    return [_names(s, n) for s in _sequences(facet(fsrc, n), facet(fdst, n), max_len, n)]


@lru_cache(maxsize=None)
def _sequences(src, dst, max_len, n) -> tuple:
    out = []
    all_f = facets(n)

    def grow(chain):
        last = chain[-1]
        if last == dst:
            out.append(tuple(chain))
            return
        if len(chain) == max_len:
            return
        for f in all_f:
            if f[0] != last[0] and f not in chain:
                chain.append(f)
                grow(chain)
                chain.pop()

    grow([src])
    out.sort(key=lambda s: (len(s), s))
    return tuple(out)


@dataclass(frozen=True)
class UnfoldingCandidate:
    seq: tuple  # facets from p's facet to q's facet
    unfold: object  # Isometry aff(first) -> aff(last)
    windows: tuple  # (lo, hi) boxes in aff(last), nearest-to-p first


def _face_box(f, g, n):
    lo = [Fraction(0)] * n
    hi = [Fraction(1)] * n
    for axis, side in (f, g):
        lo[axis] = hi[axis] = Fraction(side)
    return tuple(lo), tuple(hi)


@lru_cache(maxsize=None)
def _candidates(src, dst, max_len, n) -> tuple:
    out = []
    for seq in _sequences(src, dst, max_len, n):
        rev = tuple(reversed(seq))
        phi = unfold_seq(rev, n)
        windows = []
        for k in range(len(seq) - 1):
            lo, hi = _face_box(seq[k], seq[k + 1], n)
            # the face lies in seq[k+1]; unfold from there to the last facet
            psi = unfold_seq(rev[: len(seq) - k - 1], n)
            a, b = psi(lo), psi(hi)
            windows.append((tuple(min(x, y) for x, y in zip(a, b)), tuple(max(x, y) for x, y in zip(a, b))))
        out.append(UnfoldingCandidate(seq, phi, tuple(windows)))
    return tuple(out)


def _clip(p, q, lo, hi):
    """Parameter interval of p + t (q - p), t in [0, 1], inside the box."""
    t0, t1 = Fraction(0), Fraction(1)
    for x, y, l, h in zip(p, q, lo, hi):
        d = y - x
        if d == 0:
            if x < l or x > h:
                return None
            continue
        a, b = (l - x) / d, (h - x) / d
        if a > b:
            a, b = b, a
        t0, t1 = max(t0, a), min(t1, b)
        if t0 > t1:
            return None
    return t0, t1


def segment_crosses(p, q, windows) -> bool:
    """True when the segment meets the windows in order (nondecreasing t)."""
    t = Fraction(0)
    for lo, hi in windows:
        iv = _clip(p, q, lo, hi)
        if iv is None or iv[1] < t:
            return False
        t = max(t, iv[0])
    return True


class OracleUnresolved(RuntimeError):
    """No unfolding up to max_len carries a straight surface path."""


@dataclass
class OracleResult:
    sq_dist: Fraction
    seq: tuple
    candidates: int


def _surface_facets(p, n):
    return [(k, int(x)) for k, x in enumerate(p) if x == 0 or x == 1]


def oracle_distance_detail(p, q, max_len: int = 5) -> OracleResult:
    p, q = point(p), point(q)
    n = len(p)
    if len(q) != n or not (on_boundary(p) and on_boundary(q)):
        raise DomainError("both points must lie on the cube boundary")
    if p == q:
        return OracleResult(Fraction(0), (), 0)
    best = None
    count = 0
    fq = _surface_facets(q, n)
    for fp in _surface_facets(p, n):
        for dst in fq:
            ranked = []
            for cand in _candidates(fp, dst, max_len, n):
                img = cand.unfold(p)
                ranked.append((sqdist(img, q), cand, img))
            ranked.sort(key=lambda r: r[0])
            count += len(ranked)
            for d, cand, img in ranked:
                if best is not None and d >= best[0]:
                    break
                if segment_crosses(img, q, cand.windows):
                    best = (d, cand.seq)
                    break
    if best is None:
        raise OracleUnresolved(f"no valid unfolding with max_len={max_len}")
    return OracleResult(rat(best[0]), _names(best[1], n), count)


def oracle_distance(p, q, max_len: int = 5) -> Fraction:
    """Squared geodesic distance by exhaustive unfolding."""
    return oracle_distance_detail(p, q, max_len).sq_dist


# ---------------------------------------------------------------------------
# Grid farthest search


def _iota_delta_grid(m: int) -> np.ndarray:
    """Integer grid indices (i, j, k), m/2 <= i <= j <= k <= m."""
    return np.array(
        [(i, j, k) for i in range(m // 2, m + 1) for j in range(i, m + 1) for k in range(j, m + 1)],
        dtype=np.int64,
    )


def _facet_grid(m: int, f, n: int = 4) -> np.ndarray:
    axis, side = f
    idx = np.array(list(itertools.product(range(m + 1), repeat=n - 1)), dtype=np.int64)
    return np.insert(idx, axis, side * m, axis=1)


def _grid_argmax(sites, grid: np.ndarray, m: int, backend):
    """Grid rows (indices / m) farthest from their nearest site, exactly."""
    scale = common_scale([x for row in sites for x in row] + [Fraction(1, m)])
    site_int = [tuple(int(x * scale) for x in row) for row in sites]
    mins, _ = nearest_sqdist_int(site_int, grid * (scale // m), backend)
    top = int(max(mins))
    rows = [tuple(Fraction(int(v), m) for v in grid[i]) for i in np.flatnonzero(mins == top)]
    return rows, Fraction(top, scale * scale)


@dataclass
class GridFarthest:
    points: list
    sq_dist: Fraction
    step: Fraction
    facets: tuple = field(default_factory=tuple)


def oracle_farthest(p, grid_step, full: bool = False, backend: str | None = None) -> GridFarthest:
    """Grid argmax of the distance from p in Delta.

    The default searches the grid on iota(Delta) inside G; ``full`` searches
    the grids of all eight facets.  Distances to a facet are nearest-image
    distances, so the sweep is an exact integer nearest-site search.
    """
    step = rat(grid_step)
    if step <= 0 or (1 / step).denominator != 1 or int(1 / step) % 2:
        raise ValueError("grid_step must be 1/m with m even")
    dp = as_delta(p)

    m = int(1 / step)
    if not full:
        sites = [img.point[:3] for img in src_facet(dp, "G")]
        rows, d = _grid_argmax(sites, _iota_delta_grid(m), m, backend)
        return GridFarthest([r + (Fraction(1),) for r in rows], d, step, ("G",))
    best, pts, where = None, [], []
    for name in "SDFLRBUG":
        sites = [img.point for img in src_facet(dp, name)]
        cand, d = _grid_argmax(sites, _facet_grid(m, facet(name)), m, backend)
        if best is None or d > best:
            best, pts, where = d, cand, [name]
        elif d == best:
            pts += [q for q in cand if q not in pts]
            where.append(name)
    return GridFarthest(pts, best, step, tuple(where))


# ---------------------------------------------------------------------------
# Audit of the source-image distance against the oracle


@dataclass
class AuditReport:
    pairs: int
    mismatches: list
    max_len: int
    saturated: bool

    @property
    def ok(self) -> bool:
        return not self.mismatches and self.saturated

    def to_json(self) -> dict:
        return {
            "schema": "cubefar.eq11_audit/1",
            "pairs": self.pairs,
            "mismatches": self.mismatches,
            "max_len": self.max_len,
            "saturated": self.saturated,
        }


def random_delta_point(rng: random.Random, den: int = 60) -> tuple:
    v = sorted((Fraction(rng.randint(0, den // 2), den) for _ in range(3)), reverse=True)
    return tuple(v)


def audit_pairs(n_goal: int, n_other: int, seed: int = 0, grid=Fraction(1, 8)) -> list[tuple]:
    """(p, q) pairs: q on the grid of G, then q on random grid points of other facets."""
    rng = random.Random(seed)
    m = int(1 / rat(grid))
    pairs = []
    for _ in range(n_goal):
        p = random_delta_point(rng)
        q = tuple(Fraction(rng.randint(0, m), m) for _ in range(3)) + (Fraction(1),)
        pairs.append((p, q))
    others = "SDFLRBU"
    for i in range(n_other):
        p = random_delta_point(rng)
        axis, side = facet(others[i % len(others)])
        c = [Fraction(rng.randint(0, m), m) for _ in range(3)]
        c.insert(axis, Fraction(side))
        pairs.append((p, tuple(c)))
    return pairs


def eq11_audit(pairs: Iterable[tuple], max_len: int = 5, check_len: int | None = None) -> AuditReport:
    """Exact comparison of the source-image distance with the oracle.

    With ``check_len`` the oracle is also run at that length and the pair
    counts as saturated when the value does not change.
    """
    mismatches = []
    saturated = True
    count = 0
    for p, q in pairs:
        count += 1
        p4 = tuple(p) + (Fraction(0),) if len(p) == 3 else tuple(p)
        expected = dist_to_goal(p, q)[0] if q[3] == 1 else dist_on_surface(p, q)
        try:
            res = oracle_distance_detail(p4, q, max_len)
        except OracleUnresolved:
            mismatches.append({"p": format_point(p4), "q": format_point(q), "expected": format_rat(expected),
                               "got": None, "seq": None})
            continue
        if res.sq_dist != expected:
            mismatches.append({"p": format_point(p4), "q": format_point(q), "expected": format_rat(expected),
                               "got": format_rat(res.sq_dist), "seq": "".join(res.seq) if res.seq else ""})
        if check_len is not None and oracle_distance(p4, q, check_len) != res.sq_dist:
            saturated = False
    return AuditReport(count, mismatches, max_len, saturated)


def nearest_image_sqdist(p, qs: Sequence, facet_name_: str = "G", backend: str | None = None) -> list[Fraction]:
    """Squared distances from p in Delta to many points of one facet."""
    sites = [img.point for img in src_facet(as_delta(p), facet_name_)]
    mins, _ = nearest_sqdist(sites, [point(q) for q in qs], backend)
    return mins
