"""Command-line interface.

Exit codes: 0 success, 2 usage or domain error, 3 audit failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction

from .exact import format_point, format_rat, parse_point, parse_rat

EXIT_OK, EXIT_USAGE, EXIT_AUDIT = 0, 2, 3
SCHEMA = "cubefar/1"


class UsageError(Exception):
    pass


def _point(text: str, dim: int | None = None):
    try:
        return parse_point(text, dim)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _rat(text: str, name: str) -> Fraction:
    try:
        return parse_rat(text, f" in {name}")
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(obj, out=None) -> None:
    text = json.dumps(obj, indent=1)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _dist_report(sq: Fraction) -> dict:
    return {"sq_dist": format_rat(sq), "dist": f"{math.sqrt(sq):.15g}", "dist_precision": "15 significant digits"}


# ---------------------------------------------------------------------------
# Commands


def cmd_dist(args) -> int:
    from .cube import DomainError, dist4
    from .oracle import OracleUnresolved, oracle_distance

    n = args.n
    p, q = _point(args.p, n), _point(args.q, n)
    try:
        if n == 4:
            sq = dist4(p, q)
        else:
            sq = oracle_distance(p, q, args.max_len)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    out = {"schema": SCHEMA, "command": "dist", "n": n, "p": format_point(p), "q": format_point(q)}
    out.update(_dist_report(sq))
    if args.oracle:
        try:
            o = oracle_distance(p, q, args.max_len)
            out["oracle"] = {"sq_dist": format_rat(o), "max_len": args.max_len, "equal": o == sq}
        except OracleUnresolved as exc:
            out["oracle"] = {"warning": str(exc), "max_len": args.max_len}
    _emit(out, args.out)
    return EXIT_OK


def cmd_farthest(args) -> int:
    from .cube import DomainError
    from .farthest import farthest, farthest_3cube

    try:
        if args.n == 3:
            p = _point(args.p)
            res = farthest_3cube(p[:2])
        else:
            p = _point(args.p, 4)
            res = farthest(p)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    out = {"schema": SCHEMA, "command": "farthest", "n": args.n}
    out.update(res.to_json())
    if not args.all and args.n == 4:
        # keep one point per witness triple unless every copy is wanted
        seen, pts, wit = set(), [], []
        for q, w in zip(out["points"], out["witnesses"]):
            if w not in seen:
                seen.add(w)
                pts.append(q)
                wit.append(w)
        out["points"], out["witnesses"] = pts, wit
    _emit(out, args.out)
    return EXIT_OK


def cmd_classify(args) -> int:
    from .cube import DomainError, as_delta
    from .regions import classify_delta

    try:
        dp = as_delta(_point(args.p))
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    out = {"schema": SCHEMA, "command": "classify", "p": format_point(dp.abc)}
    out.update(classify_delta(dp).to_json())
    _emit(out, args.out)
    return EXIT_OK


def cmd_orbit(args) -> int:
    from .cube import DomainError
    from .farthest import blowup_coords, iterate_orbit

    p = _point(args.p, 4)
    tol = float(_rat(args.tol, "--tol"))
    try:
        orb = iterate_orbit(p, max_steps=args.steps, exact_steps=min(args.exact_steps, args.steps), tol=tol)
    except (DomainError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    rows = []
    for s in orb.steps:
        r = blowup_coords(tuple(Fraction(x) for x in s.delta)) if s.exact else _float_blowup(s.delta)
        rows.append((s, r))
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["step", "x", "y", "z", "w", "region", "exact", "r_xz", "r_2", "r_yz"])
        for s, r in rows:
            w.writerow([s.index] + [f"{float(x):.17g}" for x in s.point] + [s.region, int(s.exact)]
                       + [f"{float(v):.17g}" for v in r])
        text = buf.getvalue()
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    out = {
        "schema": SCHEMA,
        "command": "orbit",
        "start": format_point(p),
        "converged": orb.converged,
        "steps": orb.n_steps,
        "exact_prefix_len": orb.exact_prefix_len,
        "limit": [float(x) for x in orb.limit] if orb.limit else "unresolved",
        "limit_delta": [float(x) for x in orb.limit_delta] if orb.limit_delta else None,
        "trace": [
            {
                "step": s.index,
                "point": format_point(s.point) if s.exact else [float(x) for x in s.point],
                "region": s.region,
                "exact": s.exact,
                "blowup": [format_rat(v) if isinstance(v, Fraction) else float(v) for v in r],
            }
            for s, r in rows
        ],
    }
    _emit(out, args.out)
    return EXIT_OK


def _float_blowup(delta):
    a, b, c = (float(x) for x in delta)
    if c == 0:
        return (math.inf,) * 3
    return (a / c, (a - c) / (c * c), b / c)


def cmd_unfold(args) -> int:
    from . import cells
    from .cube import DomainError

    kind = args.kind
    try:
        if kind == "star3":
            p = _point(args.p)
            poly = cells.star_unfolding_3cube(p[:2])
            exact, off = poly.to_json(), cells.polygon_off(poly.vertices, args.precision)
        elif kind == "source4":
            cx = cells.source_unfolding(_point(args.p)[:3])
            exact, off = cx.to_json(), cells.to_off(cx, args.precision)
        elif kind == "voronoi":
            p = _point(args.p)
            if args.n == 3:
                cx = cells.voronoi_cells_on_facet(p[:2], args.facet, n=3)
                exact = cx.to_json()
                off = "".join(cells.polygon_off(c.vertices, args.precision) for c in cx.cells)
            else:
                cx = cells.voronoi_cells_on_facet(p[:3], args.facet)
                exact, off = cx.to_json(), cells.to_off(cx, args.precision)
        else:  # pragma: no cover - argparse restricts choices
            raise UsageError(f"unknown kind {kind}")
    except (DomainError, ValueError, KeyError) as exc:
        raise UsageError(str(exc)) from None
    if args.out:
        base, _ = os.path.splitext(args.out)
        with open(base + ".json", "w") as fh:
            json.dump(exact, fh, indent=1)
        if args.format == "off":
            with open(base + ".off", "w") as fh:
                fh.write(off)
        summary = {"schema": SCHEMA, "command": "unfold", "kind": kind, "files": [base + ".json"]
                   + ([base + ".off"] if args.format == "off" else [])}
        for key in ("total", "area"):
            if key in exact:
                summary[key] = exact[key]
        _emit(summary)
    elif args.format == "off":
        sys.stdout.write(off)
    else:
        _emit(exact)
    return EXIT_OK


def cmd_metrics(args) -> int:
    from .metrics import estimate_ratio_sampling, farthest_distance_field, field_csv, radius_diameter_exact

    if args.field:
        if args.n not in (3, 4):
            raise UsageError("--field needs n = 3 or 4")
        text = field_csv(farthest_distance_field(args.n, _rat(args.grid, "--grid")), args.n)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    if args.n in (2, 3, 4) and not args.estimate:
        rep = radius_diameter_exact(args.n, _rat(args.grid, "--grid"))
    else:
        if args.n < 2:
            raise UsageError("n must be at least 2")
        rep = estimate_ratio_sampling(args.n, args.samples, args.seed)
    _emit(rep.to_json(), args.out)
    return EXIT_OK


def cmd_audit(args) -> int:
    from .audit import SUITES, run_suite

    names = SUITES if args.suite == "all" else (args.suite,)
    results = [run_suite(s, _rat(args.grid, "--grid") if args.grid else None, args.seed) for s in names]
    out = {"schema": SCHEMA, "command": "audit", "passed": all(r.passed for r in results),
           "suites": [r.to_json() for r in results]}
    _emit(out, args.out)
    return EXIT_OK if out["passed"] else EXIT_AUDIT


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cubefar", description="Intrinsic geometry of cube surfaces.")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("dist", help="intrinsic distance between two surface points")
    s.add_argument("--p", required=True)
    s.add_argument("--q", required=True)
    s.add_argument("--n", type=int, default=4, choices=(2, 3, 4))
    s.add_argument("--oracle", action="store_true", help="also run the brute-force oracle")
    s.add_argument("--max-len", type=int, default=5)
    s.add_argument("--out")
    s.set_defaults(func=cmd_dist)

    s = sub.add_parser("farthest", help="farthest points of a surface point")
    s.add_argument("--p", required=True)
    s.add_argument("--n", type=int, default=4, choices=(3, 4))
    s.add_argument("--all", action="store_true", help="include symmetric copies")
    s.add_argument("--out")
    s.set_defaults(func=cmd_farthest)

    s = sub.add_parser("classify", help="region of a point of the fundamental domain")
    s.add_argument("--p", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("orbit", help="iterate the farthest-point map")
    s.add_argument("--p", required=True)
    s.add_argument("--steps", type=int, default=500)
    s.add_argument("--exact-steps", type=int, default=8)
    s.add_argument("--tol", default="1e-12")
    s.add_argument("--format", choices=("json", "csv"), default="json")
    s.add_argument("--out")
    s.set_defaults(func=cmd_orbit)

    s = sub.add_parser("unfold", help="star, source and Voronoi unfoldings")
    s.add_argument("--kind", choices=("star3", "source4", "voronoi"), required=True)
    s.add_argument("--p", required=True)
    s.add_argument("--facet", default="G")
    s.add_argument("--n", type=int, default=4, choices=(3, 4))
    s.add_argument("--format", choices=("json", "off"), default="json")
    s.add_argument("--precision", type=int, default=12)
    s.add_argument("--out")
    s.set_defaults(func=cmd_unfold)

    s = sub.add_parser("metrics", help="intrinsic radius and diameter")
    s.add_argument("--n", type=int, default=4)
    s.add_argument("--grid", default="1/16")
    s.add_argument("--estimate", action="store_true", help="sampling estimate even for n <= 4")
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--field", action="store_true", help="CSV of d(p, f(p))^2 over the grid")
    s.add_argument("--out")
    s.set_defaults(func=cmd_metrics)

    s = sub.add_parser("audit", help="grid audits; exit code 3 on failure")
    s.add_argument("--suite", choices=("eq11", "walls", "corners", "theorem7", "dynamics", "metrics", "all"),
                   required=True)
    s.add_argument("--grid")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_audit)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"cubefar: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
