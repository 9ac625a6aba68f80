"""Exact intrinsic geometry of the 3-cube and 4-cube surfaces.

Distances, farthest points and their iteration are computed in exact
rational arithmetic; a compiled nearest-site kernel speeds up grid sweeps
and falls back to numpy when the extension is unavailable.
"""

from .cube import DeltaPoint, DomainError, as_delta, dist4, dist_on_surface, dist_to_goal, iota
from .exact import format_point, format_rat, parse_point, parse_rat
from .farthest import FarthestResult, farthest, farthest_3cube, farthest_fundamental, iterate_orbit
from .kernels import BACKEND
from .oracle import oracle_distance, oracle_farthest
from .regions import classify_delta

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DeltaPoint",
    "DomainError",
    "FarthestResult",
    "as_delta",
    "classify_delta",
    "dist4",
    "dist_on_surface",
    "dist_to_goal",
    "farthest",
    "farthest_3cube",
    "farthest_fundamental",
    "format_point",
    "format_rat",
    "iota",
    "iterate_orbit",
    "oracle_distance",
    "oracle_farthest",
    "parse_point",
    "parse_rat",
]
