"""numpy fallback for the nearest-site sweep."""

import numpy as np


def nearest_sqdist(sites: np.ndarray, points: np.ndarray, chunk: int = 4096):
    """For each point, the min squared distance to a site and the first site attaining it."""
    sites = np.asarray(sites)
    points = np.asarray(points)
    if len(sites) == 0:
        raise ValueError("no sites")
    if points.shape[1] != sites.shape[1]:
        raise ValueError("sites and points differ in dimension")
    mins = np.empty(len(points), dtype=sites.dtype)
    args = np.empty(len(points), dtype=np.int64)
    for s in range(0, len(points), chunk):
        block = points[s:s + chunk]
        d = block[:, None, :] - sites[None, :, :]
        sq = (d * d).sum(axis=2)
        a = sq.argmin(axis=1)
        args[s:s + chunk] = a
        mins[s:s + chunk] = sq[np.arange(len(block)), a]
    return mins, args
