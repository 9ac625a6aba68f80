# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled nearest-site sweep over integer coordinates."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def nearest_sqdist(cnp.int64_t[:, :] sites, cnp.int64_t[:, :] points):
    """For each point, the min squared distance to a site and the first site attaining it."""
    cdef Py_ssize_t k = sites.shape[0], m = points.shape[0], d = sites.shape[1]
    cdef Py_ssize_t i, j, t
    cdef cnp.int64_t best, acc, diff
    cdef Py_ssize_t arg
    mins = np.empty(m, dtype=np.int64)
    args = np.empty(m, dtype=np.int64)
    cdef cnp.int64_t[:] mv = mins
    cdef cnp.int64_t[:] av = args
    if k == 0:
        raise ValueError("no sites")
    if points.shape[1] != d:
        raise ValueError("sites and points differ in dimension")
    with nogil:
        for i in range(m):
            best = -1
            arg = 0
            for j in range(k):
                acc = 0
                for t in range(d):
                    diff = points[i, t] - sites[j, t]
                    acc = acc + diff * diff
                if best < 0 or acc < best:
                    best = acc
                    arg = j
            mv[i] = best
            av[i] = arg
    return mins, args
