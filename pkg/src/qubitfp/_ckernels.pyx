# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled implementations of the hot kernels (see qubitfp._pykernels)."""

import numpy as np

cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()


def positive_matrix(p, q, r):
    """Accept-probability matrix of a one-bit scheme (compiled)."""
    cdef double[::1] pv = np.ascontiguousarray(p, dtype=np.float64)
    cdef double[::1] qv = np.ascontiguousarray(q, dtype=np.float64)
    cdef double[::1] rv = np.ascontiguousarray(r, dtype=np.float64)
    cdef Py_ssize_t sa = pv.shape[0]
    cdef Py_ssize_t sb = qv.shape[0]
    out = np.empty((sa, sb), dtype=np.float64)
    cdef double[:, ::1] ov = out
    cdef Py_ssize_t i, j
    cdef double pa, qb
    cdef double r00 = rv[0], r01 = rv[1], r10 = rv[2], r11 = rv[3]
    for i in range(sa):
        pa = pv[i]
        for j in range(sb):
            qb = qv[j]
            ov[i, j] = (
                r00 * ((1.0 - pa) * (1.0 - qb))
                + r01 * ((1.0 - pa) * qb)
                + r10 * (pa * (1.0 - qb))
                + r11 * (pa * qb)
            )
    return out


def wplus_curve(cs, m, n, gmin):
    """Worst-case false-positive curve over asymmetry values (compiled)."""
    cdef double[::1] cv = np.ascontiguousarray(cs, dtype=np.float64)
    cdef double[::1] mv = np.ascontiguousarray(m, dtype=np.float64)
    cdef double[::1] nv = np.ascontiguousarray(n, dtype=np.float64)
    cdef double[::1] gv = np.ascontiguousarray(gmin, dtype=np.float64)
    cdef Py_ssize_t nc = cv.shape[0]
    cdef Py_ssize_t ns = mv.shape[0]
    out = np.empty(nc, dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i, b
    cdef double c2, val, best
    for i in range(nc):
        c2 = cv[i] * cv[i]
        best = (c2 / ((mv[0] + c2 * nv[0]) * (1.0 + c2))) * gv[0]
        for b in range(1, ns):
            val = (c2 / ((mv[b] + c2 * nv[b]) * (1.0 + c2))) * gv[b]
            if val < best:
                best = val
        ov[i] = 1.0 - best
    return out


def repel_pack(points, int iters, double step_start, double step_end):
    """Inverse-cube repulsion packing on the unit sphere (compiled)."""
    pts = np.array(points, dtype=np.float64)
    cdef double[:, ::1] pv = pts
    cdef Py_ssize_t count = pv.shape[0]
    force = np.empty((count, 3), dtype=np.float64)
    cdef double[:, ::1] fv = force
    cdef double decay = (step_end / step_start) ** (1.0 / max(iters - 1, 1))
    cdef double step = step_start
    cdef Py_ssize_t t, i, j
    cdef double dx, dy, dz, dist2, w, norm
    for t in range(iters):
        for i in range(count):
            fv[i, 0] = 0.0
            fv[i, 1] = 0.0
            fv[i, 2] = 0.0
            for j in range(count):
                if j == i:
                    continue
                dx = pv[i, 0] - pv[j, 0]
                dy = pv[i, 1] - pv[j, 1]
                dz = pv[i, 2] - pv[j, 2]
                dist2 = dx * dx + dy * dy + dz * dz
                if dist2 < 1e-18:
                    dist2 = 1e-18
                w = 1.0 / (dist2 * dist2)
                fv[i, 0] += dx * w
                fv[i, 1] += dy * w
                fv[i, 2] += dz * w
        for i in range(count):
            norm = sqrt(fv[i, 0] * fv[i, 0] + fv[i, 1] * fv[i, 1] + fv[i, 2] * fv[i, 2])
            if norm < 1e-30:
                norm = 1.0
            pv[i, 0] += step * (fv[i, 0] / norm)
            pv[i, 1] += step * (fv[i, 1] / norm)
            pv[i, 2] += step * (fv[i, 2] / norm)
            norm = sqrt(pv[i, 0] * pv[i, 0] + pv[i, 1] * pv[i, 1] + pv[i, 2] * pv[i, 2])
            pv[i, 0] /= norm
            pv[i, 1] /= norm
            pv[i, 2] /= norm
        step *= decay
    return pts
