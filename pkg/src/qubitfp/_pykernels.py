"""Numpy reference implementations of the hot kernels.

These are the import-time fallback when the compiled extension is missing;
see ``qubitfp.kernels`` for backend selection.  Expressions are parenthesized
exactly like their compiled counterparts so both backends round identically
wherever summation order allows.
"""

from __future__ import annotations

import numpy as np


def positive_matrix(p: np.ndarray, q: np.ndarray, r: np.ndarray) -> np.ndarray:
    """Accept-probability matrix of a one-bit scheme.

    Entry (i, j) is the probability of a positive result when Alice holds
    string i (send-1 probability p[i]) and Bob holds string j.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    pc = 1.0 - p
    qc = 1.0 - q
    return (
        r[0] * np.outer(pc, qc)
        + r[1] * np.outer(pc, q)
        + r[2] * np.outer(p, qc)
        + r[3] * np.outer(p, q)
    )


def wplus_curve(cs: np.ndarray, m: np.ndarray, n: np.ndarray, gmin: np.ndarray) -> np.ndarray:
    """Worst-case false-positive probability of derived-partner schemes.

    For each asymmetry value c, the per-string rejection coefficient is
    c^2 / ((m + c^2 n) (1 + c^2)) with m = |amp0|^2 and n = |amp1|^2 of
    Alice's state; gmin is the per-string minimum of 1 - |overlap|^2 over
    partners.  The worst case is 1 minus the smallest coefficient*gap.
    """
    cs = np.asarray(cs, dtype=float)
    c2 = (cs * cs)[:, None]
    k = c2 / ((m[None, :] + c2 * n[None, :]) * (1.0 + c2))
    return 1.0 - np.min(k * gmin[None, :], axis=1)


def repel_pack(points: np.ndarray, iters: int, step_start: float, step_end: float) -> np.ndarray:
    """Spread unit vectors on the sphere by inverse-cube pair repulsion.

    Deterministic descent: each iteration moves every point a fixed step
    along the direction of the summed 1/r^3 repulsion from the others, then
    renormalizes; the step decays geometrically.  The strong short-range
    weighting approximates max-min separation.  Returns a new (s, 3) array.
    """
    pts = np.array(points, dtype=float)
    count = pts.shape[0]
    decay = (step_end / step_start) ** (1.0 / max(iters - 1, 1))
    step = step_start
    eye = np.eye(count, dtype=bool)
    for _ in range(iters):
        diff = pts[:, None, :] - pts[None, :, :]
        dist2 = np.sum(diff * diff, axis=2)
        dist2[eye] = 1.0
        np.clip(dist2, 1e-18, None, out=dist2)
        force = np.sum(diff / (dist2 * dist2)[:, :, None], axis=1)
        norms = np.linalg.norm(force, axis=1)
        norms[norms < 1e-30] = 1.0
        pts += step * (force / norms[:, None])
        pts /= np.linalg.norm(pts, axis=1)[:, None]
        step *= decay
    return pts
