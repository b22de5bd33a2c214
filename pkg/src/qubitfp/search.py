"""Optimization over the asymmetry parameter and Bloch-sphere packing.

Fixing Alice's fingerprints, the worst-case false-positive rate of the
derived strict scheme is a piecewise-smooth function of the asymmetry
parameter c with kinks where the binding pair changes.  ``optimize_c`` scans
a log-uniform grid (symmetric about c = 1 so the c <-> 1/c relabeling cannot
bias it) and refines the best bracket by golden section, which needs no
derivatives and tolerates the kinks.

``symmetric_optimality_check`` evaluates advisory geometric criteria under
which no asymmetric scheme can beat the symmetric one; they gate nothing and
are cross-validated against the optimizer.  ``pack_states`` spreads s states
on the Bloch sphere by deterministic pairwise repulsion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels, qlin, rngutil, strictq

SYMMETRIC_FORCED = "symmetric-forced"
ASYMMETRIC_CANDIDATE = "asymmetric-candidate"

CRIT_EQUATOR = "equator"
CRIT_OPPOSITE_SIDES = "opposite-sides"
CRIT_TWO_PAIRS_OPPOSITE = "two-pairs-opposite"
CRIT_NON_UNIQUE_MAX = "non-unique-max-pair"

#: Overlap ties and equator membership are resolved at this tolerance.
TIE_TOL = 1e-9

_GRID_LO, _GRID_HI = 1e-3, 1e3
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def _curve_inputs(alice: strictq.FingerprintSet):
    mags = alice.overlap_magnitudes()
    gaps = 1.0 - mags * mags
    np.fill_diagonal(gaps, np.inf)
    gmin = gaps.min(axis=0)  # per Bob-string minimum over Alice partners
    m = np.abs(alice.states[:, 0]) ** 2
    n = np.abs(alice.states[:, 1]) ** 2
    return m, n, gmin


def wplus_for_alice(alice: strictq.FingerprintSet, c) -> np.ndarray | float:
    """Worst-case false-positive rate of the scheme derived at asymmetry c."""
    m, n, gmin = _curve_inputs(alice)
    cs = np.atleast_1d(np.asarray(c, dtype=float))
    out = kernels.wplus_curve(cs, m, n, gmin)
    return float(out[0]) if np.isscalar(c) or np.ndim(c) == 0 else out


@dataclass(frozen=True)
class CSearchResult:
    """Outcome of the one-dimensional asymmetry search.

    ``curve`` holds the grid samples as an (n, 2) array of (c, error) rows;
    ``symmetric_error`` is the exact value at c = 1.
    """

    best_c: float
    best_error: float
    curve: np.ndarray
    symmetric_error: float


def optimize_c(alice: strictq.FingerprintSet, grid_points: int = 256, refine_iters: int = 64) -> CSearchResult:
    """Minimize the worst-case error over the asymmetry parameter.

    Log-uniform grid over [1e-3, 1e3] followed by golden-section refinement
    of the bracket around the best sample.  c = 1 is always evaluated, so the
    result can never lose to the symmetric scheme.
    """
    if grid_points < 64:
        raise ValueError("grid_points must be at least 64")
    m, n, gmin = _curve_inputs(alice)

    def objective(c: float) -> float:
        return float(kernels.wplus_curve(np.array([c]), m, n, gmin)[0])

    symmetric_error = objective(1.0)
    best_c, best_error = 1.0, symmetric_error

    cs = np.exp(np.linspace(math.log(_GRID_LO), math.log(_GRID_HI), grid_points))
    values = kernels.wplus_curve(cs, m, n, gmin)
    curve = np.column_stack([cs, values])
    idx = int(np.argmin(values))
    if values[idx] < best_error:
        best_c, best_error = float(cs[idx]), float(values[idx])

    lo = math.log(cs[max(idx - 1, 0)])
    hi = math.log(cs[min(idx + 1, grid_points - 1)])
    x1 = hi - _INVPHI * (hi - lo)
    x2 = lo + _INVPHI * (hi - lo)
    f1 = objective(math.exp(x1))
    f2 = objective(math.exp(x2))
    for _ in range(refine_iters):
        if f1 < best_error:
            best_c, best_error = math.exp(x1), f1
        if f2 < best_error:
            best_c, best_error = math.exp(x2), f2
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INVPHI * (hi - lo)
            f1 = objective(math.exp(x1))
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INVPHI * (hi - lo)
            f2 = objective(math.exp(x2))
    for x, f in ((x1, f1), (x2, f2)):
        if f < best_error:
            best_c, best_error = math.exp(x), f
    return CSearchResult(best_c=best_c, best_error=best_error, curve=curve, symmetric_error=symmetric_error)


@dataclass(frozen=True)
class OptimalityDiagnosis:
    """Advisory verdict on whether asymmetry could beat the symmetric scheme.

    ``max_pairs`` lists the label pairs attaining the largest overlap (ties
    within ``TIE_TOL``); the verdict is forced symmetric when any criterion
    fired.  The criteria are necessary-condition heuristics, not theorems.
    """

    max_pairs: tuple[tuple[str, str], ...]
    verdict: str
    fired: frozenset[str]


def _side(state) -> int:
    """-1 south (closer to |1>), 0 equator, +1 north (closer to |0>)."""
    gap = abs(state[0]) - abs(state[1])
    if abs(gap) <= TIE_TOL:
        return 0
    return 1 if gap > 0.0 else -1


def symmetric_optimality_check(alice: strictq.FingerprintSet) -> OptimalityDiagnosis:
    """Geometric screening of Alice's states for forced symmetric optimality.

    Criteria on the maximal-overlap pairs: a member on the Bloch equator,
    members on opposite sides of it, two maximal pairs wholly on opposite
    sides, or a non-unique maximal pair.
    """
    mags = alice.overlap_magnitudes()
    s = alice.size
    dmax = float(mags.max())
    pairs = [
        (i, j)
        for i in range(s)
        for j in range(i + 1, s)
        if dmax - mags[i, j] <= TIE_TOL
    ]
    fired = set()
    sides = [ _side(st) for st in alice.states ]
    for i, j in pairs:
        if sides[i] == 0 or sides[j] == 0:
            fired.add(CRIT_EQUATOR)
        if sides[i] * sides[j] == -1:
            fired.add(CRIT_OPPOSITE_SIDES)
    pair_side = {
        (i, j): sides[i] if sides[i] == sides[j] else 0 for (i, j) in pairs
    }
    if any(v == 1 for v in pair_side.values()) and any(v == -1 for v in pair_side.values()):
        fired.add(CRIT_TWO_PAIRS_OPPOSITE)
    if len(pairs) > 1:
        fired.add(CRIT_NON_UNIQUE_MAX)
    return OptimalityDiagnosis(
        max_pairs=tuple((alice.strings[i], alice.strings[j]) for i, j in pairs),
        verdict=SYMMETRIC_FORCED if fired else ASYMMETRIC_CANDIDATE,
        fired=frozenset(fired),
    )


def _bloch_to_state(vec) -> np.ndarray:
    x, y, z = vec
    theta = math.acos(min(max(z, -1.0), 1.0))
    phi = math.atan2(y, x)
    return qlin.normalize_phase(
        np.array([math.cos(theta / 2.0), math.sin(theta / 2.0) * np.exp(1j * phi)])
    )


def pack_states(s: int, seed: int, iters: int = 1500) -> strictq.FingerprintSet:
    """Spread s fingerprints on the Bloch sphere by pairwise repulsion.

    Deterministic in (s, seed, iters): random unit vectors from a Philox
    stream keyed by (seed, s), then inverse-square repulsion with a decaying
    step.  For s = 3, 4, 6 the resulting worst overlap reaches the known
    optima (1/2, 1/sqrt3, 1/sqrt2) to about 1e-3.
    """
    if s < 3:
        raise ValueError("s must be at least 3")
    if iters < 1:
        raise ValueError("iters must be positive")
    rng = rngutil.stream(seed, s)
    pts = rng.normal(size=(s, 3))
    pts /= np.linalg.norm(pts, axis=1)[:, None]
    pts = kernels.repel_pack(pts, iters, 1e-1, 1e-4)
    return strictq.FingerprintSet.from_states(
        [f"s{i}" for i in range(s)], [_bloch_to_state(p) for p in pts]
    )
