"""One-bit equality fingerprinting schemes and their exact error analysis.

A scheme is three probability tables: Alice's and Bob's per-string chances of
sending the message 1, and the referee's four accept probabilities indexed by
the received bit pair.  Everything here is exact arithmetic on those tables;
the audit harness stress-tests the structural facts (a guaranteed confusable
pair, the coin-flip error floor, the quadratic count of confusable inputs,
and the product-form separation of the accept probability) on seeded random
schemes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels, rngutil

CROSS = "cross"
DEGENERATE = "degenerate"

#: Comparisons this close to a strict-inequality boundary are numerically
#: meaningless and are skipped by the audits.
BOUNDARY_BAND = 1e-9


@dataclass(frozen=True)
class OneBitScheme:
    """One-bit fingerprinting scheme over at least three strings.

    p[i] / q[i] are the probabilities that Alice / Bob send 1 on string i;
    r = (r00, r01, r10, r11) are the referee's accept probabilities on the
    received message pair.
    """

    strings: tuple[str, ...]
    p: np.ndarray
    q: np.ndarray
    r: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "strings", tuple(self.strings))
        object.__setattr__(self, "p", np.asarray(self.p, dtype=float))
        object.__setattr__(self, "q", np.asarray(self.q, dtype=float))
        object.__setattr__(self, "r", np.asarray(self.r, dtype=float))
        s = len(self.strings)
        if s < 3:
            raise ValueError("a one-bit scheme needs at least three strings")
        if len(set(self.strings)) != s:
            raise ValueError("string labels must be distinct")
        if self.p.shape != (s,) or self.q.shape != (s,):
            raise ValueError("p and q must have one entry per string")
        if self.r.shape != (4,):
            raise ValueError("r must be the quadruple (r00, r01, r10, r11)")
        for name, arr in (("p", self.p), ("q", self.q), ("r", self.r)):
            if np.any(arr < 0.0) or np.any(arr > 1.0):
                raise ValueError(f"{name} entries must lie in [0, 1]")

    @property
    def size(self) -> int:
        return len(self.strings)

    def index(self, label: str) -> int:
        try:
            return self.strings.index(label)
        except ValueError:
            raise KeyError(f"unknown string label {label!r}") from None


@dataclass(frozen=True)
class Lemma1Params:
    """Separation parameters: x[i] * y[j] >= d  iff  accept(i, j) >= 1 - eps.

    The construction branches on c = r00 - r01 - r10 + r11: the cross branch
    separates the bilinear form directly, the degenerate branch (c = 0)
    exponentiates the remaining linear form.
    """

    branch: str
    c: float
    x: np.ndarray
    y: np.ndarray
    d: float

    def separated(self, i: int, j: int) -> bool:
        return bool(self.x[i] * self.y[j] >= self.d)


@dataclass(frozen=True)
class ClassicalReport:
    """Exact evaluation of a one-bit scheme.

    ``accept[i, j]`` is the positive-result probability on input pair (i, j).
    The confusable counts use the scheme's own worst false-negative rate as
    the tolerance; the ordered count is the one the quadratic lower bound is
    asserted against, the unordered count is recorded alongside it.
    """

    strings: tuple[str, ...]
    accept: np.ndarray
    worst_false_negative: float
    worst_false_positive: float
    argmax_hybrid: tuple[str, str]
    confusable_ordered: int
    confusable_unordered: int


def positive_prob(scheme: OneBitScheme, alpha: str, beta: str) -> float:
    """Probability of a positive result when Alice holds alpha and Bob beta."""
    i = scheme.index(alpha)
    j = scheme.index(beta)
    pa, qb, r = scheme.p[i], scheme.q[j], scheme.r
    return float(
        r[0] * ((1.0 - pa) * (1.0 - qb))
        + r[1] * ((1.0 - pa) * qb)
        + r[2] * (pa * (1.0 - qb))
        + r[3] * (pa * qb)
    )


def positive_matrix(scheme: OneBitScheme) -> np.ndarray:
    """Full accept-probability matrix over ordered string pairs."""
    return kernels.positive_matrix(scheme.p, scheme.q, scheme.r)


def lemma1_params(scheme: OneBitScheme, eps: float) -> Lemma1Params:
    """Separation parameters equivalent to the accept-threshold test."""
    if not 0.0 <= eps <= 1.0:
        raise ValueError("eps must lie in [0, 1]")
    r00, r01, r10, r11 = (float(v) for v in scheme.r)
    c = r00 - r01 - r10 + r11
    if c != 0.0:
        x = c * scheme.p + (r01 - r00)
        y = scheme.q + (r10 - r00) / c
        d = (1.0 - eps) + (r00 - r01) * (r00 - r10) / c - r00
        return Lemma1Params(branch=CROSS, c=c, x=x, y=y, d=d)
    x = np.exp((r10 - r00) * scheme.p)
    y = np.exp((r01 - r00) * scheme.q)
    d = math.exp(1.0 - eps - r00)
    return Lemma1Params(branch=DEGENERATE, c=c, x=x, y=y, d=d)


def _counts(accept: np.ndarray, threshold: float) -> tuple[int, int]:
    s = accept.shape[0]
    hot = accept >= threshold - 1e-12
    np.fill_diagonal(hot, False)
    ordered = int(np.sum(hot))
    unordered = int(np.sum(hot | hot.T) // 2)
    return ordered, unordered


def evaluate_classical(scheme: OneBitScheme) -> ClassicalReport:
    """Exact accept matrix plus worst-case error rates of a scheme."""
    accept = positive_matrix(scheme)
    diag = np.diag(accept)
    wminus = float(1.0 - diag.min())
    off = accept.copy()
    np.fill_diagonal(off, -1.0)
    flat = int(np.argmax(off))
    i, j = divmod(flat, scheme.size)
    wplus = float(off[i, j])
    ordered, unordered = _counts(accept, 1.0 - wminus)
    return ClassicalReport(
        strings=scheme.strings,
        accept=accept,
        worst_false_negative=wminus,
        worst_false_positive=wplus,
        argmax_hybrid=(scheme.strings[i], scheme.strings[j]),
        confusable_ordered=ordered,
        confusable_unordered=unordered,
    )


def find_confusable_pair(scheme: OneBitScheme) -> tuple[str, str]:
    """A distinct pair (mu, nu) with accept(mu, nu) >= min matching accept.

    Construction: split strings by the sign of the separation parameter x
    (sign of 0 counts as positive), take the larger class (positive on ties),
    give Bob the member maximizing sign * y and Alice any other member.
    """
    par = lemma1_params(scheme, eps=0.0)
    sgn = np.where(par.x >= 0.0, 1.0, -1.0)
    pos = np.flatnonzero(sgn > 0.0)
    neg = np.flatnonzero(sgn < 0.0)
    group = pos if len(pos) >= len(neg) else neg
    score = sgn[group] * par.y[group]
    nu = group[int(np.argmax(score))]
    mu = next(int(k) for k in group if k != nu)
    return scheme.strings[mu], scheme.strings[nu]


def count_confusable_pairs(scheme: OneBitScheme, eps: float) -> int:
    """Ordered pairs alpha != beta accepted with probability >= 1 - eps.

    Requires the scheme's worst false-negative rate to be at most eps; the
    count is guaranteed to be at least (s^2 - 2s) / 4.
    """
    report = evaluate_classical(scheme)
    if report.worst_false_negative > eps + 1e-12:
        raise ValueError(
            f"worst false-negative rate {report.worst_false_negative:.6g} exceeds eps={eps:.6g}"
        )
    ordered, _ = _counts(report.accept, 1.0 - eps)
    return ordered


def random_scheme(seed: int, s: int) -> OneBitScheme:
    """Uniformly random scheme on s strings, deterministic in (seed, s)."""
    if s < 3:
        raise ValueError("s must be at least 3")
    rng = rngutil.stream(seed)
    return OneBitScheme(
        strings=tuple(f"s{i}" for i in range(s)),
        p=rng.random(s),
        q=rng.random(s),
        r=rng.random(4),
    )


def random_degenerate_scheme(seed: int, s: int) -> OneBitScheme:
    """Random scheme whose referee satisfies r00 - r01 - r10 + r11 = 0.

    Used by audits to exercise the degenerate separation branch, which a
    continuous referee draw would otherwise never hit.
    """
    if s < 3:
        raise ValueError("s must be at least 3")
    rng = rngutil.stream(seed, 1)
    p = rng.random(s)
    q = rng.random(s)
    r01 = rng.random()
    r10 = rng.random()
    lo = max(0.0, r01 + r10 - 1.0)
    hi = min(1.0, r01 + r10)
    r00 = lo + (hi - lo) * rng.random()
    r11 = min(max(r01 + r10 - r00, 0.0), 1.0)
    # Nudge r11 until the cross-term cancels exactly in float arithmetic, so
    # the degenerate branch is hit rather than a catastrophically tiny c.
    for _ in range(4):
        c = r00 - r01 - r10 + r11
        if c == 0.0:
            break
        r11 -= c
    return OneBitScheme(
        strings=tuple(f"s{i}" for i in range(s)),
        p=p,
        q=q,
        r=np.array([r00, r01, r10, r11]),
    )


def one_sided_scheme(seed: int, s: int) -> OneBitScheme:
    """Deterministic-message scheme with zero false negatives.

    Alice's and Bob's strategies are random bits; the referee accepts with
    certainty on every message pair realized by a matching input, and with a
    random probability elsewhere.
    """
    if s < 3:
        raise ValueError("s must be at least 3")
    rng = rngutil.stream(seed, 2)
    p = rng.integers(0, 2, size=s).astype(float)
    q = rng.integers(0, 2, size=s).astype(float)
    r = rng.random(4)
    for i in range(s):
        r[int(2 * p[i] + q[i])] = 1.0
    return OneBitScheme(strings=tuple(f"s{i}" for i in range(s)), p=p, q=q, r=r)


@dataclass
class AuditOutcome:
    """Tally of one audit check."""

    passes: int = 0
    failures: int = 0
    skipped: int = 0

    def record(self, ok: bool):
        if ok:
            self.passes += 1
        else:
            self.failures += 1


@dataclass
class ClassicalAuditReport:
    """Aggregated results of the randomized classical-scheme audit."""

    trials: int
    seed: int
    sizes: tuple[int, ...]
    checks: dict[str, AuditOutcome]
    cross_branch_hits: int
    degenerate_branch_hits: int
    violations: list[dict] = field(default_factory=list)

    @property
    def failed(self) -> bool:
        return any(out.failures for out in self.checks.values())


def _audit_one(scheme: OneBitScheme, rng: np.random.Generator, checks, violations, trial: int):
    report = evaluate_classical(scheme)
    diag_min = 1.0 - report.worst_false_negative
    s = scheme.size

    ok = report.worst_false_positive >= diag_min - 1e-12
    checks["hybrid_accept_floor"].record(ok)
    if not ok:
        violations.append({"trial": trial, "check": "hybrid_accept_floor"})

    ok = max(report.worst_false_negative, report.worst_false_positive) >= 0.5 - 1e-12
    checks["coin_flip_floor"].record(ok)
    if not ok:
        violations.append({"trial": trial, "check": "coin_flip_floor"})

    bound = 0.25 * (s * s - 2 * s)
    ok = report.confusable_ordered >= bound
    checks["confusable_count_bound"].record(ok)
    if not ok:
        violations.append({"trial": trial, "check": "confusable_count_bound"})

    mu, nu = find_confusable_pair(scheme)
    ok = mu != nu and positive_prob(scheme, mu, nu) >= diag_min - 1e-12
    checks["confusable_pair_guarantee"].record(ok)
    if not ok:
        violations.append({"trial": trial, "check": "confusable_pair_guarantee"})

    accept = report.accept
    for _ in range(8):
        eps = rng.random()
        i = int(rng.integers(s))
        j = int(rng.integers(s))
        par = lemma1_params(scheme, eps)
        gap = accept[i, j] - (1.0 - eps)
        if abs(gap) <= BOUNDARY_BAND:
            checks["separation_equivalence"].skipped += 1
            continue
        ok = par.separated(i, j) == (gap > 0.0)
        checks["separation_equivalence"].record(ok)
        if not ok:
            violations.append(
                {"trial": trial, "check": "separation_equivalence", "branch": par.branch}
            )


def audit_classical(trials: int, seed: int, sizes=(3, 4, 5, 6, 7, 8)) -> ClassicalAuditReport:
    """Run the full randomized audit over seeded schemes of the given sizes.

    Per-trial streams are split from (seed, trial), so reports are identical
    for identical arguments regardless of execution order.  Every seventh
    trial uses a degenerate referee (zero cross-term) and every trial also
    audits a constructed zero-false-negative scheme.
    """
    sizes = tuple(int(s) for s in sizes)
    checks = {
        name: AuditOutcome()
        for name in (
            "hybrid_accept_floor",
            "coin_flip_floor",
            "confusable_count_bound",
            "confusable_pair_guarantee",
            "separation_equivalence",
            "one_sided_forces_false_positive",
        )
    }
    violations: list[dict] = []
    cross_hits = 0
    degenerate_hits = 0
    for trial in range(trials):
        s = sizes[trial % len(sizes)]
        trial_seed = rngutil.split_seed(seed, trial)
        if trial % 7 == 0:
            scheme = random_degenerate_scheme(trial_seed, s)
            degenerate_hits += 1
        else:
            scheme = random_scheme(trial_seed, s)
            cross_hits += 1
        rng = rngutil.stream(seed, trial, 0xA0D17)
        _audit_one(scheme, rng, checks, violations, trial)

        strict = one_sided_scheme(trial_seed, s)
        rep = evaluate_classical(strict)
        ok = rep.worst_false_negative == 0.0 and rep.worst_false_positive >= 1.0 - 1e-12
        checks["one_sided_forces_false_positive"].record(ok)
        if not ok:
            violations.append({"trial": trial, "check": "one_sided_forces_false_positive"})

    return ClassicalAuditReport(
        trials=trials,
        seed=seed,
        sizes=sizes,
        checks=checks,
        cross_branch_hits=cross_hits,
        degenerate_branch_hits=degenerate_hits,
        violations=violations,
    )
