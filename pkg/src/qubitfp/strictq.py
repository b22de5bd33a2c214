"""One-qubit fingerprinting schemes with one-sided error.

A strict scheme never rejects a matching input and errs on some hybrid input
with probability below 1.  Its structure is rigid: both parties must use
pure, pairwise-distinct fingerprints, the subspace accepted with certainty is
three-dimensional, and its one-dimensional complement (the reject state)
determines everything else.  In the canonical local frame the reject state is
(|01> - c|10>) / sqrt(1 + c^2) for an asymmetry parameter c, Bob's
fingerprints follow from Alice's by scaling the |1> amplitude with c, and the
probability of rejecting a hybrid pair factors through a per-string
coefficient (``k_constant``).

All formulas work directly on amplitudes, so the state |1> (an infinite
amplitude ratio) needs no special casing anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import qlin

#: Pure fingerprints closer than this in trace distance count as duplicates.
DISTINCT_TOL = 1e-9

#: Relative Schmidt-coefficient gap below which the two are treated as tied.
SCHMIDT_TIE_RTOL = 1e-12

KIND_TRIANGLE = "triangle"
KIND_TETRAHEDRON = "tetrahedron"
KIND_OCTAHEDRON = "octahedron"
KIND_PACKED = "packed"

_FIXED_SIZES = {KIND_TRIANGLE: 3, KIND_TETRAHEDRON: 4, KIND_OCTAHEDRON: 6}


class InvalidStrictSchemeError(ValueError):
    """The fingerprints admit no strict scheme (wrong accept-space shape)."""


class DegenerateRejectStateError(InvalidStrictSchemeError):
    """Reject state is (numerically) a product state; fingerprints collide."""


def state_from_ratio(u) -> np.ndarray:
    """Qubit state (|0> + u|1>) normalized; u=None or +-inf gives |1>."""
    if u is None or (isinstance(u, float) and math.isinf(u)):
        return np.array([0.0, 1.0], dtype=complex)
    u = complex(u)
    return qlin.normalize_phase(np.array([1.0, u], dtype=complex) / math.sqrt(1.0 + abs(u) ** 2))


@dataclass(frozen=True)
class FingerprintSet:
    """Per-string pure qubit fingerprints with their worst pairwise overlap.

    ``states[i]`` is the fingerprint for ``strings[i]``; ``delta`` is the
    largest |<a|b>| over distinct pairs.  States must be pairwise distinct as
    rays (trace distance above ``DISTINCT_TOL``).
    """

    strings: tuple[str, ...]
    states: np.ndarray
    delta: float

    @classmethod
    def from_states(cls, strings, states) -> "FingerprintSet":
        strings = tuple(strings)
        arr = np.array([qlin.state(s, 2) for s in states])
        if len(strings) != arr.shape[0]:
            raise ValueError("one state per string required")
        if len(strings) < 2:
            raise ValueError("need at least two strings")
        if len(set(strings)) != len(strings):
            raise ValueError("string labels must be distinct")
        overlaps = np.abs(np.conj(arr) @ arr.T)
        np.fill_diagonal(overlaps, 0.0)
        worst = float(overlaps.max())
        # trace distance of pure states is sqrt(1 - |<a|b>|^2)
        if math.sqrt(max(1.0 - worst * worst, 0.0)) <= DISTINCT_TOL:
            raise ValueError("two fingerprints coincide up to global phase")
        return cls(strings=strings, states=arr, delta=worst)

    @classmethod
    def from_ratios(cls, ratios, strings=None) -> "FingerprintSet":
        """Build from amplitude ratios (None / +-inf standing for |1>)."""
        ratios = list(ratios)
        if strings is None:
            strings = tuple(f"s{i}" for i in range(len(ratios)))
        return cls.from_states(strings, [state_from_ratio(u) for u in ratios])

    @property
    def size(self) -> int:
        return len(self.strings)

    def index(self, label: str) -> int:
        try:
            return self.strings.index(label)
        except ValueError:
            raise KeyError(f"unknown string label {label!r}") from None

    def overlap_magnitudes(self) -> np.ndarray:
        """Matrix of |<state_i|state_j>| with zeroed diagonal."""
        mags = np.abs(np.conj(self.states) @ self.states.T)
        np.fill_diagonal(mags, 0.0)
        return mags


def make_fingerprint_set(kind: str, s: int | None = None, seed: int = 0, iters: int = 1500) -> FingerprintSet:
    """Named fingerprint constructions on the Bloch sphere.

    ``triangle`` / ``tetrahedron`` / ``octahedron`` are the evenly spread
    3-, 4- and 6-state sets (worst overlaps 1/2, 1/sqrt3, 1/sqrt2);
    ``packed`` runs the repulsion optimizer for any s >= 3, deterministic in
    (s, seed, iters).
    """
    if kind in _FIXED_SIZES:
        expected = _FIXED_SIZES[kind]
        if s is not None and s != expected:
            raise ValueError(f"{kind} set has exactly {expected} states, got s={s}")
        if kind == KIND_TRIANGLE:
            angles = [0.0, 2.0 * math.pi / 3.0, 4.0 * math.pi / 3.0]
            states = [[math.cos(a / 2.0), math.sin(a / 2.0)] for a in angles]
        elif kind == KIND_TETRAHEDRON:
            states = [[1.0, 0.0]] + [
                [1.0 / math.sqrt(3.0), math.sqrt(2.0 / 3.0) * np.exp(2j * math.pi * k / 3.0)]
                for k in range(3)
            ]
        else:
            inv = 1.0 / math.sqrt(2.0)
            states = [
                [1.0, 0.0],
                [0.0, 1.0],
                [inv, inv],
                [inv, -inv],
                [inv, 1j * inv],
                [inv, -1j * inv],
            ]
        return FingerprintSet.from_states([f"s{i}" for i in range(expected)], states)
    if kind == KIND_PACKED:
        if s is None or s < 3:
            raise ValueError("packed sets need s >= 3")
        from . import search

        return search.pack_states(s, seed=seed, iters=iters)
    raise ValueError(f"unknown fingerprint-set kind {kind!r}")


def cswap_accept_prob(phi, psi) -> float:
    """Swap-test acceptance probability (1 + |<phi|psi>|^2) / 2."""
    overlap = qlin.inner_product(qlin.as_state(phi, 2), qlin.as_state(psi, 2))
    return (1.0 + abs(overlap) ** 2) / 2.0


def cswap_circuit(phi, psi) -> tuple[np.ndarray, float]:
    """Simulate the controlled-swap test circuit on |0>|phi>|psi>.

    Returns the final three-qubit state and the probability of measuring the
    control qubit as 0 (a positive result).
    """
    phi = qlin.as_state(phi, 2)
    psi = qlin.as_state(psi, 2)
    amps = np.zeros((2, 2, 2), dtype=complex)
    amps[0] = np.outer(phi, psi)
    h = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2.0)
    amps = np.einsum("ca,ajk->cjk", h, amps)
    amps[1] = amps[1].T.copy()
    amps = np.einsum("ca,ajk->cjk", h, amps)
    accept = float(np.sum(np.abs(amps[0]) ** 2))
    return amps.reshape(8), accept


def accept_space(alice: FingerprintSet, bob: FingerprintSet) -> tuple[int, np.ndarray]:
    """Dimension and orthonormal basis of the span of the matching states."""
    if alice.strings != bob.strings:
        raise ValueError("Alice and Bob must fingerprint the same strings")
    matching = np.array([qlin.tensor(a, b) for a, b in zip(alice.states, bob.states)])
    basis = qlin.span_basis(matching)
    return basis.shape[0], basis


def reject_state(alice: FingerprintSet, bob: FingerprintSet) -> np.ndarray:
    """The unique state orthogonal to every matching state (phase-normalized).

    Exists only when the matching states span a 3-dimensional space; other
    dimensions mean the fingerprints admit no strict scheme.
    """
    if alice.strings != bob.strings:
        raise ValueError("Alice and Bob must fingerprint the same strings")
    matching = np.array([qlin.tensor(a, b) for a, b in zip(alice.states, bob.states)])
    comp = qlin.orthogonal_complement(matching)
    if comp.shape[0] == 0:
        raise InvalidStrictSchemeError(
            "matching states span the whole two-qubit space; no reject state exists"
        )
    if comp.shape[0] > 1:
        raise InvalidStrictSchemeError(
            f"accept space has dimension {4 - comp.shape[0]} < 3; "
            "fingerprints are effectively duplicated"
        )
    return comp[0]


def derive_bob_states(alice: FingerprintSet, c: float) -> FingerprintSet:
    """Bob's fingerprints for a canonical-frame scheme with asymmetry c.

    Alice's (a, b) maps to the normalization of (a, c*b); this is the unique
    partner ray orthogonal to the canonical reject state, and sends |1> to
    |1> for every c.
    """
    if not c > 0.0:
        raise ValueError("asymmetry parameter must be positive")
    partners = []
    for a, b in alice.states:
        vec = np.array([a, c * b], dtype=complex)
        partners.append(vec / np.linalg.norm(vec))
    return FingerprintSet.from_states(alice.strings, partners)


def canonical_reject(c: float) -> np.ndarray:
    """(|01> - c|10>) / sqrt(1 + c^2)."""
    if not c > 0.0:
        raise ValueError("asymmetry parameter must be positive")
    return np.array([0.0, 1.0, -c, 0.0], dtype=complex) / math.sqrt(1.0 + c * c)


@dataclass(frozen=True)
class StrictScheme:
    """Fingerprints for both parties plus the derived reject state.

    ``bob_from_c`` records the asymmetry value when Bob's states were derived
    from Alice's rather than given explicitly (file round-trips preserve the
    original form).
    """

    strings: tuple[str, ...]
    alice: FingerprintSet
    bob: FingerprintSet
    reject: np.ndarray
    accept_dim: int
    bob_from_c: float | None = None

    @classmethod
    def from_sets(cls, alice: FingerprintSet, bob: FingerprintSet, bob_from_c=None) -> "StrictScheme":
        dim, _ = accept_space(alice, bob)
        rej = reject_state(alice, bob)
        return cls(
            strings=alice.strings,
            alice=alice,
            bob=bob,
            reject=rej,
            accept_dim=dim,
            bob_from_c=bob_from_c,
        )

    @classmethod
    def from_alice(cls, alice: FingerprintSet, c: float) -> "StrictScheme":
        return cls.from_sets(alice, derive_bob_states(alice, c), bob_from_c=float(c))

    @classmethod
    def symmetric(cls, fingerprints: FingerprintSet) -> "StrictScheme":
        return cls.from_alice(fingerprints, 1.0)

    @property
    def size(self) -> int:
        return len(self.strings)

    def index(self, label: str) -> int:
        return self.alice.index(label)


def k_constant(c: float, alice_state) -> float:
    """Hybrid-rejection coefficient of one of Alice's strings.

    For a canonical scheme with asymmetry c and Alice state (a, b) this is
    c^2 / ((|a|^2 + c^2 |b|^2)(1 + c^2)); rejection of a hybrid pair is this
    coefficient (of Bob's string) times 1 - |overlap|^2 of Alice's states.
    """
    if not c > 0.0:
        raise ValueError("asymmetry parameter must be positive")
    a, b = qlin.as_state(alice_state, 2)
    c2 = c * c
    return c2 / ((abs(a) ** 2 + c2 * abs(b) ** 2) * (1.0 + c2))


def hybrid_reject_prob(scheme: StrictScheme, alpha: str, beta: str) -> float:
    """Probability the optimal referee rejects the hybrid input (alpha, beta)."""
    i = scheme.index(alpha)
    j = scheme.index(beta)
    if i == j:
        raise ValueError("hybrid inputs require two distinct strings")
    hybrid = qlin.tensor(scheme.alice.states[i], scheme.bob.states[j])
    return abs(qlin.inner_product(scheme.reject, hybrid)) ** 2


def hybrid_reject_from_coefficient(c: float, alice: FingerprintSet, alpha: str, beta: str) -> float:
    """Hybrid rejection via the per-string coefficient route."""
    i = alice.index(alpha)
    j = alice.index(beta)
    if i == j:
        raise ValueError("hybrid inputs require two distinct strings")
    overlap = qlin.inner_product(alice.states[j], alice.states[i])
    return k_constant(c, alice.states[j]) * (1.0 - abs(overlap) ** 2)


def hybrid_reject_closed_form(c: float, state_alpha, state_beta) -> float:
    """Hybrid rejection from amplitudes alone.

    Amplitude form of c^2 |u_a - u_b|^2 / ((1+|u_a|^2)(1+c^2|u_b|^2)(1+c^2))
    where u is the |1>/|0> amplitude ratio; regular at u = infinity.
    """
    aa, ba = qlin.as_state(state_alpha, 2)
    ab, bb = qlin.as_state(state_beta, 2)
    c2 = c * c
    return c2 * abs(ab * ba - aa * bb) ** 2 / ((abs(ab) ** 2 + c2 * abs(bb) ** 2) * (1.0 + c2))


@dataclass(frozen=True)
class CanonicalForm:
    """Local frame in which the reject state is (|01> - c|10>)/sqrt(1+c^2).

    ``u_alice`` / ``u_bob`` are the single-qubit unitaries applied to Alice's
    and Bob's fingerprints; the transformed sets and reject state are stored
    alongside.  c is invariant under local unitaries and lies in (0, 1].
    """

    c: float
    u_alice: np.ndarray
    u_bob: np.ndarray
    alice: FingerprintSet
    bob: FingerprintSet
    reject: np.ndarray


def canonicalize(scheme: StrictScheme) -> CanonicalForm:
    """Rotate a strict scheme into its canonical local frame.

    The two-term decomposition of the reject state over local bases fixes the
    asymmetry parameter c (ratio of the coefficients, at most 1) and the
    frame unitaries.  Tied coefficients (symmetric schemes) leave the bases
    free; the computational basis is chosen so canonical input maps to
    itself.
    """
    mat = scheme.reject.reshape(2, 2)
    u, s, vh = np.linalg.svd(mat)
    if s[1] / s[0] < DISTINCT_TOL:
        raise DegenerateRejectStateError(
            "reject state is a product state; fingerprints must have collided"
        )
    if (s[0] - s[1]) / s[0] < SCHMIDT_TIE_RTOL:
        # Any orthonormal basis works on a tie; pin eta to the computational
        # basis and solve for the partner factors.
        eta = np.eye(2, dtype=complex)
        kappa = np.array([np.conj(eta[k]) @ mat / s[k] for k in range(2)])
    else:
        eta = u.T.copy()
        kappa = vh.copy()
    for k in range(2):
        for amp in eta[k]:
            if abs(amp) > qlin.PHASE_EPS:
                phase = amp / abs(amp)
                eta[k] *= np.conj(phase)
                kappa[k] *= phase
                break
    # reject = s0 * eta0 (x) kappa0 + s1 * eta1 (x) kappa1; flip the sign of
    # kappa1 to realize the minus-sign convention of the canonical frame.
    kappa[1] = -kappa[1]
    c = float(s[1] / s[0])
    u_alice = np.array([np.conj(eta[0]), np.conj(eta[1])])
    u_bob = np.array([np.conj(kappa[1]), np.conj(kappa[0])])
    canon_alice = FingerprintSet.from_states(
        scheme.strings, [u_alice @ st for st in scheme.alice.states]
    )
    canon_bob = FingerprintSet.from_states(
        scheme.strings, [u_bob @ st for st in scheme.bob.states]
    )
    canon_rej = qlin.normalize_phase(np.kron(u_alice, u_bob) @ scheme.reject)
    return CanonicalForm(
        c=c,
        u_alice=u_alice,
        u_bob=u_bob,
        alice=canon_alice,
        bob=canon_bob,
        reject=canon_rej,
    )


@dataclass(frozen=True)
class QuantumReport:
    """Exact evaluation of a strict scheme under the optimal referee.

    ``accept[i, j]`` is the acceptance probability on input (i, j); diagonal
    entries are exactly 1 (one-sided error).  ``k_values`` and ``c`` come
    from the canonical form.
    """

    strings: tuple[str, ...]
    accept: np.ndarray
    worst_false_positive: float
    worst_false_negative: float
    argmax_hybrid: tuple[str, str]
    k_values: np.ndarray
    c: float


def evaluate_strict(scheme: StrictScheme) -> QuantumReport:
    """Acceptance matrix and worst-case error of the optimal strict referee."""
    s = scheme.size
    accept = np.ones((s, s))
    for i in range(s):
        for j in range(s):
            if i != j:
                accept[i, j] = 1.0 - hybrid_reject_prob(scheme, scheme.strings[i], scheme.strings[j])
    off = accept.copy()
    np.fill_diagonal(off, -1.0)
    flat = int(np.argmax(off))
    i, j = divmod(flat, s)
    form = canonicalize(scheme)
    k_values = np.array([k_constant(form.c, st) for st in form.alice.states])
    return QuantumReport(
        strings=scheme.strings,
        accept=accept,
        worst_false_positive=float(off[i, j]),
        worst_false_negative=0.0,
        argmax_hybrid=(scheme.strings[i], scheme.strings[j]),
        k_values=k_values,
        c=form.c,
    )


@dataclass(frozen=True)
class TwoSidedConversion:
    """One-sided to two-sided conversion: flip positives with ``flip_prob``."""

    flip_prob: float
    error: float


def to_two_sided(strict_error: float) -> TwoSidedConversion:
    """Balanced conversion of a one-sided scheme with the given error.

    Flipping positive results to negative with probability e/(1+e) equalizes
    both failure modes at e/(1+e).
    """
    if not 0.0 <= strict_error < 1.0:
        raise ValueError("strict error must lie in [0, 1)")
    rate = strict_error / (1.0 + strict_error)
    return TwoSidedConversion(flip_prob=rate, error=rate)


def reject_projector(scheme: StrictScheme) -> np.ndarray:
    """Negative-outcome operator of the optimal strict referee."""
    return qlin.pure_density(scheme.reject)


def flip_composed_negop(negop: np.ndarray, flip_prob: float) -> np.ndarray:
    """Negative-outcome operator after flipping positives with flip_prob."""
    negop = qlin.check_povm_element(negop)
    if not 0.0 <= flip_prob <= 1.0:
        raise ValueError("flip probability must lie in [0, 1]")
    eye = np.eye(negop.shape[0], dtype=complex)
    return negop + flip_prob * (eye - negop)


def povm_accept_prob(rho, tau, negop) -> float:
    """Acceptance probability 1 - tr(E_minus (rho (x) tau)) of a referee.

    rho and tau are single-qubit density matrices (mixed inputs allowed);
    negop is the negative-outcome POVM element on the qubit pair.
    """
    rho = qlin.check_density(rho, 2)
    tau = qlin.check_density(tau, 2)
    negop = qlin.check_povm_element(negop, 4)
    value = np.trace(negop @ np.kron(rho, tau))
    if abs(value.imag) > 1e-12:
        raise ValueError("rejection probability came out non-real")
    return min(max(1.0 - value.real, 0.0), 1.0)


def two_sided_errors(scheme: StrictScheme, flip_prob: float) -> tuple[float, float]:
    """Worst false-negative and false-positive rates of the flipped referee.

    Evaluates the composed POVM on every matching and hybrid product input.
    """
    negop = flip_composed_negop(reject_projector(scheme), flip_prob)
    worst_neg = 0.0
    worst_pos = 0.0
    for i, a in enumerate(scheme.alice.states):
        for j, b in enumerate(scheme.bob.states):
            acc = povm_accept_prob(qlin.pure_density(a), qlin.pure_density(b), negop)
            if i == j:
                worst_neg = max(worst_neg, 1.0 - acc)
            else:
                worst_pos = max(worst_pos, acc)
    return worst_neg, worst_pos
