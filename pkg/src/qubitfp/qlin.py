"""Exact-as-possible complex linear algebra for one- and two-qubit states.

States are plain complex ndarrays: shape ``(2,)`` for a single qubit and
shape ``(4,)`` for a qubit pair in basis order |00>, |01>, |10>, |11>.
Operators are ``(2, 2)`` or ``(4, 4)`` complex arrays.

Conventions used throughout the package:

* every state is unit norm within ``UNIT_ATOL``;
* global phase is fixed so the first amplitude of magnitude above
  ``PHASE_EPS`` is real and nonnegative, which turns up-to-phase equality
  into a plain comparison;
* rank decisions use a singular-value cutoff relative to the largest
  singular value (``RANK_RCOND``), appropriate for O(1) amplitudes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

UNIT_ATOL = 1e-12
PHASE_EPS = 1e-12
RANK_RCOND = 1e-9


def as_state(amps, dim: int | None = None) -> np.ndarray:
    """Validate and return a state vector (finite entries, unit norm)."""
    vec = np.asarray(amps, dtype=complex).reshape(-1)
    if dim is not None and vec.shape != (dim,):
        raise ValueError(f"expected a state of dimension {dim}, got shape {vec.shape}")
    if not np.all(np.isfinite(vec.view(float))):
        raise ValueError("state has non-finite amplitudes")
    norm = np.linalg.norm(vec)
    if abs(norm - 1.0) > UNIT_ATOL:
        raise ValueError(f"state is not unit norm (|norm - 1| = {abs(norm - 1.0):.3e})")
    return vec


def normalize_phase(vec: np.ndarray) -> np.ndarray:
    """Rotate the global phase so the leading amplitude is real and >= 0."""
    vec = np.asarray(vec, dtype=complex)
    for amp in vec.flat:
        if abs(amp) > PHASE_EPS:
            return vec * (np.conj(amp) / abs(amp))
    return vec.copy()


def state(amps, dim: int | None = None) -> np.ndarray:
    """Validated, phase-normalized state vector."""
    return normalize_phase(as_state(amps, dim))


def inner_product(a, b) -> complex:
    """Hermitian inner product <a|b> (conjugate-linear in the first slot)."""
    return complex(np.vdot(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)))


def tensor(a, b) -> np.ndarray:
    """Product state a (x) b; amps[2i+j] = a_i * b_j for qubit inputs."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def states_equal_up_to_phase(a, b, atol: float = 1e-10) -> bool:
    """True when two unit vectors agree after phase normalization."""
    return bool(np.allclose(normalize_phase(a), normalize_phase(b), atol=atol, rtol=0.0))


@dataclass(frozen=True)
class SchmidtForm:
    """Two-term Schmidt decomposition of a two-qubit state.

    ``coeffs`` holds (s0, s1) with s0 >= s1 >= 0 and s0^2 + s1^2 = 1; rows of
    ``basis_a`` / ``basis_b`` are the orthonormal single-qubit factors, with
    phases arranged so ``reconstruct()`` reproduces the source state exactly
    (not merely up to phase).
    """

    coeffs: np.ndarray
    basis_a: np.ndarray
    basis_b: np.ndarray

    def reconstruct(self) -> np.ndarray:
        out = np.zeros(4, dtype=complex)
        for k in range(2):
            out += self.coeffs[k] * tensor(self.basis_a[k], self.basis_b[k])
        return out


def schmidt_decompose(state4) -> SchmidtForm:
    """Schmidt form of a two-qubit state via SVD of its 2x2 coefficient grid."""
    vec = as_state(state4, 4)
    mat = vec.reshape(2, 2)
    u, s, vh = np.linalg.svd(mat)
    basis_a = u.T.copy()
    basis_b = vh.copy()
    # Leading amplitude of each A-factor made real >= 0; the compensating
    # phase moves to the paired B-factor so each Schmidt term is unchanged.
    for k in range(2):
        for amp in basis_a[k]:
            if abs(amp) > PHASE_EPS:
                phase = amp / abs(amp)
                basis_a[k] *= np.conj(phase)
                basis_b[k] *= phase
                break
    return SchmidtForm(coeffs=s.copy(), basis_a=basis_a, basis_b=basis_b)


def _stack(states) -> np.ndarray:
    mat = np.atleast_2d(np.asarray(states, dtype=complex))
    if mat.size == 0:
        raise ValueError("need at least one state")
    return mat


def span_basis(states, rcond: float = RANK_RCOND) -> np.ndarray:
    """Orthonormal basis (rows) of the span of the given vectors."""
    mat = _stack(states)
    _, s, vh = np.linalg.svd(mat)
    rank = int(np.sum(s > rcond * s[0])) if s[0] > 0.0 else 0
    return vh[:rank]


def span_rank(states, rcond: float = RANK_RCOND) -> int:
    return span_basis(states, rcond).shape[0]


def orthogonal_complement(states, rcond: float = RANK_RCOND) -> np.ndarray:
    """Orthonormal basis (rows) of the orthogonal complement of the span.

    Each returned vector v satisfies <a|v> = 0 for every input a, and is
    phase-normalized.  Inputs spanning the whole space yield an empty array.
    """
    mat = _stack(states)
    _, s, vh = np.linalg.svd(np.conj(mat))
    rank = int(np.sum(s > rcond * s[0])) if s[0] > 0.0 else 0
    comp = np.conj(vh[rank:])
    return np.array([normalize_phase(row) for row in comp]).reshape(-1, mat.shape[1])


def random_state(rng: np.random.Generator, dim: int = 2) -> np.ndarray:
    """Haar-random pure state (Gaussian amplitudes, normalized)."""
    vec = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return normalize_phase(vec / np.linalg.norm(vec))


def random_unitary(rng: np.random.Generator, dim: int = 2) -> np.ndarray:
    """Haar-random unitary via phase-fixed QR of a complex Gaussian matrix."""
    z = (rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    diag = np.diag(r)
    return q * (diag / np.abs(diag))


def dagger(mat) -> np.ndarray:
    return np.conj(np.asarray(mat, dtype=complex)).T


def is_unitary(mat, atol: float = 1e-12) -> bool:
    mat = np.asarray(mat, dtype=complex)
    return bool(np.allclose(mat @ dagger(mat), np.eye(mat.shape[0]), atol=atol, rtol=0.0))


def pure_density(vec) -> np.ndarray:
    """Rank-one density matrix |v><v|."""
    vec = np.asarray(vec, dtype=complex)
    return np.outer(vec, np.conj(vec))


def check_density(mat, dim: int | None = None) -> np.ndarray:
    """Validate a density matrix: Hermitian, unit trace, eigenvalues >= -1e-10."""
    mat = np.asarray(mat, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError("density matrix must be square")
    if dim is not None and mat.shape != (dim, dim):
        raise ValueError(f"expected a {dim}x{dim} density matrix, got {mat.shape}")
    if not np.all(np.isfinite(mat.view(float))):
        raise ValueError("density matrix has non-finite entries")
    if not np.allclose(mat, dagger(mat), atol=1e-12, rtol=0.0):
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(mat).real - 1.0) > 1e-12:
        raise ValueError("density matrix trace is not 1")
    if np.linalg.eigvalsh(mat).min() < -1e-10:
        raise ValueError("density matrix has a negative eigenvalue")
    return mat


def check_povm_element(mat, dim: int | None = None) -> np.ndarray:
    """Validate a POVM element: Hermitian with spectrum inside [0, 1]."""
    mat = np.asarray(mat, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError("POVM element must be square")
    if dim is not None and mat.shape != (dim, dim):
        raise ValueError(f"expected a {dim}x{dim} POVM element, got {mat.shape}")
    if not np.allclose(mat, dagger(mat), atol=1e-12, rtol=0.0):
        raise ValueError("POVM element is not Hermitian")
    eig = np.linalg.eigvalsh(mat)
    if eig.min() < -1e-10 or eig.max() > 1.0 + 1e-10:
        raise ValueError("POVM element spectrum escapes [0, 1]")
    return mat
