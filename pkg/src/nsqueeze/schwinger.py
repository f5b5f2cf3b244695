"""Schwinger representation of the two-mode N-photon sector.

In the ``|N-k; k>`` basis::

    J1 = (a^dag a - b^dag b) / 2
    J2 = (a^dag b + a b^dag) / 2
    J3 = -(i/2) (a^dag b - a b^dag)

which satisfy ``[J1, J2] = i J3`` cyclically. An interferometer phase ``phi``
acts on states as ``exp(-i phi J3)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import DomainError
from .fock import NPhotonState

N_CEILING = 200
SNAP_TOL = 1e-8


def _readonly(m: np.ndarray) -> np.ndarray:
    m = np.array(m)
    m.setflags(write=False)
    return m


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues (ascending) and orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


@dataclass(frozen=True, eq=False)
class JOperatorSet:
    n_total: int
    j1: np.ndarray
    j2: np.ndarray
    j3: np.ndarray
    pair_number: np.ndarray

    @property
    def dim(self) -> int:
        return self.n_total + 1

    @property
    def m_values(self) -> np.ndarray:
        """Eigenvalues ``-N/2 .. N/2`` of any J component."""
        return np.arange(self.dim) - self.n_total / 2

    def casimir(self) -> np.ndarray:
        return self.j1 @ self.j1 + self.j2 @ self.j2 + self.j3 @ self.j3

    def j2_spectrum(self) -> SpectralDecomposition:
        return _j2_spectrum(self.n_total)

    def j3_spectrum(self) -> SpectralDecomposition:
        return _j3_spectrum(self.n_total)


def _ladder(n_total: int) -> np.ndarray:
    """Matrix of ``a^dag b``: maps ``|N-k-1; k+1>`` to ``|N-k; k>``."""
    k = np.arange(n_total)
    return np.diag(np.sqrt((n_total - k) * (k + 1.0)), 1)


@lru_cache(maxsize=64)
def _build(n_total: int) -> JOperatorSet:
    k = np.arange(n_total + 1)
    adag_b = _ladder(n_total)
    a_bdag = adag_b.T
    j1 = np.diag(n_total / 2 - k).astype(complex)
    j2 = (0.5 * (adag_b + a_bdag)).astype(complex)
    j3 = -0.5j * (adag_b - a_bdag)
    pair = np.diag(k).astype(complex)
    return JOperatorSet(
        n_total,
        _readonly(j1),
        _readonly(j2),
        _readonly(j3),
        _readonly(pair),
    )


def build_operators(n_total: int) -> JOperatorSet:
    """J1, J2, J3 and ``b^dag b`` on the N-photon sector (cached)."""
    if n_total < 1:
        raise ValueError("n_total must be >= 1")
    if n_total > N_CEILING:
        raise ValueError(f"n_total={n_total} exceeds ceiling {N_CEILING}")
    return _build(int(n_total))


def _snapped_eigh(op: np.ndarray, n_total: int) -> SpectralDecomposition:
    vals, vecs = np.linalg.eigh(op)
    exact = np.arange(n_total + 1) - n_total / 2
    if np.any(np.diff(vals) < 0.5):
        raise RuntimeError("unexpected degenerate spectrum")
    close = np.abs(vals - exact) < SNAP_TOL
    vals = np.where(close, exact, vals)
    # fix eigenvector phases so that the largest component is real positive
    idx = np.argmax(np.abs(vecs), axis=0)
    pivots = vecs[idx, np.arange(vecs.shape[1])]
    vecs = vecs * (np.abs(pivots) / pivots)
    return SpectralDecomposition(_readonly(vals), _readonly(vecs))


@lru_cache(maxsize=64)
def _j2_spectrum(n_total: int) -> SpectralDecomposition:
    return _snapped_eigh(build_operators(n_total).j2, n_total)


@lru_cache(maxsize=64)
def _j3_spectrum(n_total: int) -> SpectralDecomposition:
    return _snapped_eigh(build_operators(n_total).j3, n_total)


def _vec(state) -> np.ndarray:
    return state.amps if isinstance(state, NPhotonState) else np.asarray(state)


def expectation(op: np.ndarray, state) -> float:
    """Real expectation value of a Hermitian operator."""
    psi = _vec(state)
    if op.shape != (psi.size, psi.size):
        raise ValueError(f"operator shape {op.shape} does not match state dimension {psi.size}")
    val = np.vdot(psi, op @ psi)
    if abs(val.imag) > 1e-12 * max(1.0, abs(val.real)):
        raise DomainError(f"non-real expectation value {val}; operator not Hermitian?")
    return float(val.real)


def variance(op: np.ndarray, state) -> float:
    psi = _vec(state)
    mean = expectation(op, psi)
    # <op^2> = ||op psi||^2 for Hermitian op
    second = float(np.linalg.norm(op @ psi) ** 2)
    return second - mean * mean


def rotated_j2(ops: JOperatorSet, phi: float) -> np.ndarray:
    """Output estimator ``J2(phi) = cos(phi) J2 + sin(phi) J1`` (Heisenberg picture)."""
    return np.cos(phi) * ops.j2 + np.sin(phi) * ops.j1


def phase_rotation(ops: JOperatorSet, phi: float) -> np.ndarray:
    """Unitary ``exp(-i phi J3)``."""
    spec = ops.j3_spectrum()
    v = spec.eigenvectors
    return (v * np.exp(-1j * phi * spec.eigenvalues)) @ v.conj().T


def rotate(state: NPhotonState, phi: float, ops: JOperatorSet | None = None) -> np.ndarray:
    """Schrodinger-picture state after the interferometer phase ``phi``."""
    ops = ops or build_operators(state.n_total)
    return phase_rotation(ops, phi) @ state.amps


def output_distribution(state: NPhotonState, phi: float, ops: JOperatorSet | None = None) -> np.ndarray:
    """Probabilities of the output half-difference ``m = -N/2 .. N/2`` at phase ``phi``.

    Entry ``i`` corresponds to ``m = i - N/2``.
    """
    ops = ops or build_operators(state.n_total)
    psi_out = rotate(state, phi, ops)
    basis = ops.j2_spectrum().eigenvectors
    probs = np.abs(basis.conj().T @ psi_out) ** 2
    return probs
