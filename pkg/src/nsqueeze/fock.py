"""Single-mode photon-number expansions and N-photon post-selection.

Basis convention for the two-mode sector of total photon number ``N``:
index ``k`` labels ``|N-k; k>``, i.e. ``N-k`` photons in mode a (laser) and
``k`` photons in mode b (down-conversion).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import DomainError, EmptySectorError

N_MAX_CEILING = 512


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=complex)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class ModeAmplitudes:
    """Truncated photon-number amplitudes of one optical mode."""

    n_max: int
    amps: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "amps", _frozen(self.amps))
        if self.amps.shape != (self.n_max + 1,):
            raise ValueError(f"expected {self.n_max + 1} amplitudes, got {self.amps.shape}")

    @property
    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.amps) ** 2))


@dataclass(frozen=True)
class NPhotonState:
    """Normalized state in the fixed-``N`` two-mode sector.

    ``amps[k]`` is the amplitude of ``|N-k; k>``. The global phase is fixed so
    that ``amps[0]`` is real and non-negative whenever it is nonzero.
    """

    n_total: int
    amps: np.ndarray

    def __post_init__(self):
        if self.n_total < 1:
            raise ValueError("n_total must be >= 1")
        amps = np.array(self.amps, dtype=complex)
        if amps.shape != (self.n_total + 1,):
            raise ValueError(f"expected {self.n_total + 1} amplitudes, got {amps.shape}")
        norm = np.linalg.norm(amps)
        if norm == 0.0:
            raise EmptySectorError("state vector is zero")
        amps = amps / norm
        if abs(amps[0]) > 0.0:
            amps = amps * cmath.exp(-1j * cmath.phase(amps[0]))
            amps[0] = abs(amps[0])
        object.__setattr__(self, "amps", _frozen(amps))

    @property
    def dim(self) -> int:
        return self.n_total + 1

    @classmethod
    def fock(cls, n_total: int, k: int = 0) -> "NPhotonState":
        """The product state ``|N-k; k>``."""
        amps = np.zeros(n_total + 1, dtype=complex)
        amps[k] = 1.0
        return cls(n_total, amps)


def _check_n_max(n_max: int) -> None:
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    if n_max > N_MAX_CEILING:
        raise ValueError(f"n_max={n_max} exceeds ceiling {N_MAX_CEILING}")


def default_n_max(alpha: complex, n_total: int) -> int:
    """Truncation used when expansions are built automatically."""
    return int(max(math.ceil(4 * abs(alpha) ** 2 + 30), n_total + 10))


def coherent_amplitudes(alpha: complex, n_max: int) -> ModeAmplitudes:
    """Photon-number amplitudes ``exp(-|a|^2/2) a^n / sqrt(n!)`` of a coherent state."""
    _check_n_max(n_max)
    amps = np.zeros(n_max + 1, dtype=complex)
    r = abs(alpha)
    amps[0] = math.exp(-0.5 * r * r)
    if r == 0.0:
        return ModeAmplitudes(n_max, amps)
    theta = cmath.phase(alpha)
    log_r = math.log(r)
    for n in range(1, n_max + 1):
        if n <= 20:
            mag = math.exp(-0.5 * r * r) * r**n / math.sqrt(math.factorial(n))
        else:
            mag = math.exp(-0.5 * r * r + n * log_r - 0.5 * math.lgamma(n + 1))
        amps[n] = mag * cmath.exp(1j * n * theta)
    return ModeAmplitudes(n_max, amps)


def squeezed_vacuum_amplitudes(gamma: float, n_max: int) -> ModeAmplitudes:
    """Even-photon expansion of the squeezed vacuum annihilated by ``b + gamma b^dag``.

    ``amps[2k] = (1-gamma^2)^(1/4) (-gamma)^k sqrt((2k)!) / (2^k k!)``.
    """
    _check_n_max(n_max)
    if not 0.0 <= gamma < 1.0:
        raise DomainError(f"gamma must lie in [0, 1), got {gamma}")
    amps = np.zeros(n_max + 1, dtype=complex)
    prefactor = (1.0 - gamma * gamma) ** 0.25
    amps[0] = prefactor
    if gamma == 0.0:
        return ModeAmplitudes(n_max, amps)
    log_g = math.log(gamma)
    for k in range(1, n_max // 2 + 1):
        log_mag = (
            k * log_g
            + 0.5 * math.lgamma(2 * k + 1)
            - k * math.log(2.0)
            - math.lgamma(k + 1)
        )
        amps[2 * k] = (-1) ** k * prefactor * math.exp(log_mag)
    return ModeAmplitudes(n_max, amps)


def post_select_n(a: ModeAmplitudes, b: ModeAmplitudes, n_total: int) -> tuple[NPhotonState, float]:
    """Project the product state onto total photon number ``n_total``.

    Returns the normalized sector state and the probability of the sector.
    """
    if n_total > a.n_max or n_total > b.n_max:
        raise ValueError("n_total exceeds the truncation of an input mode")
    k = np.arange(n_total + 1)
    u = a.amps[n_total - k] * b.amps[k]
    probability = float(np.sum(np.abs(u) ** 2))
    if probability == 0.0:
        raise EmptySectorError(f"the N={n_total} sector is empty")
    return NPhotonState(n_total, u), probability


def pair_generation_probability(gamma: float, n_total: int) -> float:
    """Probability ``(1-gamma^2) gamma^N`` of an N-photon pair state from down-conversion alone.

    Applied for odd ``N`` too, as a formula only.
    """
    if not 0.0 <= gamma < 1.0:
        raise DomainError(f"gamma must lie in [0, 1), got {gamma}")
    if n_total < 2:
        raise ValueError("n_total must be >= 2")
    return (1.0 - gamma * gamma) * gamma**n_total
