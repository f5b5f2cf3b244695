"""Closed-form N-photon eta-state and its generation statistics.

The eta-state is the N-photon component of ``|alpha> (x) |gamma>`` with
``eta = N gamma / alpha**2``::

    |eta>_N = C_N sum_k (-1)^k / k! sqrt((2k)! N! / (N-2k)!) (eta / 2N)^k |N-2k; 2k>
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import DomainError
from .fock import NPhotonState, pair_generation_probability
from .schwinger import JOperatorSet, build_operators, expectation


@dataclass(frozen=True)
class EtaParams:
    n_total: int
    eta: float

    def __post_init__(self):
        if self.n_total < 1:
            raise DomainError("N must be >= 1")
        if not math.isfinite(self.eta) or self.eta < 0:
            raise DomainError(f"eta must be finite and >= 0, got {self.eta}")
        if self.eta >= 2 * self.n_total:
            raise DomainError(f"eta must be < 2N = {2 * self.n_total}, got {self.eta}")


@dataclass(frozen=True)
class GenerationStats:
    """Sector probabilities for one (alpha, gamma, N) working point.

    ``ratio`` is the gamma -> 0 limit of ``p_sq / p_pair`` and
    ``ratio_stirling`` its Stirling-formula approximation.
    """

    n_total: int
    eta: float
    c_n_sq: float
    p_sq: float
    p_pair: float
    ratio: float
    ratio_stirling: float


def eta_from_inputs(alpha: float, gamma: float, n_total: int) -> float:
    """Squeezing parameter ``N gamma / alpha^2``."""
    if alpha <= 0:
        raise DomainError("alpha must be > 0")
    if not 0.0 <= gamma < 1.0:
        raise DomainError(f"gamma must lie in [0, 1), got {gamma}")
    return n_total * gamma / alpha**2


def _log_terms(n_total: int, eta: float) -> tuple[np.ndarray, np.ndarray]:
    """Pair counts k and log-magnitudes of the unnormalized coefficients of |N-2k; 2k>."""
    if eta == 0.0:
        return np.array([0]), np.array([0.0])
    ks = np.arange(n_total // 2 + 1)
    lg = np.vectorize(math.lgamma)
    logs = (
        -lg(ks + 1)
        + 0.5 * (lg(2 * ks + 1) + math.lgamma(n_total + 1) - lg(n_total - 2 * ks + 1))
        + ks * (math.log(eta) - math.log(2 * n_total))
    )
    return ks, logs


def unnormalized_coefficients(n_total: int, eta: float) -> np.ndarray:
    """Coefficients of the eta-state before multiplying by ``C_N`` (leading entry 1)."""
    EtaParams(n_total, eta)
    coeffs = np.zeros(n_total + 1)
    ks, logs = _log_terms(n_total, eta)
    coeffs[2 * ks] = (-1.0) ** ks * np.exp(logs)
    return coeffs


def eta_state(n_total: int, eta: float) -> NPhotonState:
    return NPhotonState(n_total, unnormalized_coefficients(n_total, eta))


def normalization_c_sq(n_total: int, eta: float) -> float:
    """``|C_N|^2``, the weight of ``|N; 0>`` in the normalized eta-state."""
    EtaParams(n_total, eta)
    _, logs = _log_terms(n_total, eta)
    return 1.0 / float(np.sum(np.exp(2 * logs)))


def defining_relation_residual(state: NPhotonState, eta: float, ops: JOperatorSet | None = None) -> float:
    """Relative residual of the exact operator relation characterising the eta-state.

    The relation ``a^dag b |eta> = -eta (N - b^dag b)/N  a b^dag |eta>`` is
    checked in its J-operator form ``(1 + X) J2|eta> = -i (1 - X) J3|eta>``
    with ``X = eta (N - b^dag b) / N``. The sign of ``i`` follows from
    ``J3 = -(i/2)(a^dag b - a b^dag)``.
    """
    ops = ops or build_operators(state.n_total)
    n = ops.n_total
    if state.dim != ops.dim:
        raise ValueError("state and operators live on different sectors")
    psi = state.amps
    x = eta * (n - np.real(np.diag(ops.pair_number))) / n
    j2_psi = ops.j2 @ psi
    j3_psi = ops.j3 @ psi
    lhs = (1.0 + x) * j2_psi
    rhs = -1j * (1.0 - x) * j3_psi
    # both sides can vanish identically (e.g. N = eta = 2); fall back to the
    # scale of the uncertainty vectors, which is never zero for N >= 1
    fallback = np.linalg.norm(j2_psi) + np.linalg.norm(j3_psi)
    scale = np.linalg.norm(lhs)
    if scale < 1e-8 * fallback:
        scale = fallback
    return float(np.linalg.norm(lhs - rhs) / scale)


def mean_pair_photons(state: NPhotonState, ops: JOperatorSet | None = None) -> float:
    ops = ops or build_operators(state.n_total)
    return expectation(ops.pair_number, state)


def approx_mean_pair_photons(eta: float) -> float:
    """Low-eta estimate ``eta^2 / (1 - eta^2)`` of the mode-b photon number."""
    if eta >= 1.0:
        raise DomainError("the pair-photon approximation requires eta < 1")
    return eta * eta / (1.0 - eta * eta)


def generation_probability_sq(alpha: float, gamma: float, n_total: int) -> float:
    """Probability of detecting the N-photon sector of ``|alpha; gamma>``."""
    eta = eta_from_inputs(alpha, gamma, n_total)
    log_p = (
        0.5 * math.log1p(-gamma * gamma)
        - alpha * alpha
        + 2 * n_total * math.log(alpha)
        - math.lgamma(n_total + 1)
        - math.log(normalization_c_sq(n_total, eta))
    )
    return math.exp(log_p)


def ratio_sq_pair(n_total: int, eta: float) -> tuple[float, float]:
    """Squeezed-state to pair-state generation ratio in the gamma -> 0 limit.

    Returns ``(exact_limit, stirling)``.
    """
    if eta <= 0:
        raise DomainError("the generation ratio diverges at eta = 0")
    c_sq = normalization_c_sq(n_total, eta)
    exact = math.exp(n_total * math.log(n_total / eta) - math.lgamma(n_total + 1)) / c_sq
    stirling = math.exp(n_total * (1.0 - math.log(eta))) / math.sqrt(2 * math.pi * n_total) / c_sq
    return exact, stirling


def generation_stats(alpha: float, gamma: float, n_total: int) -> GenerationStats:
    eta = eta_from_inputs(alpha, gamma, n_total)
    if eta > 0:
        ratio, ratio_stirling = ratio_sq_pair(n_total, eta)
    else:
        ratio = ratio_stirling = math.inf
    return GenerationStats(
        n_total=n_total,
        eta=eta,
        c_n_sq=normalization_c_sq(n_total, eta),
        p_sq=generation_probability_sq(alpha, gamma, n_total),
        p_pair=pair_generation_probability(gamma, n_total) if n_total >= 2 else 0.0,
        ratio=ratio,
        ratio_stirling=ratio_stirling,
    )


def noon_fidelity(state: NPhotonState, basis: str = "path") -> float:
    """Overlap with a NOON state ``(|N,0> + e^{i theta}|0,N>)/sqrt(2)``, maximized over theta.

    ``basis="path"`` places the two branches in the interferometer arms
    (extreme J3 eigenstates); ``basis="input"`` uses the input modes,
    i.e. ``|N;0>`` and ``|0;N>``.
    """
    if basis == "input":
        c = state.amps
    elif basis == "path":
        vecs = build_operators(state.n_total).j3_spectrum().eigenvectors
        c = vecs.conj().T @ state.amps
    else:
        raise ValueError(f"unknown basis {basis!r}")
    return float(0.5 * (abs(c[0]) + abs(c[-1])) ** 2)
