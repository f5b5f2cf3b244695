"""Phase-sensitivity figures of merit for N-photon states.

All quantities refer to the operating point ``phi = 0`` with ``J2`` as the
phase estimator: ``dphi^2 = Var(J2) / <J1>^2``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from . import DomainError
from .etastate import eta_state, mean_pair_photons
from .fock import NPhotonState
from .schwinger import JOperatorSet, build_operators, expectation, variance

# <J1> below this is treated as zero (undefined estimator)
J1_ZERO_TOL = 1e-12


@dataclass(frozen=True)
class SensitivityReport:
    n_total: int
    eta: float | None
    j1_mean: float
    dj2_sq: float
    dj3_sq: float
    delta_phi_sq: float
    q: float | None
    crb: float
    squeeze_ratio: float
    mean_pair_photons: float

    def as_dict(self) -> dict:
        return asdict(self)


def _ops(state: NPhotonState, ops: JOperatorSet | None) -> JOperatorSet:
    return ops if ops is not None else build_operators(state.n_total)


def phase_error(state: NPhotonState, ops: JOperatorSet | None = None) -> float:
    """Squared phase error ``Var(J2) / <J1>^2`` of the J2 estimator."""
    ops = _ops(state, ops)
    j1 = expectation(ops.j1, state)
    if abs(j1) < J1_ZERO_TOL:
        raise DomainError("<J1> = 0: the J2 estimator has no phase slope")
    return variance(ops.j2, state) / (j1 * j1)


def q_enhancement(n_total: int, delta_phi_sq: float) -> float:
    """Logarithmic position of ``delta_phi_sq`` between SQL (0) and HL (1)."""
    if n_total < 2:
        raise DomainError("Q is undefined for N < 2")
    if delta_phi_sq <= 0:
        raise DomainError("delta_phi_sq must be positive")
    return math.log(1.0 / (n_total * delta_phi_sq)) / math.log(n_total)


def cramer_rao(state: NPhotonState, ops: JOperatorSet | None = None) -> float:
    """Quantum Cramer-Rao bound ``1 / (4 Var(J3))`` for phase shifts generated by J3."""
    ops = _ops(state, ops)
    dj3_sq = variance(ops.j3, state)
    if dj3_sq <= 0:
        raise DomainError("Var(J3) = 0: the state is insensitive to the phase")
    return 1.0 / (4.0 * dj3_sq)


def sensitivity_report(state: NPhotonState, eta: float | None = None, ops: JOperatorSet | None = None) -> SensitivityReport:
    ops = _ops(state, ops)
    n = state.n_total
    j1 = expectation(ops.j1, state)
    dj2_sq = variance(ops.j2, state)
    dj3_sq = variance(ops.j3, state)
    dphi = phase_error(state, ops)
    return SensitivityReport(
        n_total=n,
        eta=eta,
        j1_mean=j1,
        dj2_sq=dj2_sq,
        dj3_sq=dj3_sq,
        delta_phi_sq=dphi,
        q=q_enhancement(n, dphi) if n >= 2 else None,
        crb=1.0 / (4.0 * dj3_sq),
        squeeze_ratio=math.sqrt(max(dj2_sq, 0.0) / dj3_sq),
        mean_pair_photons=mean_pair_photons(state, ops),
    )


def eta_report(n_total: int, eta: float) -> SensitivityReport:
    return sensitivity_report(eta_state(n_total, eta), eta)


@dataclass(frozen=True)
class SqueezingPredictions:
    """Low-eta analytic estimates and the saturation bounds for one (N, eta).

    Prediction fields are ``None`` when ``eta >= 1``.
    """

    n_total: int
    eta: float
    valid: bool
    validity_threshold: float
    squeeze_ratio: float | None
    mean_pair_photons: float | None
    delta_phi_sq: float | None
    q: float | None
    max_pair_photons_bound: float
    min_delta_phi_sq_bound: float

    def as_dict(self) -> dict:
        return asdict(self)


def validity_threshold(n_total: int) -> float:
    """Largest eta for which the low-eta squeezing picture holds: ``1 - 1/sqrt(2N)``."""
    return 1.0 - 1.0 / math.sqrt(2 * n_total)


def approx_q(n_total: int, eta: float) -> float:
    """Q implied by ``N dphi^2 = (1 - eta)/(1 + eta)``, i.e. taking ``<J1> ~ N/2``."""
    if not 0 <= eta < 1:
        raise DomainError("approximate Q requires 0 <= eta < 1")
    return math.log((1 + eta) / (1 - eta)) / math.log(n_total)


def squeezing_predictions(n_total: int, eta: float) -> SqueezingPredictions:
    threshold = validity_threshold(n_total)
    bounds = dict(
        max_pair_photons_bound=math.sqrt(n_total / 2),
        min_delta_phi_sq_bound=(2 * n_total) ** -1.5,
    )
    if eta >= 1.0:
        return SqueezingPredictions(
            n_total, eta, False, threshold, None, None, None, None, **bounds
        )
    ratio = (1 - eta) / (1 + eta)
    return SqueezingPredictions(
        n_total=n_total,
        eta=eta,
        valid=eta < threshold,
        validity_threshold=threshold,
        squeeze_ratio=ratio,
        mean_pair_photons=eta * eta / (1 - eta * eta),
        delta_phi_sq=ratio / n_total,
        q=approx_q(n_total, eta) if n_total >= 2 else None,
        **bounds,
    )


def weak_limit_q(n_total: int, eta: float) -> float:
    """First-order Q for weak down-conversion, ``2 (N-1) / ln N * eta / N``."""
    if n_total < 2:
        raise DomainError("Q is undefined for N < 2")
    return 2 * (n_total - 1) / math.log(n_total) * eta / n_total
