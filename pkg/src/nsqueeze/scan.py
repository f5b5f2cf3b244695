"""Parameter sweeps over eta and the interferometer phase."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from . import DomainError
from .etastate import eta_state, normalization_c_sq, ratio_sq_pair
from .metrics import eta_report, phase_error
from .schwinger import build_operators, expectation, output_distribution

DEFAULT_ETA_STEP = 0.005
DEFAULT_ETA_MAX = 1.5
REFINE_TOL = 1e-4
DEFAULT_PHASE_INTERVALS = 20
TABLE1_ETAS = (1 / 3, 1 / 2, 1.0)
TABLE1_NS = tuple(range(3, 9))


@dataclass(frozen=True)
class EtaScanRow:
    eta: float
    j1_mean: float
    dj2_sq: float
    dj3_sq: float
    delta_phi_sq: float
    q: float
    crb: float
    squeeze_ratio: float
    mean_pair_photons: float
    c_n_sq: float
    ratio_sq_pair: float

    @classmethod
    def columns(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class PhaseScanRow:
    phi: float
    probabilities: tuple[float, ...]
    mean_j2: float


@dataclass(frozen=True)
class Table1Entry:
    n_total: int
    eta: float
    ratio: float
    ratio_stirling: float
    n_delta_phi_sq: float


@dataclass(frozen=True)
class Extremum:
    eta: float
    value: float


def eta_grid(step: float = DEFAULT_ETA_STEP, stop: float = DEFAULT_ETA_MAX, start: float = 0.0) -> list[float]:
    """Inclusive, evenly spaced grid; values are rounded to kill float drift."""
    if step <= 0:
        raise ValueError("step must be positive")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + i * step, 12) for i in range(count)]


def phase_grid(intervals: int = DEFAULT_PHASE_INTERVALS) -> list[float]:
    """``intervals`` equal steps over ``[0, 2 pi)``."""
    if intervals < 1:
        raise ValueError("intervals must be >= 1")
    return [2 * math.pi * i / intervals for i in range(intervals)]


def eta_row(n_total: int, eta: float) -> EtaScanRow:
    if eta < 0:
        raise DomainError("eta must be >= 0")
    rep = eta_report(n_total, eta)
    ratio = ratio_sq_pair(n_total, eta)[0] if eta > 0 else math.inf
    return EtaScanRow(
        eta=eta,
        j1_mean=rep.j1_mean,
        dj2_sq=rep.dj2_sq,
        dj3_sq=rep.dj3_sq,
        delta_phi_sq=rep.delta_phi_sq,
        q=rep.q,
        crb=rep.crb,
        squeeze_ratio=rep.squeeze_ratio,
        mean_pair_photons=rep.mean_pair_photons,
        c_n_sq=normalization_c_sq(n_total, eta),
        ratio_sq_pair=ratio,
    )


def _ordered_map(func: Callable, args: Iterable, workers: int) -> list:
    args = list(args)
    if workers <= 1 or len(args) < 2:
        return [func(*a) for a in args]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map() yields in submission order regardless of completion order
        return list(pool.map(_star, [(func, a) for a in args]))


def _star(packed):
    func, a = packed
    return func(*a)


def eta_scan(n_total: int, etas: Sequence[float], workers: int = 1) -> list[EtaScanRow]:
    """One row of figures of merit per eta, in grid order."""
    if n_total < 2:
        raise DomainError("eta scans need N >= 2 (Q is undefined for N = 1)")
    return _ordered_map(eta_row, [(n_total, float(e)) for e in etas], workers)


def phase_row(n_total: int, eta: float, phi: float) -> PhaseScanRow:
    state = eta_state(n_total, eta)
    ops = build_operators(n_total)
    probs = output_distribution(state, phi, ops)
    mean = float(np.dot(ops.m_values, probs))
    return PhaseScanRow(phi=phi, probabilities=tuple(float(p) for p in probs), mean_j2=mean)


def phase_scan(n_total: int, eta: float, phis: Sequence[float] | None = None, workers: int = 1) -> list[PhaseScanRow]:
    """Output distributions of ``J2(phi)`` for the eta-state over a phase grid."""
    if phis is None:
        phis = phase_grid()
    return _ordered_map(phase_row, [(n_total, eta, float(p)) for p in phis], workers)


def minimize_over_eta(
    func: Callable[[float], float],
    step: float = DEFAULT_ETA_STEP,
    stop: float = DEFAULT_ETA_MAX,
    tol: float = REFINE_TOL,
) -> Extremum:
    """Grid search on ``[0, stop]`` followed by golden-section refinement."""
    grid = eta_grid(step, stop)
    values = np.array([func(e) for e in grid])
    i = int(np.argmin(values))
    if i == 0 or i == len(grid) - 1:
        return Extremum(grid[i], float(values[i]))
    bracket = (grid[i - 1], grid[i], grid[i + 1])
    res = minimize_scalar(func, bracket=bracket, method="golden", tol=tol)
    if res.fun <= values[i]:
        return Extremum(float(res.x), float(res.fun))
    return Extremum(grid[i], float(values[i]))


def min_phase_error(n_total: int, step: float = DEFAULT_ETA_STEP, stop: float = DEFAULT_ETA_MAX) -> Extremum:
    ops = build_operators(n_total)
    return minimize_over_eta(lambda e: phase_error(eta_state(n_total, e), ops), step, stop)


def max_q(n_total: int, step: float = DEFAULT_ETA_STEP, stop: float = DEFAULT_ETA_MAX) -> Extremum:
    """Maximal quantum enhancement over eta (Q is monotone in the phase error)."""
    best = min_phase_error(n_total, step, stop)
    q = math.log(1.0 / (n_total * best.value)) / math.log(n_total)
    return Extremum(best.eta, q)


def table1(etas: Sequence[float] = TABLE1_ETAS, ns: Sequence[int] = TABLE1_NS) -> list[Table1Entry]:
    """Generation-rate advantage and ``N dphi^2`` for each (N, eta) pair, N-major order."""
    out = []
    for n in ns:
        ops = build_operators(n)
        for eta in etas:
            ratio, stirling = ratio_sq_pair(n, eta)
            dphi = phase_error(eta_state(n, eta), ops)
            out.append(Table1Entry(n, float(eta), ratio, stirling, n * dphi))
    return out


def mean_j2_heisenberg(n_total: int, eta: float, phi: float) -> float:
    """``<J2(phi)>`` evaluated in the Heisenberg picture, for cross-checks."""
    ops = build_operators(n_total)
    state = eta_state(n_total, eta)
    return math.cos(phi) * expectation(ops.j2, state) + math.sin(phi) * expectation(ops.j1, state)
