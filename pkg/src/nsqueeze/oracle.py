"""Brute-force reference for the eta-state, used by the test suite.

Builds both single-mode expansions from their series definitions with plain
Python arithmetic and post-selects the N-photon sector numerically. It
deliberately shares no code with the closed-form modules.
"""

from __future__ import annotations

import math

import numpy as np


def _coherent_series(alpha: float, n_max: int) -> list[float]:
    out = []
    term = math.exp(-alpha * alpha / 2)
    for n in range(n_max + 1):
        if n > 0:
            term *= alpha / math.sqrt(n)
        out.append(term)
    return out


def _squeezed_series(gamma: float, n_max: int) -> list[float]:
    # recursion c_{n+2} = -gamma sqrt((n+1)/(n+2)) c_n from (b + gamma b^dag)|g> = 0
    out = [0.0] * (n_max + 1)
    out[0] = (1 - gamma * gamma) ** 0.25
    for n in range(0, n_max - 1, 2):
        out[n + 2] = -gamma * math.sqrt((n + 1) / (n + 2)) * out[n]
    return out


def brute_force_eta_state(n_total: int, eta: float, gamma: float, n_max: int | None = None) -> np.ndarray:
    """Normalized sector amplitudes over ``|N-k; k>`` from ``|alpha> (x) |gamma>``."""
    if not 0 < gamma <= 1e-2:
        raise ValueError("gamma must lie in (0, 1e-2]")
    if eta <= 0:
        raise ValueError("eta must be > 0")
    if n_max is None:
        n_max = n_total + 10
    if n_max < n_total + 10:
        raise ValueError("n_max must be >= N + 10")
    alpha = math.sqrt(n_total * gamma / eta)
    a = _coherent_series(alpha, n_max)
    b = _squeezed_series(gamma, n_max)
    # full truncated product, then keep the total-N anti-diagonal
    product = np.outer(a, b)
    sector = np.array([product[n_total - k, k] for k in range(n_total + 1)])
    sector = sector / np.linalg.norm(sector)
    if sector[0] < 0:
        sector = -sector
    return sector
