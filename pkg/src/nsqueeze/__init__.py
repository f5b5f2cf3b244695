"""Two-mode Fock-space simulation of N-photon interferometric squeezing.

Coherent light in one input port and weak down-converted pairs in the other
are post-selected on a fixed total photon number ``N``; the resulting state
is characterised by a single parameter ``eta = N * gamma / alpha**2``.
"""

__version__ = "0.1.0"


class DomainError(ValueError):
    """A numerical quantity is undefined for the given inputs."""


class EmptySectorError(DomainError):
    """The requested photon-number sector carries zero probability."""


from .fock import (  # noqa: E402
    ModeAmplitudes,
    NPhotonState,
    coherent_amplitudes,
    pair_generation_probability,
    post_select_n,
    squeezed_vacuum_amplitudes,
)
from .schwinger import (  # noqa: E402
    JOperatorSet,
    SpectralDecomposition,
    build_operators,
    expectation,
    output_distribution,
    rotated_j2,
    variance,
)
from .etastate import (  # noqa: E402
    GenerationStats,
    eta_from_inputs,
    eta_state,
    generation_probability_sq,
    generation_stats,
    normalization_c_sq,
    ratio_sq_pair,
)
from .metrics import SensitivityReport, phase_error, q_enhancement, sensitivity_report  # noqa: E402

__all__ = [
    "DomainError",
    "EmptySectorError",
    "ModeAmplitudes",
    "NPhotonState",
    "coherent_amplitudes",
    "squeezed_vacuum_amplitudes",
    "post_select_n",
    "pair_generation_probability",
    "JOperatorSet",
    "SpectralDecomposition",
    "build_operators",
    "expectation",
    "variance",
    "rotated_j2",
    "output_distribution",
    "GenerationStats",
    "eta_from_inputs",
    "eta_state",
    "normalization_c_sq",
    "generation_probability_sq",
    "generation_stats",
    "ratio_sq_pair",
    "SensitivityReport",
    "phase_error",
    "q_enhancement",
    "sensitivity_report",
]
