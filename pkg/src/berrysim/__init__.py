"""Monte Carlo simulator of geometric vs dynamic dephasing for a driven
two-level system under Ornstein-Uhlenbeck control-field noise."""

__version__ = "0.1.0"

from .ensemble import EnsembleConfig, EnsembleStats, gaussian_check, normalize_coherence, run_ensemble
from .evolve import QubitState, bloch_expectations, ground_state, propagate, step_unitary
from .noise import NoiseParams, NoiseTrace, ou_autocovariance, ou_generate
from .path import (
    FieldTrace,
    LoopSpec,
    build_field_trace,
    normalized_amplitude_to_power,
    omega_for_solid_angle,
    polar_angle,
    solid_angle,
)
from .protocol import (
    SequenceConfig,
    SequenceResult,
    berry_echo_run,
    dynamic_echo_run,
    extract_phase,
    sample_readout,
)
from .theory import (
    TheoryInput,
    berry_phase_ideal,
    coherence_from_sigma,
    crossover_time,
    delta_gamma_first_order,
    variance_dynamic,
    variance_geometric,
)

__all__ = [
    "EnsembleConfig",
    "EnsembleStats",
    "FieldTrace",
    "LoopSpec",
    "NoiseParams",
    "NoiseTrace",
    "QubitState",
    "SequenceConfig",
    "SequenceResult",
    "TheoryInput",
    "berry_echo_run",
    "berry_phase_ideal",
    "bloch_expectations",
    "build_field_trace",
    "coherence_from_sigma",
    "crossover_time",
    "delta_gamma_first_order",
    "dynamic_echo_run",
    "extract_phase",
    "gaussian_check",
    "ground_state",
    "normalize_coherence",
    "normalized_amplitude_to_power",
    "omega_for_solid_angle",
    "ou_autocovariance",
    "ou_generate",
    "polar_angle",
    "propagate",
    "run_ensemble",
    "sample_readout",
    "solid_angle",
    "step_unitary",
    "variance_dynamic",
    "variance_geometric",
]
