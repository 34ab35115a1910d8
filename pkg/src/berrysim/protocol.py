"""Spin-echo Ramsey sequences for Berry- and dynamic-phase measurement.

berry-echo: ideal pi/2 pulse about y from |0>, a ramped loop at the
configured orientation, an ideal pi pulse about x, then the same loop with
reversed orientation replaying the identical noise record. The echo
cancels dynamic phase (common to both arms) while the geometric phases of
the two branches and two loops add, so the measured equatorial angle moves
by four times the per-loop geometric phase.

dynamic-echo: pi/2 pulse, one ramped drive pulse at fixed azimuth with
noise, pi pulse, then an equal idle period at bare detuning. The echo
leaves the drive-minus-idle phase integral, whose noise deviation is the
integrated radial fluctuation of the field magnitude; the measured angle
moves by one times that per-pulse phase.

Resonant pi/2 and pi pulses are instantaneous ideal unitaries: they are
fast against every other timescale and their imperfections are
hardware-specific. Phases are unwrapped against the noiseless run of the
same configuration.
"""

import math
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from .errors import InvalidArgumentError, UndefinedPhaseError
from .evolve import QubitState, compose, propagate_tracked, step_unitaries
from .noise import NoiseParams, NoiseTrace
from .path import (
    LoopSpec,
    arm_sample_count,
    build_drive_trace,
    build_field_trace,
    build_idle_trace,
    drive_profiles,
    field_components,
    loop_profiles,
)
from .rng import READOUT_DOMAIN, substream

SEQUENCE_KINDS = ("berry-echo", "dynamic-echo")

#: Ratio of measured total phase to the reported per-loop phase.
PHASE_MULTIPLIER = {"berry-echo": 4, "dynamic-echo": 1}

_SQ = math.sqrt(0.5)
PI_HALF_Y = np.array([[_SQ, -_SQ], [_SQ, _SQ]], dtype=complex)
PI_X = np.array([[0.0, -1.0j], [-1.0j, 0.0]], dtype=complex)

#: Ramp fraction per sequence kind. The berry echo replays its noise in
#: both arms, so ramp noise cancels and long ramps only buy adiabaticity;
#: 0.31*tau keeps the noiseless phase within ~0.02 rad of A/2 across the
#: full range of solid angles while sitting in a low-leakage window (the
#: residual non-adiabatic response rings at the gap frequency, and its
#: noise pickup oscillates with ramp duration). The dynamic echo has a
#: single noisy arm whose ramp windows add variance beyond the
#: plateau-only closed form, so its ramps stay short.
RAMP_FRACTION = {"berry-echo": 0.31, "dynamic-echo": 1.0 / 16.0}


def recommended_ramp_time(sequence_kind: str, tau: float) -> float:
    """Default drive ramp duration for a sequence of loop time ``tau``."""
    if sequence_kind not in RAMP_FRACTION:
        raise InvalidArgumentError(f"unknown sequence kind {sequence_kind!r}")
    return RAMP_FRACTION[sequence_kind] * tau


@dataclass(frozen=True)
class SequenceConfig:
    """One measurement sequence: control loop, optional noise, readout."""

    loop: LoopSpec
    noise: Optional[NoiseParams] = None
    sequence_kind: str = "berry-echo"
    shots: Optional[int] = None

    def __post_init__(self):
        if self.sequence_kind not in SEQUENCE_KINDS:
            raise InvalidArgumentError(
                f"sequence_kind must be one of {SEQUENCE_KINDS}, got {self.sequence_kind!r}"
            )
        if self.shots is not None and self.shots < 1:
            raise InvalidArgumentError(f"shots must be >= 1, got {self.shots}")


@dataclass(frozen=True)
class SequenceResult:
    """Final Bloch expectations and the unwrapped phase of one run."""

    x: float
    y: float
    z: float
    total_phase: float
    extracted_phase: float
    realization_id: int = 0


def extract_phase(x: float, y: float, reference: float) -> float:
    """atan2(y, x) shifted by the 2*pi multiple closest to ``reference``.

    The result lies within pi of the reference; a half-winding tie rounds
    toward the reference from below.
    """
    if x == 0.0 and y == 0.0:
        raise UndefinedPhaseError("phase undefined for zero equatorial vector")
    raw = math.atan2(y, x)
    two_pi = 2.0 * math.pi
    k = math.ceil((reference - raw) / two_pi - 0.5)
    return raw + two_pi * k


def sample_readout(
    expectation: float, shots: int, stream: int, master_seed: int = 0, component: int = 0
) -> float:
    """Binomially sampled estimate of an expectation value in [-1, 1]."""
    if shots < 1:
        raise InvalidArgumentError(f"shots must be >= 1, got {shots}")
    if not -1.0 <= expectation <= 1.0:
        raise InvalidArgumentError(f"expectation must lie in [-1, 1], got {expectation}")
    rng = substream(master_seed, READOUT_DOMAIN, stream, component)
    successes = rng.binomial(shots, (1.0 + expectation) / 2.0)
    return 2.0 * successes / shots - 1.0


def _second_arm_spec(loop: LoopSpec) -> LoopSpec:
    return replace(loop, orientation=-loop.orientation)


def _arm_traces(config: SequenceConfig):
    """Noiseless FieldTraces of both arms, for reference tracking."""
    loop = config.loop
    if config.sequence_kind == "berry-echo":
        return build_field_trace(loop), build_field_trace(_second_arm_spec(loop))
    drive = build_drive_trace(loop)
    return drive, build_idle_trace(loop.delta, len(drive), loop.dt)


def noiseless_reference(config: SequenceConfig) -> float:
    """Continuously unwrapped total phase of the noiseless sequence.

    Computed once per configuration and used as the unwrapping anchor for
    every noisy realization. The pi pulse maps the tracked angle to its
    exact negative, so unwrapping never crosses it blindly.
    """
    trace1, trace2 = _arm_traces(config)
    state = QubitState(complex(PI_HALF_Y[0, 0]), complex(PI_HALF_Y[1, 0]))
    state, theta = propagate_tracked(trace1, state, 0.0)
    vec = PI_X @ state.vector
    state = QubitState(complex(vec[0]), complex(vec[1]))
    _, theta = propagate_tracked(trace2, state, -theta)
    return theta


def _sequence_unitaries(config: SequenceConfig, injections: Optional[np.ndarray]) -> np.ndarray:
    """Total sequence unitaries, batched over injection rows."""
    loop = config.loop
    kind = config.noise.kind if config.noise is not None else None
    if config.sequence_kind == "berry-echo":
        om1, ph1 = loop_profiles(loop)
        om2, ph2 = loop_profiles(_second_arm_spec(loop))
        u1 = compose(step_unitaries(field_components(om1, ph1, loop.delta, injections, kind), loop.dt))
        u2 = compose(step_unitaries(field_components(om2, ph2, loop.delta, injections, kind), loop.dt))
    else:
        om1, ph1 = drive_profiles(loop)
        u1 = compose(step_unitaries(field_components(om1, ph1, loop.delta, injections, kind), loop.dt))
        idle = build_idle_trace(loop.delta, om1.size, loop.dt)
        u2 = compose(step_unitaries(idle.samples, loop.dt))
    total = np.matmul(u1, PI_HALF_Y)
    total = np.matmul(PI_X, total)
    return np.matmul(u2, total)


def run_sequence_batch(
    config: SequenceConfig,
    injections: Optional[np.ndarray],
    reference: float,
    realization_ids: Sequence[int],
    master_seed: int = 0,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Run one sequence per injection row; returns (x, y, z, total, extracted).

    ``injections`` has shape (R, n_arm) with one noise record per
    realization, replayed identically wherever the sequence reuses it, or
    None for a noiseless batch of length len(realization_ids).
    """
    n_arm = arm_sample_count(config.loop)
    if injections is not None:
        injections = np.atleast_2d(np.asarray(injections, dtype=float))
        if injections.shape[1] != n_arm:
            raise InvalidArgumentError(
                f"injections have {injections.shape[1]} samples, arm needs {n_arm}"
            )
    total_u = _sequence_unitaries(config, injections)
    if total_u.ndim == 2:
        total_u = np.broadcast_to(total_u, (len(realization_ids), 2, 2))
    a0 = total_u[..., 0, 0]
    a1 = total_u[..., 1, 0]
    cross = np.conj(a0) * a1
    x = 2.0 * cross.real
    y = 2.0 * cross.imag
    z = np.abs(a0) ** 2 - np.abs(a1) ** 2
    if config.shots is not None:
        x = x.copy()
        y = y.copy()
        z = z.copy()
        for row, rid in enumerate(realization_ids):
            x[row] = sample_readout(x[row], config.shots, rid, master_seed, component=0)
            y[row] = sample_readout(y[row], config.shots, rid, master_seed, component=1)
            z[row] = sample_readout(z[row], config.shots, rid, master_seed, component=2)
    raw = np.arctan2(y, x)
    two_pi = 2.0 * math.pi
    total = raw + two_pi * np.ceil((reference - raw) / two_pi - 0.5)
    extracted = total / PHASE_MULTIPLIER[config.sequence_kind]
    return x, y, z, total, extracted


def _run_single(
    config: SequenceConfig,
    noise_trace: Optional[NoiseTrace],
    reference: Optional[float],
    master_seed: int,
    realization_id: int,
) -> SequenceResult:
    if config.noise is not None and noise_trace is None:
        raise InvalidArgumentError("config has noise but no noise_trace was supplied")
    if noise_trace is not None:
        if noise_trace.dt != config.loop.dt:
            raise InvalidArgumentError(
                f"noise_trace dt {noise_trace.dt} does not match loop dt {config.loop.dt}"
            )
        injections = noise_trace.samples[None, :]
    else:
        injections = None
    if reference is None:
        reference = noiseless_reference(config)
    x, y, z, total, extracted = run_sequence_batch(
        config, injections, reference, [realization_id], master_seed
    )
    return SequenceResult(
        x=float(x[0]),
        y=float(y[0]),
        z=float(z[0]),
        total_phase=float(total[0]),
        extracted_phase=float(extracted[0]),
        realization_id=realization_id,
    )


def berry_echo_run(
    config: SequenceConfig,
    noise_trace: Optional[NoiseTrace] = None,
    reference: Optional[float] = None,
    master_seed: int = 0,
    realization_id: int = 0,
) -> SequenceResult:
    """Run the Berry-phase echo sequence for one noise realization."""
    if config.sequence_kind != "berry-echo":
        raise InvalidArgumentError(f"expected a berry-echo config, got {config.sequence_kind!r}")
    return _run_single(config, noise_trace, reference, master_seed, realization_id)


def dynamic_echo_run(
    config: SequenceConfig,
    noise_trace: Optional[NoiseTrace] = None,
    reference: Optional[float] = None,
    master_seed: int = 0,
    realization_id: int = 0,
) -> SequenceResult:
    """Run the dynamic-phase echo sequence for one noise realization."""
    if config.sequence_kind != "dynamic-echo":
        raise InvalidArgumentError(f"expected a dynamic-echo config, got {config.sequence_kind!r}")
    return _run_single(config, noise_trace, reference, master_seed, realization_id)


def run_sequence(
    config: SequenceConfig,
    noise_trace: Optional[NoiseTrace] = None,
    reference: Optional[float] = None,
    master_seed: int = 0,
    realization_id: int = 0,
) -> SequenceResult:
    """Dispatch to the configured sequence kind."""
    return _run_single(config, noise_trace, reference, master_seed, realization_id)
