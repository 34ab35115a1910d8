"""Effective-field construction for a circular control loop.

The field is B = (B_rho cos(phi), B_rho sin(phi), Delta) in rad/ns. A loop
consists of a linear ramp of the drive amplitude 0 -> Omega at phi = 0, a
plateau where phi advances linearly by orientation * 2*pi over the loop
time tau, and a linear ramp back to zero at the final azimuth. Noise is
injected either radially (B_rho += drho) or azimuthally (phi += dphi);
azimuthal injection rigidly rotates samples and leaves B_rho and B_z
untouched, which is why it preserves the enclosed solid angle.

Samples are taken at interval midpoints and each sample is held constant
for one step dt, so the propagator in :mod:`berrysim.evolve` sees a
piecewise-constant field with second-order accurate discretization.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DegenerateFieldError, InvalidArgumentError
from .noise import NoiseTrace

PLATEAU_STEPS = 5000  # default resolution of the loop itself


def default_time_step(tau: float, b_max: float, noise_rate: Optional[float] = None) -> float:
    """Step resolving the loop, the precession and the noise correlation.

    Tight enough that halving it moves a propagated state by < 1e-6.
    """
    dt = tau / PLATEAU_STEPS
    if b_max > 0:
        dt = min(dt, 0.02 / b_max)
    if noise_rate:
        dt = min(dt, 0.1 / noise_rate)
    return dt


@dataclass(frozen=True)
class LoopSpec:
    """Circular control path.

    omega: drive amplitude in rad/ns (loop radius B_rho).
    delta: detuning in rad/ns, signed; geometry uses the magnitude but the
        stored sign is what the propagator sees as B_z.
    tau: loop duration in ns.
    orientation: +1 sweeps phi 0 -> 2*pi, -1 sweeps 0 -> -2*pi.
    ramp_time: drive ramp duration in ns (default tau/8).
    dt: integration step in ns (default via :func:`default_time_step`).
    """

    omega: float
    delta: float
    tau: float
    orientation: int = +1
    ramp_time: Optional[float] = None
    dt: Optional[float] = None

    def __post_init__(self):
        if self.omega < 0:
            raise InvalidArgumentError(f"omega must be >= 0, got {self.omega}")
        if self.tau <= 0:
            raise InvalidArgumentError(f"tau must be > 0, got {self.tau}")
        if self.orientation not in (+1, -1):
            raise InvalidArgumentError(f"orientation must be +1 or -1, got {self.orientation}")
        if self.ramp_time is None:
            object.__setattr__(self, "ramp_time", self.tau / 8.0)
        if self.ramp_time < 0:
            raise InvalidArgumentError(f"ramp_time must be >= 0, got {self.ramp_time}")
        if self.dt is None:
            object.__setattr__(self, "dt", default_time_step(self.tau, math.hypot(self.omega, self.delta)))
        if self.dt <= 0:
            raise InvalidArgumentError(f"dt must be > 0, got {self.dt}")
        if self.dt > self.tau / 100.0:
            raise InvalidArgumentError(f"dt={self.dt} too coarse: must be <= tau/100 = {self.tau / 100.0}")

    @property
    def theta(self) -> float:
        """Polar angle of the plateau field."""
        return polar_angle(self.omega, self.delta)

    @property
    def b_magnitude(self) -> float:
        return math.hypot(self.omega, self.delta)


@dataclass(frozen=True)
class FieldTrace:
    """Time-sampled field triples (B_x, B_y, B_z) in rad/ns."""

    samples: np.ndarray
    dt: float

    def __post_init__(self):
        object.__setattr__(self, "samples", np.asarray(self.samples, dtype=float))
        if self.samples.ndim != 2 or self.samples.shape[1] != 3 or self.samples.shape[0] < 1:
            raise InvalidArgumentError("samples must have shape (n, 3) with n >= 1")

    def __len__(self) -> int:
        return self.samples.shape[0]


def polar_angle(omega: float, delta: float) -> float:
    """arctan(Omega / |Delta|) in [0, pi/2]."""
    if omega == 0.0 and delta == 0.0:
        raise DegenerateFieldError("polar angle undefined for omega = delta = 0")
    return math.atan2(omega, abs(delta))


def solid_angle(theta: float) -> float:
    """Solid angle 2*pi*(1 - cos(theta)) of a cone of half-angle theta."""
    if not 0.0 <= theta <= math.pi / 2 + 1e-12:
        raise InvalidArgumentError(f"theta must lie in [0, pi/2], got {theta}")
    return 2.0 * math.pi * (1.0 - math.cos(theta))


def omega_for_solid_angle(a: float, delta: float) -> float:
    """Drive amplitude giving enclosed solid angle ``a`` at detuning ``delta``."""
    if not 0.0 <= a < 2.0 * math.pi:
        raise InvalidArgumentError(f"solid angle must lie in [0, 2*pi), got {a}")
    theta = math.acos(1.0 - a / (2.0 * math.pi))
    return abs(delta) * math.tan(theta)


def normalized_amplitude_to_power(s: float, kind: str, b_rho: Optional[float] = None) -> float:
    """Noise power from the normalized amplitude s.

    Radial: P = (s * B_rho)^2, so s = sqrt(P)/B_rho. Angular: P = s^2.
    Equal s gives first-order-identical field displacement for both kinds.
    """
    if s < 0:
        raise InvalidArgumentError(f"s must be >= 0, got {s}")
    if kind == "radial":
        if not b_rho or b_rho <= 0:
            raise InvalidArgumentError("radial noise requires b_rho > 0")
        return (s * b_rho) ** 2
    if kind == "angular":
        return s**2
    raise InvalidArgumentError(f"unknown noise kind {kind!r}")


def _segment_counts(spec: LoopSpec) -> tuple[int, int]:
    n_ramp = int(round(spec.ramp_time / spec.dt))
    n_loop = max(1, int(round(spec.tau / spec.dt)))
    return n_ramp, n_loop


def arm_sample_count(spec: LoopSpec) -> int:
    """Number of field samples covering ramp + loop + ramp."""
    n_ramp, n_loop = _segment_counts(spec)
    return 2 * n_ramp + n_loop


def plateau_slice(spec: LoopSpec) -> slice:
    """Index range of the loop plateau within an arm trace."""
    n_ramp, n_loop = _segment_counts(spec)
    return slice(n_ramp, n_ramp + n_loop)


def loop_profiles(spec: LoopSpec) -> tuple[np.ndarray, np.ndarray]:
    """Midpoint-sampled amplitude and azimuth profiles of one loop arm."""
    n_ramp, n_loop = _segment_counts(spec)
    full_turn = spec.orientation * 2.0 * math.pi
    omega_t = np.empty(2 * n_ramp + n_loop)
    phi_t = np.empty_like(omega_t)
    if n_ramp:
        frac = (np.arange(n_ramp) + 0.5) / n_ramp
        omega_t[:n_ramp] = spec.omega * frac
        omega_t[n_ramp + n_loop:] = spec.omega * (1.0 - frac)
        phi_t[:n_ramp] = 0.0
        phi_t[n_ramp + n_loop:] = full_turn
    omega_t[n_ramp:n_ramp + n_loop] = spec.omega
    phi_t[n_ramp:n_ramp + n_loop] = full_turn * (np.arange(n_loop) + 0.5) / n_loop
    return omega_t, phi_t


def drive_profiles(spec: LoopSpec) -> tuple[np.ndarray, np.ndarray]:
    """Profiles of a ramped drive pulse at fixed azimuth phi = 0."""
    omega_t, phi_t = loop_profiles(spec)
    return omega_t, np.zeros_like(phi_t)


def field_components(
    omega_t: np.ndarray,
    phi_t: np.ndarray,
    delta: float,
    injection: Optional[np.ndarray] = None,
    kind: Optional[str] = None,
) -> np.ndarray:
    """Assemble (..., n, 3) field samples, optionally noise-injected.

    ``injection`` broadcasts against the profiles, so a batch of traces of
    shape (R, n) produces a batch of field arrays in one call.
    """
    if injection is None:
        b_rho, phi = omega_t, phi_t
    elif kind == "radial":
        b_rho, phi = omega_t + injection, phi_t + np.zeros_like(injection)
    elif kind == "angular":
        b_rho, phi = omega_t + np.zeros_like(injection), phi_t + injection
    else:
        raise InvalidArgumentError(f"unknown noise kind {kind!r}")
    out = np.empty(np.broadcast(b_rho, phi).shape + (3,))
    out[..., 0] = b_rho * np.cos(phi)
    out[..., 1] = b_rho * np.sin(phi)
    out[..., 2] = delta
    return out


def _check_injection(spec: LoopSpec, injection: NoiseTrace, n_expected: int) -> np.ndarray:
    if injection.dt != spec.dt:
        raise InvalidArgumentError(
            f"injection dt {injection.dt} does not match spec dt {spec.dt}"
        )
    if len(injection) != n_expected:
        raise InvalidArgumentError(
            f"injection has {len(injection)} samples, arm needs {n_expected}"
        )
    return injection.samples


def build_field_trace(spec: LoopSpec, injection: Optional[NoiseTrace] = None) -> FieldTrace:
    """Field trace of one loop arm (ramp up, full turn, ramp down)."""
    omega_t, phi_t = loop_profiles(spec)
    if injection is None:
        samples = field_components(omega_t, phi_t, spec.delta)
    else:
        inj = _check_injection(spec, injection, omega_t.size)
        samples = field_components(omega_t, phi_t, spec.delta, inj, injection.params.kind)
    return FieldTrace(samples=samples, dt=spec.dt)


def build_drive_trace(spec: LoopSpec, injection: Optional[NoiseTrace] = None) -> FieldTrace:
    """Field trace of a ramped drive pulse at fixed azimuth."""
    omega_t, phi_t = drive_profiles(spec)
    if injection is None:
        samples = field_components(omega_t, phi_t, spec.delta)
    else:
        inj = _check_injection(spec, injection, omega_t.size)
        samples = field_components(omega_t, phi_t, spec.delta, inj, injection.params.kind)
    return FieldTrace(samples=samples, dt=spec.dt)


def build_idle_trace(delta: float, n_steps: int, dt: float) -> FieldTrace:
    """Constant bare-detuning field (0, 0, delta) for n_steps * dt."""
    if n_steps < 1 or dt <= 0:
        raise InvalidArgumentError("idle trace needs n_steps >= 1 and dt > 0")
    samples = np.zeros((n_steps, 3))
    samples[:, 2] = delta
    return FieldTrace(samples=samples, dt=dt)
