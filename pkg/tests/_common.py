"""Shared constants, config builders and independent oracles for the tests.

The double-integral oracle here is deliberately written against the raw
autocovariance with Gauss-Legendre quadrature so the closed-form variance
expressions are checked by an independent route.
"""

import math

import numpy as np

from berrysim.ensemble import EnsembleConfig
from berrysim.noise import NoiseParams
from berrysim.path import LoopSpec, default_time_step, normalized_amplitude_to_power, omega_for_solid_angle, polar_angle
from berrysim.protocol import SequenceConfig, recommended_ramp_time
from berrysim.units import mhz_to_rad_per_ns

DETUNING = mhz_to_rad_per_ns(-50.0)     # reference operating point, rad/ns
RATE_10MHZ = mhz_to_rad_per_ns(10.0)    # OU bandwidth, 1/ns
A_SEVEN_SIXTEENTHS = 7.0 * math.pi / 16.0
S_FIFTEENTH = 1.0 / 15.0


def loop_for_solid_angle(a, tau, sequence_kind="berry-echo", dt=None, ramp_time=None,
                         noise_rate=RATE_10MHZ):
    omega = omega_for_solid_angle(a, DETUNING)
    b = math.hypot(omega, DETUNING)
    if ramp_time is None:
        ramp_time = recommended_ramp_time(sequence_kind, tau)
    if dt is None:
        dt = default_time_step(tau, b, noise_rate)
    return LoopSpec(omega=omega, delta=DETUNING, tau=tau, ramp_time=ramp_time, dt=dt)


def radial_params(a, s=S_FIFTEENTH, rate=RATE_10MHZ, stream_id=0):
    omega = omega_for_solid_angle(a, DETUNING)
    power = normalized_amplitude_to_power(s, "radial", omega)
    return NoiseParams(power=power, rate=rate, kind="radial", stream_id=stream_id)


def angular_params(s=S_FIFTEENTH, rate=RATE_10MHZ, stream_id=0):
    return NoiseParams(power=normalized_amplitude_to_power(s, "angular"), rate=rate,
                       kind="angular", stream_id=stream_id)


def sequence_config(a, tau, kind="radial", sequence_kind="berry-echo", s=S_FIFTEENTH,
                    dt=None, ramp_time=None, shots=None):
    loop = loop_for_solid_angle(a, tau, sequence_kind, dt=dt, ramp_time=ramp_time)
    noise = None
    if kind is not None and s > 0:
        noise = radial_params(a, s) if kind == "radial" else angular_params(s)
    return SequenceConfig(loop=loop, noise=noise, sequence_kind=sequence_kind, shots=shots)


def ensemble_config(a, tau, kind="radial", sequence_kind="berry-echo", s=S_FIFTEENTH,
                    realizations=300, master_seed=0, workers=1, dt=None, ramp_time=None):
    seq = sequence_config(a, tau, kind, sequence_kind, s, dt=dt, ramp_time=ramp_time)
    return EnsembleConfig(sequence=seq, realizations=realizations,
                          master_seed=master_seed, workers=workers)


def ou_double_integral(power, rate, tau, nodes=200):
    """Var(int_0^tau X dt) by 2-d Gauss-Legendre over the autocovariance.

    Uses symmetry: 2 * int_0^tau dt int_0^t ds P exp(-rate (t - s)), with
    the inner integral evaluated on its own scaled node set so the kink on
    the diagonal never enters any panel.
    """
    x, w = np.polynomial.legendre.leggauss(nodes)
    t = 0.5 * tau * (x + 1.0)
    wt = 0.5 * tau * w
    s = 0.5 * t[:, None] * (x[None, :] + 1.0)
    ws = 0.5 * t[:, None] * w[None, :]
    inner = np.sum(np.exp(-rate * (t[:, None] - s)) * ws, axis=1)
    return float(2.0 * power * np.sum(inner * wt))


def theta_b_for(a):
    omega = omega_for_solid_angle(a, DETUNING)
    return polar_angle(omega, DETUNING), math.hypot(omega, DETUNING)
