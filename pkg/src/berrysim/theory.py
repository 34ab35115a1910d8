"""Closed-form predictions for phases, variances and the crossover time.

For a circular loop of polar angle theta, field magnitude B and duration
tau under radial OU noise of power P and bandwidth rate G, the first-order
per-loop phase variances are

    geometric: sigma_g^2 = 2 P (pi cos(theta) sin(theta) / (B tau))^2
                           * (G tau - 1 + exp(-G tau)) / G^2
    dynamic:   sigma_d^2 = 2 P sin(theta)^2
                           * (G tau - 1 + exp(-G tau)) / G^2

Both share the integrated-OU kernel Var(int_0^tau X dt); they are equal at
tau* = pi cos(theta) / B for any P and G. Angular noise contributes to
neither at first order.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError
from .noise import NoiseTrace, integrated_variance


@dataclass(frozen=True)
class TheoryInput:
    """Parameters entering the closed forms."""

    theta: float       # polar angle, rad
    b: float           # field magnitude, rad/ns
    tau: float         # loop duration, ns
    gamma_rate: float  # noise bandwidth, 1/ns
    power: float       # noise power, (rad/ns)^2

    def __post_init__(self):
        if self.theta < 0 or self.b <= 0 or self.tau <= 0 or self.gamma_rate <= 0:
            raise InvalidArgumentError("theta >= 0 and b, tau, gamma_rate > 0 required")
        if self.power < 0:
            raise InvalidArgumentError("power must be >= 0")


def berry_phase_ideal(a: float) -> float:
    """Per-loop geometric phase magnitude A/2 for enclosed solid angle A.

    Sign convention: the branch adiabatically following +B acquires -A/2;
    reported ensemble phases keep the simulation's signed value.
    """
    if not 0.0 <= a <= 4.0 * math.pi:
        raise InvalidArgumentError(f"solid angle must lie in [0, 4*pi], got {a}")
    return a / 2.0


def delta_gamma_first_order(delta_rho: NoiseTrace, theta: float, b: float, tau: float) -> float:
    """First-order geometric-phase deviation of one radial noise record.

    Evaluates -(pi/tau) * sin(theta) * (cos(theta)/B) * int_0^tau drho dt
    as a Riemann sum over the loop plateau; the passed trace must span at
    least tau (callers slice the plateau out of a full arm record).
    """
    n = int(round(tau / delta_rho.dt))
    if len(delta_rho) < n:
        raise InvalidArgumentError(
            f"trace spans {len(delta_rho) * delta_rho.dt} ns < tau = {tau} ns"
        )
    integral = float(np.sum(delta_rho.samples[:n])) * delta_rho.dt
    return -(math.pi / tau) * math.sin(theta) * (math.cos(theta) / b) * integral


def variance_geometric(inp: TheoryInput) -> float:
    """Geometric-phase variance sigma_g^2 in rad^2."""
    prefactor = (math.pi * math.cos(inp.theta) * math.sin(inp.theta) / (inp.b * inp.tau)) ** 2
    return prefactor * integrated_variance(inp.power, inp.gamma_rate, inp.tau)


def variance_dynamic(inp: TheoryInput) -> float:
    """Dynamic-phase variance sigma_d^2 in rad^2."""
    return math.sin(inp.theta) ** 2 * integrated_variance(inp.power, inp.gamma_rate, inp.tau)


def crossover_time(theta: float, b: float) -> float:
    """Evolution time pi*cos(theta)/B where both variances coincide."""
    if b <= 0:
        raise InvalidArgumentError(f"b must be > 0, got {b}")
    return math.pi * math.cos(theta) / b


def coherence_from_sigma(sigma: float) -> float:
    """Berry-echo coherence exp(-(4*sigma)^2 / 2) for per-loop spread sigma.

    The factor 4 is the echo's phase multiplier: each loop imparts twice
    the per-branch phase between the superposition branches, and the two
    orientation-reversed loops add.
    """
    if sigma < 0:
        raise InvalidArgumentError(f"sigma must be >= 0, got {sigma}")
    return math.exp(-8.0 * sigma * sigma)


def coherence_from_total_sigma(sigma_total: float) -> float:
    """Coherence exp(-sigma^2/2) of a gaussian total-phase spread."""
    if sigma_total < 0:
        raise InvalidArgumentError(f"sigma must be >= 0, got {sigma_total}")
    return math.exp(-0.5 * sigma_total * sigma_total)
