#!/usr/bin/env python3
"""Fast end-to-end sanity pass: tiny ensembles against the closed forms.

Runs the berry and dynamic echo at the reference operating point
(A = 7*pi/16, tau = 100 ns, s = 1/15, bandwidth 10 MHz) with a reduced
realization count and prints measured vs predicted spreads. Finishes in a
few seconds; useful after any change to the engine.
"""

import math
import os
import sys

REPO = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, os.path.join(REPO, "src"))

from berrysim.ensemble import EnsembleConfig, run_ensemble  # noqa: E402
from berrysim.noise import NoiseParams  # noqa: E402
from berrysim.path import LoopSpec, default_time_step, normalized_amplitude_to_power, omega_for_solid_angle, polar_angle  # noqa: E402
from berrysim.protocol import SequenceConfig, recommended_ramp_time  # noqa: E402
from berrysim.theory import TheoryInput, variance_dynamic, variance_geometric  # noqa: E402
from berrysim.units import mhz_to_rad_per_ns  # noqa: E402


def main():
    delta = mhz_to_rad_per_ns(-50.0)
    rate = mhz_to_rad_per_ns(10.0)
    a = 7 * math.pi / 16
    tau = 100.0
    omega = omega_for_solid_angle(a, delta)
    theta = polar_angle(omega, delta)
    b = math.hypot(omega, delta)
    power = normalized_amplitude_to_power(1 / 15, "radial", omega)
    noise = NoiseParams(power=power, rate=rate, kind="radial")
    realizations = 120

    for kind, var_fn in (("berry-echo", variance_geometric), ("dynamic-echo", variance_dynamic)):
        loop = LoopSpec(
            omega=omega, delta=delta, tau=tau,
            ramp_time=recommended_ramp_time(kind, tau),
            dt=default_time_step(tau, b, rate),
        )
        config = EnsembleConfig(
            sequence=SequenceConfig(loop=loop, noise=noise, sequence_kind=kind),
            realizations=realizations, master_seed=7,
        )
        stats = run_ensemble(config)
        predicted = math.sqrt(var_fn(TheoryInput(theta, b, tau, rate, power)))
        se = predicted / math.sqrt(2 * realizations)
        pull = (stats.sigma - predicted) / se
        print(f"{kind:13s} sigma={stats.sigma:.5f}  closed form={predicted:.5f}  "
              f"pull={pull:+.2f} SE  mean_phase={stats.mean_phase:+.5f}  "
              f"coherence={stats.coherence:.4f}")


if __name__ == "__main__":
    main()
