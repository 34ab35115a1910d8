"""Unit conventions.

All internal quantities are angular frequencies in rad/ns and times in ns.
Frequencies quoted in MHz (drive amplitude, detuning, noise bandwidth) are
cyclic and convert at the boundary: 1 MHz = 2*pi*1e-3 rad/ns.
"""

import math

MHZ_TO_RAD_PER_NS = 2.0 * math.pi * 1e-3


def mhz_to_rad_per_ns(f_mhz: float) -> float:
    return f_mhz * MHZ_TO_RAD_PER_NS


def rad_per_ns_to_mhz(w: float) -> float:
    return w / MHZ_TO_RAD_PER_NS
