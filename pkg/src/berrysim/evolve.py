"""Exact piecewise-constant propagation of a two-level state.

Each field sample is exponentiated in closed form,

    U = exp(-i (sigma . B) dt / 2)
      = cos(|B| dt / 2) * 1  -  i sin(|B| dt / 2) * (sigma . B / |B|),

so the only approximation in a propagated trace is the discretization of
the field itself. Products of step unitaries are evaluated as a balanced
tree of batched 2x2 matmuls, which keeps long ensembles vectorized.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError
from .path import FieldTrace


@dataclass
class QubitState:
    """Complex amplitudes of |0> and |1>."""

    amp0: complex
    amp1: complex

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.amp0, self.amp1], dtype=complex)

    def norm(self) -> float:
        return float(np.sqrt(abs(self.amp0) ** 2 + abs(self.amp1) ** 2))


def ground_state() -> QubitState:
    return QubitState(1.0 + 0.0j, 0.0j)


def step_unitaries(b: np.ndarray, dt: float) -> np.ndarray:
    """Closed-form step unitaries for field samples of shape (..., 3)."""
    if dt <= 0:
        raise InvalidArgumentError(f"dt must be > 0, got {dt}")
    b = np.asarray(b, dtype=float)
    mag = np.sqrt(np.sum(b * b, axis=-1))
    half = 0.5 * dt * mag
    c = np.cos(half)
    scale = np.divide(np.sin(half), mag, out=np.zeros_like(mag), where=mag > 0)
    sx = scale * b[..., 0]
    sy = scale * b[..., 1]
    sz = scale * b[..., 2]
    u = np.empty(b.shape[:-1] + (2, 2), dtype=complex)
    ur, ui = u.real, u.imag
    ur[..., 0, 0] = c
    ui[..., 0, 0] = -sz
    ur[..., 0, 1] = -sy
    ui[..., 0, 1] = -sx
    ur[..., 1, 0] = sy
    ui[..., 1, 0] = -sx
    ur[..., 1, 1] = c
    ui[..., 1, 1] = sz
    return u


def step_unitary(b, dt: float) -> np.ndarray:
    """Single 2x2 step unitary; B = 0 returns the identity."""
    return step_unitaries(np.asarray(b, dtype=float), dt)


def compose(unitaries: np.ndarray) -> np.ndarray:
    """Ordered product U[n-1] @ ... @ U[0] along axis -3, tree-reduced."""
    us = np.asarray(unitaries)
    if us.ndim < 3:
        raise InvalidArgumentError("expected an array of 2x2 matrices")
    while us.shape[-3] > 1:
        if us.shape[-3] % 2:
            tail = us[..., -1:, :, :]
            body = np.matmul(us[..., 1:-1:2, :, :], us[..., :-1:2, :, :])
            us = np.concatenate([body, tail], axis=-3)
        else:
            us = np.matmul(us[..., 1::2, :, :], us[..., ::2, :, :])
    return us[..., 0, :, :]


def propagate(trace: FieldTrace, initial: QubitState) -> QubitState:
    """Apply the ordered product of per-step unitaries to ``initial``."""
    if len(trace) < 1:
        raise InvalidArgumentError("trace must contain at least one sample")
    total = compose(step_unitaries(trace.samples, trace.dt))
    vec = total @ initial.vector
    return QubitState(complex(vec[0]), complex(vec[1]))


def propagate_tracked(
    trace: FieldTrace, initial: QubitState, theta_start: float = 0.0
) -> tuple[QubitState, float]:
    """Propagate while accumulating the continuously unwrapped phase
    atan2(<Y>, <X>) of the state.

    Per-step phase increments are far below pi for any resolved trace, so
    wrapping each increment into (-pi, pi] reconstructs the winding exactly.
    Used once per configuration to anchor noisy-run phase extraction.
    """
    us = step_unitaries(trace.samples, trace.dt).tolist()
    a0 = complex(initial.amp0)
    a1 = complex(initial.amp1)
    cross = a0.conjugate() * a1
    prev = math.atan2(cross.imag, cross.real)
    theta = theta_start
    two_pi = 2.0 * math.pi
    for (u00, u01), (u10, u11) in us:
        a0, a1 = u00 * a0 + u01 * a1, u10 * a0 + u11 * a1
        cross = a0.conjugate() * a1
        raw = math.atan2(cross.imag, cross.real)
        delta = raw - prev
        delta -= two_pi * math.floor(delta / two_pi + 0.5)
        theta += delta
        prev = raw
    return QubitState(a0, a1), theta


def bloch_expectations(state: QubitState) -> tuple[float, float, float]:
    """(<X>, <Y>, <Z>) of a normalized state."""
    cross = complex(state.amp0).conjugate() * complex(state.amp1)
    z = abs(state.amp0) ** 2 - abs(state.amp1) ** 2
    return 2.0 * cross.real, 2.0 * cross.imag, float(z)
