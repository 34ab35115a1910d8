"""Propagator: closed-form steps, unitarity, composition, convergence."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from berrysim.errors import InvalidArgumentError
from berrysim.evolve import (
    QubitState,
    bloch_expectations,
    compose,
    ground_state,
    propagate,
    propagate_tracked,
    step_unitaries,
    step_unitary,
)
from berrysim.path import FieldTrace, LoopSpec, build_field_trace, default_time_step

from _common import DETUNING

IDENTITY = np.eye(2)


def test_step_unitary_zero_field_is_identity():
    np.testing.assert_allclose(step_unitary([0.0, 0.0, 0.0], 0.5), IDENTITY, atol=1e-15)


def test_step_unitary_z_rotation_by_pi():
    omega = 0.7
    u = step_unitary([0.0, 0.0, omega], math.pi / omega)
    expected = np.diag([np.exp(-1j * math.pi / 2), np.exp(1j * math.pi / 2)])
    np.testing.assert_allclose(u, expected, atol=1e-12)


def test_step_unitary_x_rotation_by_pi():
    omega = 0.3
    u = step_unitary([omega, 0.0, 0.0], math.pi / omega)
    np.testing.assert_allclose(u, -1j * np.array([[0, 1], [1, 0]]), atol=1e-12)
    out = u @ np.array([1.0, 0.0])
    np.testing.assert_allclose(out, [0.0, -1.0j], atol=1e-12)


@given(
    bx=st.floats(-2, 2), by=st.floats(-2, 2), bz=st.floats(-2, 2),
    dt=st.floats(min_value=1e-3, max_value=10.0),
)
def test_step_unitary_is_unitary(bx, by, bz, dt):
    u = step_unitary([bx, by, bz], dt)
    np.testing.assert_allclose(u @ u.conj().T, IDENTITY, atol=1e-12)
    assert abs(abs(np.linalg.det(u)) - 1.0) < 1e-12


def test_step_unitary_rejects_bad_dt():
    with pytest.raises(InvalidArgumentError):
        step_unitary([0.1, 0, 0], 0.0)


def test_propagate_pure_detuning_phase():
    # Field (0,0,delta) for time t puts relative phase delta*t on |1>.
    t, dt = 40.0, 0.05
    n = int(t / dt)
    samples = np.zeros((n, 3))
    samples[:, 2] = DETUNING
    state = QubitState(math.sqrt(0.5), math.sqrt(0.5))
    out = propagate(FieldTrace(samples, dt), state)
    rel = np.angle(out.amp1 / out.amp0)
    expected = (DETUNING * t + math.pi) % (2 * math.pi) - math.pi
    assert rel == pytest.approx(expected, abs=1e-9)
    assert out.norm() == pytest.approx(1.0, abs=1e-12)


def test_rabi_oscillation_matches_closed_form():
    # Constant field: excited population follows the Rabi formula.
    omega, delta, t = 0.21, -0.1, 57.0
    generalized = math.hypot(omega, delta)
    n = 5000
    samples = np.tile([omega, 0.0, delta], (n, 1))
    out = propagate(FieldTrace(samples, t / n), ground_state())
    p1 = abs(out.amp1) ** 2
    expected = (omega / generalized) ** 2 * math.sin(generalized * t / 2) ** 2
    assert p1 == pytest.approx(expected, abs=1e-10)


def test_propagate_matches_single_exact_step():
    b = [0.2, -0.1, 0.15]
    t = 30.0
    n = 3000
    trace = FieldTrace(np.tile(b, (n, 1)), t / n)
    out = propagate(trace, ground_state()).vector
    exact = step_unitary(b, t) @ np.array([1.0, 0.0])
    np.testing.assert_allclose(out, exact, atol=1e-10)


def test_adiabatic_loop_returns_to_eigenstate():
    # B*tau = 40.2: field-aligned start state comes back with little leakage.
    spec = LoopSpec(omega=0.25101305642646254, delta=DETUNING, tau=100.0, ramp_time=0.0, dt=0.05)
    trace = build_field_trace(spec)
    b0 = trace.samples[0]
    h = np.array([[b0[2], b0[0] - 1j * b0[1]], [b0[0] + 1j * b0[1], -b0[2]]])
    eigvals, eigvecs = np.linalg.eigh(h)
    aligned = eigvecs[:, np.argmax(eigvals)]
    out = propagate(trace, QubitState(aligned[0], aligned[1]))
    overlap = abs(np.vdot(aligned, out.vector)) ** 2
    assert spec.b_magnitude * spec.tau == pytest.approx(40.2, abs=0.1)
    assert 1.0 - overlap < 1e-2


def test_self_convergence_at_default_step():
    # Halving dt moves the final state by less than 1e-6 in vector norm.
    omega, tau = 0.25101305642646254, 100.0
    state = QubitState(math.sqrt(0.5), math.sqrt(0.5) * 1j)
    dt = default_time_step(tau, math.hypot(omega, DETUNING))
    vectors = []
    for step in (dt, dt / 2):
        spec = LoopSpec(omega=omega, delta=DETUNING, tau=tau, ramp_time=tau / 8, dt=step)
        vectors.append(propagate(build_field_trace(spec), state).vector)
    assert np.linalg.norm(vectors[0] - vectors[1]) < 1e-6


def test_composition_of_halves():
    rng = np.random.default_rng(3)
    samples = rng.normal(scale=0.3, size=(400, 3))
    dt = 0.07
    state = QubitState(0.6, 0.8j)
    full = propagate(FieldTrace(samples, dt), state)
    half = propagate(FieldTrace(samples[:200], dt), state)
    final = propagate(FieldTrace(samples[200:], dt), half)
    np.testing.assert_allclose(full.vector, final.vector, atol=1e-12)


def test_compose_ordering():
    rng = np.random.default_rng(4)
    us = step_unitaries(rng.normal(size=(7, 3)), 0.3)
    sequential = IDENTITY.astype(complex)
    for u in us:
        sequential = u @ sequential
    np.testing.assert_allclose(compose(us), sequential, atol=1e-13)


def test_propagate_tracked_matches_propagate():
    rng = np.random.default_rng(5)
    samples = rng.normal(scale=0.1, size=(300, 3)) + [0, 0, DETUNING]
    trace = FieldTrace(samples, 0.05)
    state = QubitState(math.sqrt(0.5), math.sqrt(0.5))
    direct = propagate(trace, state)
    tracked, theta = propagate_tracked(trace, state, 0.0)
    np.testing.assert_allclose(tracked.vector, direct.vector, atol=1e-10)
    x, y, _ = bloch_expectations(tracked)
    assert math.atan2(y, x) == pytest.approx(
        (theta + math.pi) % (2 * math.pi) - math.pi, abs=1e-9
    )


def test_bloch_expectations_basis_states():
    assert bloch_expectations(QubitState(1.0, 0.0)) == pytest.approx((0.0, 0.0, 1.0))
    plus = QubitState(math.sqrt(0.5), math.sqrt(0.5))
    assert bloch_expectations(plus) == pytest.approx((1.0, 0.0, 0.0), abs=1e-15)
    plus_i = QubitState(math.sqrt(0.5), math.sqrt(0.5) * 1j)
    assert bloch_expectations(plus_i) == pytest.approx((0.0, 1.0, 0.0), abs=1e-15)


def test_propagate_requires_samples():
    with pytest.raises(InvalidArgumentError):
        FieldTrace(np.empty((0, 3)), 0.1)
