"""Ensemble statistics, normalization, gaussian checks, worker determinism."""

import math
import warnings

import numpy as np
import pytest

import berrysim.ensemble as ensemble_mod
from berrysim.ensemble import (
    EnsembleConfig,
    EnsembleRunError,
    gaussian_check,
    normalize_coherence,
    run_ensemble,
)
from berrysim.errors import DegenerateReferenceError, InsufficientDataError, InvalidArgumentError
from berrysim.theory import TheoryInput, variance_geometric

from _common import RATE_10MHZ, ensemble_config, sequence_config, theta_b_for


@pytest.fixture(scope="module")
def small_radial_stats():
    config = ensemble_config(
        7 * math.pi / 16, 50.0, kind="radial", realizations=100, master_seed=5, dt=0.05
    )
    return config, run_ensemble(config)


def test_single_noiseless_realization():
    config = ensemble_config(0.8, 50.0, kind=None, realizations=1, master_seed=1, dt=0.05)
    stats = run_ensemble(config)
    assert stats.sigma == 0.0
    xy = stats.xy_points[0]
    assert stats.coherence == pytest.approx(math.hypot(xy[0], xy[1]), abs=1e-12)
    assert stats.phases[0] == pytest.approx(stats.reference_phase, abs=1e-12)
    assert stats.histogram[1].sum() == 1


def test_sigma_against_theory(small_radial_stats):
    config, stats = small_radial_stats
    loop = config.sequence.loop
    theta, b = theta_b_for(7 * math.pi / 16)
    sigma_theory = math.sqrt(variance_geometric(
        TheoryInput(theta, b, loop.tau, RATE_10MHZ, config.sequence.noise.power)
    ))
    n = config.realizations
    assert abs(stats.sigma - sigma_theory) < 4 * sigma_theory / math.sqrt(2 * n)


def test_mean_phase_preserved(small_radial_stats):
    config, stats = small_radial_stats
    n = config.realizations
    assert abs(stats.mean_phase - stats.reference_phase) <= 3 * stats.sigma / math.sqrt(n)


def test_histogram_counts(small_radial_stats):
    _, stats = small_radial_stats
    edges, counts = stats.histogram
    assert counts.sum() == stats.phases.size
    assert edges.size == counts.size + 1


def test_worker_determinism():
    base = dict(kind="radial", realizations=16, master_seed=42, dt=0.05)
    results = [
        run_ensemble(ensemble_config(0.9, 50.0, workers=w, **base)) for w in (1, 2, 4)
    ]
    for other in results[1:]:
        assert np.array_equal(results[0].phases, other.phases)
        assert np.array_equal(results[0].xy_points, other.xy_points)
        assert results[0].coherence == other.coherence
        assert results[0].sigma == other.sigma


def test_realization_streams_are_independent_of_count():
    # The first realizations of a larger ensemble replicate a smaller one.
    small = run_ensemble(ensemble_config(0.9, 50.0, realizations=4, master_seed=3, dt=0.05))
    large = run_ensemble(ensemble_config(0.9, 50.0, realizations=8, master_seed=3, dt=0.05))
    assert np.array_equal(small.phases, large.phases[:4])


def test_saturation_flag():
    quiet = run_ensemble(ensemble_config(
        7 * math.pi / 16, 100.0, kind="radial", sequence_kind="dynamic-echo",
        realizations=40, master_seed=8,
    ))
    assert not quiet.saturated
    loud = run_ensemble(ensemble_config(
        7 * math.pi / 16, 100.0, kind="radial", sequence_kind="dynamic-echo", s=1.0,
        realizations=40, master_seed=8,
    ))
    assert loud.saturated


def test_normalize_coherence_cases(small_radial_stats):
    _, stats = small_radial_stats
    assert normalize_coherence(stats, stats) == 1.0
    reference = run_ensemble(ensemble_config(
        7 * math.pi / 16, 50.0, kind=None, realizations=1, master_seed=5, dt=0.05
    ))
    ratio = normalize_coherence(stats, reference)
    assert 0.0 < ratio <= 1.05
    degenerate = run_ensemble(ensemble_config(
        7 * math.pi / 16, 50.0, kind=None, realizations=1, master_seed=5, dt=0.05
    ))
    degenerate.coherence = 0.0
    with pytest.raises(DegenerateReferenceError):
        normalize_coherence(stats, degenerate)
    inflated = run_ensemble(ensemble_config(
        7 * math.pi / 16, 50.0, kind=None, realizations=1, master_seed=5, dt=0.05
    ))
    inflated.coherence = 2.0
    with pytest.warns(RuntimeWarning):
        clamped = normalize_coherence(inflated, reference)
    assert clamped == 1.05


def test_normalize_coherence_plain_ratio(small_radial_stats):
    _, stats = small_radial_stats
    half = run_ensemble(ensemble_config(
        7 * math.pi / 16, 50.0, kind=None, realizations=1, master_seed=5, dt=0.05
    ))
    half.coherence = 0.9
    noisy = run_ensemble(ensemble_config(
        7 * math.pi / 16, 50.0, kind=None, realizations=1, master_seed=5, dt=0.05
    ))
    noisy.coherence = 0.45
    assert normalize_coherence(noisy, half) == pytest.approx(0.5)


def test_gaussian_check_normal_sample():
    rng = np.random.default_rng(100)
    sample = rng.normal(0.687, 0.033, size=10_000)
    mean, sigma, p_value = gaussian_check(sample)
    assert mean == pytest.approx(0.687, abs=0.001)
    assert sigma == pytest.approx(0.033, rel=0.05)
    assert p_value > 0.01


def test_gaussian_check_uniform_sample_rejected():
    rng = np.random.default_rng(101)
    sample = rng.uniform(0.0, 2 * math.pi, size=10_000)
    _, _, p_value = gaussian_check(sample)
    assert p_value < 0.01


def test_gaussian_check_degenerate_and_small():
    mean, sigma, p_value = gaussian_check(np.full(50, 1.23))
    assert mean == pytest.approx(1.23)
    assert sigma == 0.0
    assert math.isnan(p_value)
    with pytest.raises(InsufficientDataError):
        gaussian_check(np.zeros(10))


def test_run_failure_reports_realization_id(monkeypatch):
    config = ensemble_config(0.9, 50.0, realizations=4, master_seed=3, dt=0.05)
    original = ensemble_mod.run_sequence_batch

    def broken(seq, traces, reference, ks, master_seed=0):
        if 2 in list(ks):
            raise ValueError("synthetic failure")
        return original(seq, traces, reference, ks, master_seed)

    monkeypatch.setattr(ensemble_mod, "run_sequence_batch", broken)
    with pytest.raises(EnsembleRunError) as err:
        run_ensemble(config)
    assert err.value.realization_id == 2


def test_config_validation():
    seq = sequence_config(0.9, 50.0, kind=None, dt=0.05)
    with pytest.raises(InvalidArgumentError):
        EnsembleConfig(sequence=seq, realizations=0, master_seed=0)
    with pytest.raises(InvalidArgumentError):
        EnsembleConfig(sequence=seq, realizations=1, master_seed=0, workers=0)
