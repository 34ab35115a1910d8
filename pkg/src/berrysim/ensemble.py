"""Monte Carlo orchestration over noise realizations.

Realization k draws its noise from the substream keyed by (master_seed, k),
so the ensemble is a pure function of the configuration and seed: chunking,
worker count and scheduling cannot change a single bit of the output.
Workers receive whole chunks of realizations and batch them through the
vectorized sequence engine.
"""

import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import stats

from .errors import DegenerateReferenceError, InsufficientDataError, InvalidArgumentError
from .noise import ou_generate_batch
from .path import arm_sample_count
from .protocol import PHASE_MULTIPLIER, SequenceConfig, noiseless_reference, run_sequence_batch

#: Keep batched unitary workspaces around this many field samples.
_CHUNK_SAMPLE_BUDGET = 1_500_000

#: A realization whose total phase lands within this margin of the +-pi
#: unwrapping boundary marks the ensemble as saturated.
_SATURATION_MARGIN = 0.95


@dataclass(frozen=True)
class EnsembleConfig:
    """Monte Carlo run: one sequence, N noise realizations."""

    sequence: SequenceConfig
    realizations: int
    master_seed: int
    workers: int = 1

    def __post_init__(self):
        if self.realizations < 1:
            raise InvalidArgumentError(f"realizations must be >= 1, got {self.realizations}")
        if self.workers < 1:
            raise InvalidArgumentError(f"workers must be >= 1, got {self.workers}")


@dataclass
class EnsembleStats:
    """Per-realization phases and the derived ensemble observables."""

    phases: np.ndarray             # extracted per-loop phases, rad
    xy_points: np.ndarray          # (N, 2) final equatorial Bloch components
    mean_phase: float
    sigma: float
    coherence: float
    coherence_normalized: Optional[float]
    gaussian_fit: tuple            # (mean, sigma, normality p-value)
    histogram: tuple               # (bin edges, counts)
    reference_phase: float         # noiseless extracted phase
    total_phases: np.ndarray = field(repr=False)
    z_values: np.ndarray = field(repr=False)
    phase_multiplier: int = 1
    saturated: bool = False


class EnsembleRunError(RuntimeError):
    """A realization failed; carries the realization id."""

    def __init__(self, realization_id: int, cause: Exception):
        super().__init__(f"realization {realization_id} failed: {cause}")
        self.realization_id = realization_id


def _chunk_size(config: SequenceConfig) -> int:
    n_arm = arm_sample_count(config.loop)
    return max(1, _CHUNK_SAMPLE_BUDGET // n_arm)


def _run_chunk(config: SequenceConfig, master_seed: int, ks: list, reference: float):
    if config.noise is not None:
        n_arm = arm_sample_count(config.loop)
        traces = ou_generate_batch(config.noise, config.loop.dt, n_arm, master_seed, ks)
    else:
        traces = None
    return run_sequence_batch(config, traces, reference, ks, master_seed)


def _chunk_worker(args):
    config, master_seed, ks, reference = args
    return ks, _run_chunk(config, master_seed, ks, reference)


def run_ensemble(config: EnsembleConfig) -> EnsembleStats:
    """Run N realizations and aggregate ensemble statistics.

    Output is bit-identical for any worker count. A failing realization
    aborts the ensemble with its id attached.
    """
    seq = config.sequence
    n = config.realizations
    reference = noiseless_reference(seq)
    chunk = _chunk_size(seq)
    if config.workers > 1:
        chunk = max(1, min(chunk, math.ceil(n / config.workers)))
    chunks = [list(range(i, min(i + chunk, n))) for i in range(0, n, chunk)]
    jobs = [(seq, config.master_seed, ks, reference) for ks in chunks]

    x = np.empty(n)
    y = np.empty(n)
    z = np.empty(n)
    total = np.empty(n)
    extracted = np.empty(n)

    def _store(ks, result):
        cx, cy, cz, ct, ce = result
        x[ks] = cx
        y[ks] = cy
        z[ks] = cz
        total[ks] = ct
        extracted[ks] = ce

    try:
        if config.workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=config.workers) as pool:
                for ks, result in pool.map(_chunk_worker, jobs):
                    _store(ks, result)
        else:
            for job in jobs:
                ks, result = _chunk_worker(job)
                _store(ks, result)
    except Exception as err:  # locate the offending realization
        for ks in chunks:
            for k in ks:
                try:
                    _run_chunk(seq, config.master_seed, [k], reference)
                except Exception as single_err:
                    raise EnsembleRunError(k, single_err) from single_err
        raise EnsembleRunError(-1, err) from err

    multiplier = PHASE_MULTIPLIER[seq.sequence_kind]
    mean_phase = float(np.mean(extracted))
    sigma = float(np.std(extracted, ddof=1)) if n > 1 else 0.0
    coherence = float(np.hypot(np.mean(x), np.mean(y)))
    bins = max(5, min(50, int(round(math.sqrt(n)))))
    counts, edges = np.histogram(extracted, bins=bins)
    histogram = (edges, counts)
    if n >= 20:
        gaussian_fit = gaussian_check(extracted)
    else:
        gaussian_fit = (mean_phase, sigma, float("nan"))
    saturated = bool(np.max(np.abs(total - reference)) > _SATURATION_MARGIN * math.pi) if n else False
    return EnsembleStats(
        phases=extracted,
        xy_points=np.column_stack([x, y]),
        mean_phase=mean_phase,
        sigma=sigma,
        coherence=coherence,
        coherence_normalized=None,
        gaussian_fit=gaussian_fit,
        histogram=histogram,
        reference_phase=reference / multiplier,
        total_phases=total,
        z_values=z,
        phase_multiplier=multiplier,
        saturated=saturated,
    )


def normalize_coherence(with_noise: EnsembleStats, without_noise: EnsembleStats) -> float:
    """Coherence ratio against a run without added noise, clamped to [0, 1.05].

    Both ensembles must share the same loop; the clamp flags (via a warning)
    the statistically possible ratio overshoot.
    """
    if without_noise.coherence == 0.0:
        raise DegenerateReferenceError("reference coherence is zero")
    ratio = with_noise.coherence / without_noise.coherence
    if ratio < 0.0 or ratio > 1.05:
        clamped = min(max(ratio, 0.0), 1.05)
        warnings.warn(
            f"normalized coherence {ratio:.4f} clamped to {clamped:.4f}",
            RuntimeWarning,
            stacklevel=2,
        )
        return clamped
    return ratio


def gaussian_check(phases) -> tuple[float, float, float]:
    """Sample mean, sample std and a normality p-value for the phases.

    Degenerate (zero-spread) samples return p = nan. Uses the
    D'Agostino-Pearson omnibus test, which needs at least 20 samples.
    """
    x = np.asarray(phases, dtype=float)
    if x.size < 20:
        raise InsufficientDataError(f"need >= 20 phases, got {x.size}")
    mean = float(np.mean(x))
    sigma = float(np.std(x, ddof=1))
    if np.ptp(x) == 0.0:
        return mean, 0.0, float("nan")
    _, p_value = stats.normaltest(x)
    return mean, sigma, float(p_value)
