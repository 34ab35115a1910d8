"""Ornstein-Uhlenbeck fluctuation traces.

The process is stationary, gaussian and markovian with autocovariance
C(t) = P * exp(-rate * |t|), i.e. a lorentzian spectrum of bandwidth
``rate`` and total power ``P``. Traces are generated with the exact
one-step transition kernel

    X_0     ~ Normal(0, sqrt(P))
    X_{k+1} = X_k * exp(-rate*dt) + sqrt(P * (1 - exp(-2*rate*dt))) * xi_k

so sample statistics do not depend on the step size (unlike
Euler-Maruyama, whose stationary variance is biased by O(rate*dt)).
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.signal import lfilter

from .errors import InvalidArgumentError
from .rng import NOISE_DOMAIN, substream

NOISE_KINDS = ("radial", "angular")


@dataclass(frozen=True)
class NoiseParams:
    """OU process definition.

    power: stationary variance, (rad/ns)^2 for radial noise and rad^2 for
        angular noise.
    rate: autocorrelation decay rate in 1/ns (cyclic MHz bandwidths convert
        as rate = 2*pi * f_MHz * 1e-3).
    kind: which field coordinate the trace perturbs.
    stream_id: index of the independent random substream.
    """

    power: float
    rate: float
    kind: str = "radial"
    stream_id: int = 0

    def __post_init__(self):
        if self.power < 0:
            raise InvalidArgumentError(f"power must be >= 0, got {self.power}")
        if self.rate <= 0:
            raise InvalidArgumentError(f"rate must be > 0, got {self.rate}")
        if self.kind not in NOISE_KINDS:
            raise InvalidArgumentError(f"kind must be one of {NOISE_KINDS}, got {self.kind!r}")


@dataclass(frozen=True)
class NoiseTrace:
    """A sampled fluctuation record, one offset per time step."""

    samples: np.ndarray
    dt: float
    params: NoiseParams = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "samples", np.asarray(self.samples, dtype=float))
        if self.samples.ndim != 1 or self.samples.size < 1:
            raise InvalidArgumentError("samples must be a non-empty 1-d array")
        if not np.all(np.isfinite(self.samples)):
            raise InvalidArgumentError("samples must be finite")

    def __len__(self) -> int:
        return self.samples.size


def ou_step_coefficients(rate: float, dt: float, power: float) -> tuple[float, float]:
    """(decay, kick) of the exact update X' = decay*X + kick*xi."""
    decay = float(np.exp(-rate * dt))
    kick = float(np.sqrt(power * (1.0 - decay * decay)))
    return decay, kick


def ou_generate_batch(
    params: NoiseParams,
    dt: float,
    n: int,
    master_seed: int,
    stream_ids,
) -> np.ndarray:
    """Generate one trace per stream id, rows keyed by stream.

    Row k is bit-identical to the single trace for stream_ids[k]; batching
    only amortizes the filtering cost.
    """
    if dt <= 0:
        raise InvalidArgumentError(f"dt must be > 0, got {dt}")
    if n < 1:
        raise InvalidArgumentError(f"n must be >= 1, got {n}")
    stream_ids = list(stream_ids)
    decay, kick = ou_step_coefficients(params.rate, dt, params.power)
    drive = np.empty((len(stream_ids), n))
    for row, sid in enumerate(stream_ids):
        eps = substream(master_seed, NOISE_DOMAIN, sid).standard_normal(n)
        drive[row] = kick * eps
        drive[row, 0] = np.sqrt(params.power) * eps[0]
    return lfilter([1.0], [1.0, -decay], drive, axis=1)


def ou_generate(params: NoiseParams, dt: float, n: int, master_seed: int) -> NoiseTrace:
    """Sample one trace of ``n`` steps from the substream of ``params``."""
    samples = ou_generate_batch(params, dt, n, master_seed, [params.stream_id])[0]
    return NoiseTrace(samples=samples, dt=dt, params=params)


def ou_autocovariance(params: NoiseParams, lag: float) -> float:
    """Analytic autocovariance P * exp(-rate * |lag|)."""
    return params.power * float(np.exp(-params.rate * abs(lag)))


def integrated_variance(power: float, rate: float, tau: float) -> float:
    """Var(int_0^tau X dt) = 2 P (rate*tau - 1 + exp(-rate*tau)) / rate^2.

    This is the kernel shared by both closed-form phase variances; kept here
    so theory and tests reference a single expression.
    """
    g = rate * tau
    return 2.0 * power * (g - 1.0 + np.exp(-g)) / rate**2
