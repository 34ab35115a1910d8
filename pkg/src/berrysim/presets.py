"""Experiment presets and CSV/JSON export.

A preset is a list of sweep points, each a fully resolved configuration
with its own derived seed, so any point (and any rerun from the manifest)
is reproducible in isolation. Each run writes:

    <name>_summary.csv        one row per sweep point
    <name>_realizations.csv   one row per noise realization
    <name>_manifest.json      resolved configs, seeds, version, wall time

The realizations file feeds the histogram / equator-scatter figure kinds;
the summary file carries the sweep observables next to the closed-form
theory columns.
"""

import json
import math
import os
import time
from dataclasses import asdict, dataclass, replace
from typing import Optional

import numpy as np

from . import __version__
from .ensemble import EnsembleConfig, normalize_coherence, run_ensemble
from .errors import InvalidArgumentError
from .noise import NoiseParams
from .path import LoopSpec, default_time_step, normalized_amplitude_to_power, omega_for_solid_angle, polar_angle
from .protocol import PHASE_MULTIPLIER, SequenceConfig, recommended_ramp_time
from .rng import derive_seed
from .theory import TheoryInput, coherence_from_total_sigma, crossover_time, variance_dynamic, variance_geometric
from .units import mhz_to_rad_per_ns

PRESET_NAMES = ("fig2", "fig3-berry", "fig3-dynamic", "fig4", "custom")

DETUNING_MHZ = -50.0
BANDWIDTH_MHZ = 10.0
FIG2_TAU_NS = 100.0
FIG2_AMPLITUDE = 1.0 / 15.0
FIG2_SOLID_ANGLES = tuple(k * math.pi / 16.0 for k in range(1, 16))
FIG3_SOLID_ANGLE = 7.0 * math.pi / 16.0
FIG3_AMPLITUDES = tuple(float(s) for s in np.geomspace(0.01, 1.0, 9))
FIG4_SOLID_ANGLE = 0.37 * math.pi
FIG4_TAUS_NS = tuple(float(t) for t in np.geomspace(5.0, 300.0, 11))

_COLUMNS = {
    "fig2": (
        "A", "kind", "coherence_norm", "mean_phase", "delta_gamma", "sigma",
        "theory_sigma", "theory_coherence", "coherence_raw", "reference_phase",
        "saturated", "tau_ns", "s", "dt_ns", "master_seed", "realizations",
    ),
    "fig3": (
        "s", "kind", "coherence_norm", "mean_phase", "delta_gamma", "sigma",
        "theory_sigma", "theory_coherence", "coherence_raw", "reference_phase",
        "saturated", "tau_ns", "A", "dt_ns", "master_seed", "realizations",
    ),
    "fig4": (
        "tau_ns", "sequence", "coherence_norm", "mean_phase", "delta_gamma", "sigma",
        "theory_sigma", "theory_sigma_geometric", "theory_sigma_dynamic",
        "theory_coherence", "tau_star_ns", "saturated", "s", "A", "dt_ns",
        "master_seed", "realizations",
    ),
    "custom": (
        "label", "sequence", "kind", "s", "A", "tau_ns", "coherence_norm",
        "mean_phase", "delta_gamma", "sigma", "theory_sigma", "theory_coherence",
        "saturated", "dt_ns", "master_seed", "realizations",
    ),
}

REALIZATION_COLUMNS = (
    "label", "sweep_param", "sweep_value", "kind", "sequence",
    "realization_id", "phase", "x", "y", "z",
)


@dataclass(frozen=True)
class SweepPoint:
    """One fully resolved configuration of a sweep."""

    label: str
    seed: int
    sequence_kind: str
    solid_angle: float
    tau_ns: float
    noise_kind: Optional[str] = None
    s: float = 0.0
    detuning_mhz: float = DETUNING_MHZ
    bandwidth_mhz: float = BANDWIDTH_MHZ
    ramp_ns: Optional[float] = None
    dt_ns: Optional[float] = None
    shots: Optional[int] = None


@dataclass(frozen=True)
class ExperimentPreset:
    """Named sweep plus the base Monte Carlo settings."""

    name: str
    sweep_param: str
    points: tuple
    realizations: int
    master_seed: int
    workers: int = 1

    @property
    def column_set(self) -> str:
        return "fig3" if self.name.startswith("fig3") else self.name


def _point_label(master_seed: int, text: str) -> tuple[str, int]:
    return text, derive_seed(master_seed, text)


def fig2_preset(master_seed: int, realizations: int, dt_ns: Optional[float] = None, workers: int = 1) -> ExperimentPreset:
    """Coherence and mean phase vs solid angle, radial and angular noise."""
    points = []
    for k, a in zip(range(1, 16), FIG2_SOLID_ANGLES):
        for kind in ("radial", "angular"):
            label, seed = _point_label(master_seed, f"fig2:A={k}pi16:{kind}")
            points.append(SweepPoint(
                label=label, seed=seed, sequence_kind="berry-echo", solid_angle=a,
                tau_ns=FIG2_TAU_NS, noise_kind=kind, s=FIG2_AMPLITUDE, dt_ns=dt_ns,
            ))
    return ExperimentPreset("fig2", "A", tuple(points), realizations, master_seed, workers)


def fig3_preset(name: str, master_seed: int, realizations: int, dt_ns: Optional[float] = None, workers: int = 1) -> ExperimentPreset:
    """Coherence vs normalized noise amplitude at A = 7*pi/16."""
    sequence_kind = "berry-echo" if name == "fig3-berry" else "dynamic-echo"
    points = []
    for s in FIG3_AMPLITUDES:
        for kind in ("radial", "angular"):
            label, seed = _point_label(master_seed, f"{name}:s={s:.6g}:{kind}")
            points.append(SweepPoint(
                label=label, seed=seed, sequence_kind=sequence_kind,
                solid_angle=FIG3_SOLID_ANGLE, tau_ns=FIG2_TAU_NS,
                noise_kind=kind, s=s, dt_ns=dt_ns,
            ))
    return ExperimentPreset(name, "s", tuple(points), realizations, master_seed, workers)


def fig4_preset(master_seed: int, realizations: int, dt_ns: Optional[float] = None, workers: int = 1) -> ExperimentPreset:
    """Phase spread vs evolution time for both sequences, radial noise."""
    delta = mhz_to_rad_per_ns(DETUNING_MHZ)
    omega = omega_for_solid_angle(FIG4_SOLID_ANGLE, delta)
    tau_star = crossover_time(polar_angle(omega, delta), math.hypot(omega, delta))
    taus = tuple(sorted(set(FIG4_TAUS_NS) | {tau_star}))
    points = []
    for tau in taus:
        for sequence_kind in ("berry-echo", "dynamic-echo"):
            label, seed = _point_label(master_seed, f"fig4:tau={tau:.6g}:{sequence_kind}")
            points.append(SweepPoint(
                label=label, seed=seed, sequence_kind=sequence_kind,
                solid_angle=FIG4_SOLID_ANGLE, tau_ns=tau,
                noise_kind="radial", s=FIG2_AMPLITUDE, dt_ns=dt_ns,
            ))
    return ExperimentPreset("fig4", "tau_ns", tuple(points), realizations, master_seed, workers)


def custom_preset(resolved: dict, master_seed: int, realizations: int, workers: int = 1) -> ExperimentPreset:
    """Single-point preset from a resolved TOML config."""
    lp = resolved["loop"]
    nz = resolved["noise"]
    label, seed = _point_label(master_seed, "custom:point")
    point = SweepPoint(
        label=label,
        seed=seed,
        sequence_kind=resolved["sequence_kind"],
        solid_angle=lp["solid_angle_rad"],
        tau_ns=lp["tau_ns"],
        noise_kind=nz["kind"] if nz else None,
        s=nz["s"] if nz else 0.0,
        detuning_mhz=lp["delta_rad_per_ns"] / mhz_to_rad_per_ns(1.0),
        bandwidth_mhz=(nz["rate_per_ns"] / mhz_to_rad_per_ns(1.0)) if nz else BANDWIDTH_MHZ,
        ramp_ns=lp["ramp_ns"],
        dt_ns=lp["dt_ns"],
        shots=resolved["shots"],
    )
    return ExperimentPreset("custom", "label", (point,), realizations, master_seed, workers)


def build_preset(name: str, master_seed: int, realizations: int, dt_ns: Optional[float] = None,
                 workers: int = 1, resolved_config: Optional[dict] = None) -> ExperimentPreset:
    if name == "fig2":
        return fig2_preset(master_seed, realizations, dt_ns, workers)
    if name in ("fig3-berry", "fig3-dynamic"):
        return fig3_preset(name, master_seed, realizations, dt_ns, workers)
    if name == "fig4":
        return fig4_preset(master_seed, realizations, dt_ns, workers)
    if name == "custom":
        if resolved_config is None:
            raise InvalidArgumentError("custom preset needs a config file")
        return custom_preset(resolved_config, master_seed, realizations, workers)
    raise InvalidArgumentError(f"unknown preset {name!r}; choose from {PRESET_NAMES}")


def _point_configs(point: SweepPoint, realizations: int, workers: int) -> tuple[EnsembleConfig, EnsembleConfig]:
    """(noisy ensemble, no-noise reference ensemble) for one sweep point."""
    delta = mhz_to_rad_per_ns(point.detuning_mhz)
    omega = omega_for_solid_angle(point.solid_angle, delta)
    b = math.hypot(omega, delta)
    rate = mhz_to_rad_per_ns(point.bandwidth_mhz)
    ramp = point.ramp_ns if point.ramp_ns is not None else recommended_ramp_time(point.sequence_kind, point.tau_ns)
    dt = point.dt_ns if point.dt_ns is not None else default_time_step(point.tau_ns, b, rate if point.noise_kind else None)
    loop = LoopSpec(omega=omega, delta=delta, tau=point.tau_ns, ramp_time=ramp, dt=dt)
    noise = None
    if point.noise_kind is not None and point.s > 0:
        power = normalized_amplitude_to_power(point.s, point.noise_kind, omega if point.noise_kind == "radial" else None)
        noise = NoiseParams(power=power, rate=rate, kind=point.noise_kind)
    seq = SequenceConfig(loop=loop, noise=noise, sequence_kind=point.sequence_kind, shots=point.shots)
    noisy = EnsembleConfig(sequence=seq, realizations=realizations, master_seed=point.seed, workers=workers)
    reference = EnsembleConfig(
        sequence=replace(seq, noise=None, shots=None), realizations=1, master_seed=point.seed, workers=1
    )
    return noisy, reference


def _theory_sigmas(point: SweepPoint) -> tuple[float, float]:
    """(sigma_geometric, sigma_dynamic) closed forms at the point."""
    delta = mhz_to_rad_per_ns(point.detuning_mhz)
    omega = omega_for_solid_angle(point.solid_angle, delta)
    theta = polar_angle(omega, delta)
    b = math.hypot(omega, delta)
    rate = mhz_to_rad_per_ns(point.bandwidth_mhz)
    if point.noise_kind == "radial" and point.s > 0:
        power = normalized_amplitude_to_power(point.s, "radial", omega)
    else:
        power = 0.0  # angular noise contributes at first order to neither
    inp = TheoryInput(theta=theta, b=b, tau=point.tau_ns, gamma_rate=rate, power=power)
    return math.sqrt(variance_geometric(inp)), math.sqrt(variance_dynamic(inp))


def run_point(point: SweepPoint, realizations: int, workers: int) -> dict:
    """Run one sweep point; returns its summary fields and raw stats."""
    noisy_cfg, ref_cfg = _point_configs(point, realizations, workers)
    ref_stats = run_ensemble(ref_cfg)
    stats = run_ensemble(noisy_cfg)
    stats.coherence_normalized = normalize_coherence(stats, ref_stats)
    sigma_geo, sigma_dyn = _theory_sigmas(point)
    multiplier = PHASE_MULTIPLIER[point.sequence_kind]
    theory_sigma = sigma_geo if point.sequence_kind == "berry-echo" else sigma_dyn
    return {
        "stats": stats,
        "dt_ns": noisy_cfg.sequence.loop.dt,
        "theory_sigma": theory_sigma,
        "theory_sigma_geometric": sigma_geo,
        "theory_sigma_dynamic": sigma_dyn,
        "theory_coherence": coherence_from_total_sigma(multiplier * theory_sigma),
    }


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _summary_row(preset: ExperimentPreset, point: SweepPoint, result: dict) -> dict:
    stats = result["stats"]
    common = {
        "A": point.solid_angle,
        "s": point.s,
        "tau_ns": point.tau_ns,
        "kind": point.noise_kind or "none",
        "sequence": point.sequence_kind,
        "label": point.label,
        "coherence_norm": stats.coherence_normalized,
        "coherence_raw": stats.coherence,
        "mean_phase": stats.mean_phase,
        "delta_gamma": stats.mean_phase - stats.reference_phase,
        "sigma": stats.sigma,
        "reference_phase": stats.reference_phase,
        "saturated": stats.saturated,
        "theory_sigma": result["theory_sigma"],
        "theory_sigma_geometric": result["theory_sigma_geometric"],
        "theory_sigma_dynamic": result["theory_sigma_dynamic"],
        "theory_coherence": result["theory_coherence"],
        "dt_ns": result["dt_ns"],
        "master_seed": point.seed,
        "realizations": preset.realizations,
    }
    if preset.name == "fig4":
        delta = mhz_to_rad_per_ns(point.detuning_mhz)
        omega = omega_for_solid_angle(point.solid_angle, delta)
        common["tau_star_ns"] = crossover_time(polar_angle(omega, delta), math.hypot(omega, delta))
    return common


def run_preset(preset: ExperimentPreset, out_dir: str) -> str:
    """Run all sweep points and export CSVs plus the manifest.

    Returns the manifest path.
    """
    os.makedirs(out_dir, exist_ok=True)
    t_start = time.monotonic()
    columns = _COLUMNS[preset.column_set]
    summary_lines = [",".join(columns)]
    realization_lines = [",".join(REALIZATION_COLUMNS)]
    sweep_values = {"A": "A", "s": "s", "tau_ns": "tau_ns", "label": "label"}
    for point in preset.points:
        result = run_point(point, preset.realizations, preset.workers)
        row = _summary_row(preset, point, result)
        summary_lines.append(",".join(_fmt(row[c]) for c in columns))
        stats = result["stats"]
        sweep_value = row[sweep_values[preset.sweep_param]]
        for k in range(preset.realizations):
            realization_lines.append(",".join(_fmt(v) for v in (
                point.label, preset.sweep_param, sweep_value,
                point.noise_kind or "none", point.sequence_kind, k,
                float(stats.phases[k]), float(stats.xy_points[k, 0]),
                float(stats.xy_points[k, 1]), float(stats.z_values[k]),
            )))

    summary_path = os.path.join(out_dir, f"{preset.name}_summary.csv")
    realizations_path = os.path.join(out_dir, f"{preset.name}_realizations.csv")
    manifest_path = os.path.join(out_dir, f"{preset.name}_manifest.json")
    with open(summary_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(summary_lines) + "\n")
    with open(realizations_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(realization_lines) + "\n")
    manifest = {
        "preset": preset.name,
        "tool": "berrysim",
        "version": __version__,
        "master_seed": preset.master_seed,
        "realizations": preset.realizations,
        "workers": preset.workers,
        "sweep_param": preset.sweep_param,
        "wall_time_s": time.monotonic() - t_start,
        "points": [asdict(p) for p in preset.points],
        "outputs": {
            "summary_csv": os.path.basename(summary_path),
            "realizations_csv": os.path.basename(realizations_path),
        },
        "columns": list(columns),
    }
    with open(manifest_path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")
    return manifest_path


def rerun_manifest(manifest_path: str, out_dir: str) -> str:
    """Re-run a preset from its manifest; CSV outputs are bit-identical."""
    with open(manifest_path, "r", encoding="utf-8") as fh:
        manifest = json.load(fh)
    points = tuple(SweepPoint(**p) for p in manifest["points"])
    preset = ExperimentPreset(
        name=manifest["preset"],
        sweep_param=manifest["sweep_param"],
        points=points,
        realizations=manifest["realizations"],
        master_seed=manifest["master_seed"],
        workers=manifest["workers"],
    )
    return run_preset(preset, out_dir)
