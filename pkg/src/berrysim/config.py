"""TOML run configuration: parsing, validation and unit normalization.

Config files speak the lab's units (cyclic MHz, ns); everything downstream
of :func:`resolve` is rad/ns. Validation collects every violation with its
field path instead of stopping at the first.

Schema::

    [loop]
    drive_mhz = 39.95      # or solid_angle = 1.3744 (rad); exactly one
    detuning_mhz = -50.0   # required, sign kept (geometry uses |detuning|)
    tau_ns = 100.0         # required
    orientation = 1        # optional, +1 or -1
    ramp_ns = 37.0         # optional, default per sequence kind
    dt_ns = 0.02           # optional, default integration rule

    [noise]                # optional section; absent = noiseless
    kind = "radial"        # radial | angular
    amplitude = 0.0667     # normalized amplitude s
    bandwidth_mhz = 10.0   # optional, default 10

    [sequence]
    kind = "berry-echo"    # optional, berry-echo | dynamic-echo
    shots = 1000000        # optional; absent = ideal expectation values

    [ensemble]
    realizations = 300     # optional, default 300
    master_seed = 1234     # optional, default 1234
    workers = 1            # optional, default 1
"""

import json
import math
import sys
from typing import Optional

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .ensemble import EnsembleConfig
from .noise import NOISE_KINDS, NoiseParams
from .path import LoopSpec, default_time_step, normalized_amplitude_to_power, omega_for_solid_angle, polar_angle, solid_angle
from .protocol import SEQUENCE_KINDS, SequenceConfig, recommended_ramp_time
from .units import mhz_to_rad_per_ns

DEFAULT_REALIZATIONS = 300
DEFAULT_MASTER_SEED = 1234
DEFAULT_BANDWIDTH_MHZ = 10.0

_SCHEMA = {
    "loop": {"drive_mhz", "solid_angle", "detuning_mhz", "tau_ns", "orientation", "ramp_ns", "dt_ns"},
    "noise": {"kind", "amplitude", "bandwidth_mhz"},
    "sequence": {"kind", "shots"},
    "ensemble": {"realizations", "master_seed", "workers"},
}


def _is_number(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def validate_raw(raw: dict) -> list[str]:
    """All schema violations in a parsed config, one message per field."""
    errors = []
    for section in raw:
        if section not in _SCHEMA:
            errors.append(f"{section}: unknown section")
            continue
        if not isinstance(raw[section], dict):
            errors.append(f"{section}: must be a table")
            continue
        for key in raw[section]:
            if key not in _SCHEMA[section]:
                errors.append(f"{section}.{key}: unknown key")

    loop = raw.get("loop")
    if not isinstance(loop, dict):
        errors.append("loop: section is required")
        loop = {}
    has_drive = "drive_mhz" in loop
    has_angle = "solid_angle" in loop
    if has_drive == has_angle:
        errors.append("loop: exactly one of drive_mhz or solid_angle is required")
    if has_drive and (not _is_number(loop["drive_mhz"]) or loop["drive_mhz"] < 0):
        errors.append("loop.drive_mhz: must be a number >= 0")
    if has_angle and (not _is_number(loop["solid_angle"]) or not 0 <= loop["solid_angle"] < 2 * math.pi):
        errors.append("loop.solid_angle: must lie in [0, 2*pi)")
    if "detuning_mhz" not in loop:
        errors.append("loop.detuning_mhz: required")
    elif not _is_number(loop["detuning_mhz"]) or loop["detuning_mhz"] == 0:
        errors.append("loop.detuning_mhz: must be a non-zero number (sign is kept)")
    if "tau_ns" not in loop:
        errors.append("loop.tau_ns: required")
    elif not _is_number(loop["tau_ns"]) or loop["tau_ns"] <= 0:
        errors.append("loop.tau_ns: must be a positive number")
    if "orientation" in loop and loop["orientation"] not in (1, -1):
        errors.append("loop.orientation: must be +1 or -1")
    if "ramp_ns" in loop and (not _is_number(loop["ramp_ns"]) or loop["ramp_ns"] < 0):
        errors.append("loop.ramp_ns: must be a number >= 0")
    if "dt_ns" in loop and (not _is_number(loop["dt_ns"]) or loop["dt_ns"] <= 0):
        errors.append("loop.dt_ns: must be a positive number")
    if (
        "dt_ns" in loop
        and "tau_ns" in loop
        and _is_number(loop.get("dt_ns", 0))
        and _is_number(loop.get("tau_ns", 0))
        and loop["tau_ns"] > 0
        and loop["dt_ns"] > loop["tau_ns"] / 100.0
    ):
        errors.append("loop.dt_ns: must be <= tau_ns/100")

    noise = raw.get("noise")
    if noise is not None and isinstance(noise, dict):
        if noise.get("kind") not in NOISE_KINDS:
            errors.append(f"noise.kind: must be one of {list(NOISE_KINDS)}")
        if "amplitude" not in noise:
            errors.append("noise.amplitude: required when [noise] is present")
        elif not _is_number(noise["amplitude"]) or noise["amplitude"] < 0:
            errors.append("noise.amplitude: must be a number >= 0")
        if "bandwidth_mhz" in noise and (not _is_number(noise["bandwidth_mhz"]) or noise["bandwidth_mhz"] <= 0):
            errors.append("noise.bandwidth_mhz: must be a positive number")

    sequence = raw.get("sequence")
    if sequence is not None and isinstance(sequence, dict):
        if "kind" in sequence and sequence["kind"] not in SEQUENCE_KINDS:
            errors.append(f"sequence.kind: must be one of {list(SEQUENCE_KINDS)}")
        if "shots" in sequence and (not isinstance(sequence["shots"], int) or sequence["shots"] < 1):
            errors.append("sequence.shots: must be an integer >= 1")

    ens = raw.get("ensemble")
    if ens is not None and isinstance(ens, dict):
        if "realizations" in ens and (not isinstance(ens["realizations"], int) or ens["realizations"] < 1):
            errors.append("ensemble.realizations: must be an integer >= 1")
        if "master_seed" in ens and (not isinstance(ens["master_seed"], int) or ens["master_seed"] < 0):
            errors.append("ensemble.master_seed: must be an integer >= 0")
        if "workers" in ens and (not isinstance(ens["workers"], int) or ens["workers"] < 1):
            errors.append("ensemble.workers: must be an integer >= 1")
    return errors


def resolve(raw: dict) -> dict:
    """Normalize a validated raw config to internal units plus deriveds."""
    loop = raw["loop"]
    noise = raw.get("noise")
    sequence = raw.get("sequence", {})
    ens = raw.get("ensemble", {})

    delta = mhz_to_rad_per_ns(float(loop["detuning_mhz"]))
    if "drive_mhz" in loop:
        omega = mhz_to_rad_per_ns(float(loop["drive_mhz"]))
    else:
        omega = omega_for_solid_angle(float(loop["solid_angle"]), delta)
    tau = float(loop["tau_ns"])
    seq_kind = sequence.get("kind", "berry-echo")
    theta = polar_angle(omega, delta) if (omega or delta) else 0.0
    b = math.hypot(omega, delta)
    rate = mhz_to_rad_per_ns(float(noise["bandwidth_mhz"])) if noise and "bandwidth_mhz" in noise else mhz_to_rad_per_ns(DEFAULT_BANDWIDTH_MHZ)
    ramp = float(loop["ramp_ns"]) if "ramp_ns" in loop else recommended_ramp_time(seq_kind, tau)
    dt = float(loop["dt_ns"]) if "dt_ns" in loop else default_time_step(tau, b, rate if noise else None)

    resolved = {
        "sequence_kind": seq_kind,
        "shots": sequence.get("shots"),
        "loop": {
            "omega_rad_per_ns": omega,
            "delta_rad_per_ns": delta,
            "tau_ns": tau,
            "orientation": int(loop.get("orientation", 1)),
            "ramp_ns": ramp,
            "dt_ns": dt,
            "theta_rad": theta,
            "solid_angle_rad": solid_angle(theta),
            "b_rad_per_ns": b,
        },
        "noise": None,
        "ensemble": {
            "realizations": int(ens.get("realizations", DEFAULT_REALIZATIONS)),
            "master_seed": int(ens.get("master_seed", DEFAULT_MASTER_SEED)),
            "workers": int(ens.get("workers", 1)),
        },
    }
    if noise is not None:
        s = float(noise["amplitude"])
        kind = noise["kind"]
        resolved["noise"] = {
            "kind": kind,
            "s": s,
            "rate_per_ns": rate,
            "power": normalized_amplitude_to_power(s, kind, omega if kind == "radial" else None),
        }
    return resolved


def load_config(path: str) -> tuple[Optional[dict], list[str]]:
    """Parse + validate a TOML file; returns (resolved config, errors)."""
    try:
        with open(path, "rb") as fh:
            raw = tomllib.load(fh)
    except FileNotFoundError:
        return None, [f"{path}: file not found"]
    except tomllib.TOMLDecodeError as err:
        return None, [f"{path}: invalid TOML: {err}"]
    errors = validate_raw(raw)
    if errors:
        return None, errors
    return resolve(raw), []


def to_ensemble_config(resolved: dict) -> EnsembleConfig:
    """Build the runnable dataclasses from a resolved config."""
    lp = resolved["loop"]
    loop = LoopSpec(
        omega=lp["omega_rad_per_ns"],
        delta=lp["delta_rad_per_ns"],
        tau=lp["tau_ns"],
        orientation=lp["orientation"],
        ramp_time=lp["ramp_ns"],
        dt=lp["dt_ns"],
    )
    noise = None
    if resolved["noise"] is not None:
        nz = resolved["noise"]
        noise = NoiseParams(power=nz["power"], rate=nz["rate_per_ns"], kind=nz["kind"])
    seq = SequenceConfig(
        loop=loop,
        noise=noise,
        sequence_kind=resolved["sequence_kind"],
        shots=resolved["shots"],
    )
    ens = resolved["ensemble"]
    return EnsembleConfig(
        sequence=seq,
        realizations=ens["realizations"],
        master_seed=ens["master_seed"],
        workers=ens["workers"],
    )


def config_echo(resolved: dict) -> str:
    """Deterministic JSON echo of a resolved config."""
    return json.dumps(resolved, indent=2, sort_keys=True)
