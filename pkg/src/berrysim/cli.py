"""Command-line interface.

    berrysim run PRESET [--out DIR] [--seed S] [--realizations N]
                        [--dt NS] [--workers W] [--config FILE]
    berrysim rerun MANIFEST [--out DIR]
    berrysim validate CONFIG
    berrysim theory --solid-angle A --tau-ns T [--detuning-mhz D]
                    [--bandwidth-mhz G] [--s S]

`run` executes a preset sweep (fig2, fig3-berry, fig3-dynamic, fig4, or a
custom single-point TOML config) and writes summary/realization CSVs plus
a JSON manifest. `rerun` replays a manifest to bit-identical CSVs.
`theory` prints the closed-form phase spreads and the crossover time.
"""

import argparse
import json
import math
import sys

from .config import config_echo, load_config, to_ensemble_config
from .errors import InvalidArgumentError
from .path import normalized_amplitude_to_power, omega_for_solid_angle, polar_angle
from .presets import PRESET_NAMES, build_preset, rerun_manifest, run_preset
from .theory import (
    TheoryInput,
    coherence_from_total_sigma,
    crossover_time,
    variance_dynamic,
    variance_geometric,
)
from .units import mhz_to_rad_per_ns


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="berrysim", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a preset sweep")
    run.add_argument("preset", choices=PRESET_NAMES)
    run.add_argument("--out", default="results", help="output directory")
    run.add_argument("--seed", type=int, default=1234, help="master seed")
    run.add_argument("--realizations", type=int, default=300, help="noise realizations per point")
    run.add_argument("--dt", type=float, default=None, help="integration step override in ns")
    run.add_argument("--workers", type=int, default=1, help="parallel workers")
    run.add_argument("--config", default=None, help="TOML config (custom preset)")

    rerun = sub.add_parser("rerun", help="re-run a sweep from its manifest")
    rerun.add_argument("manifest")
    rerun.add_argument("--out", default="results-rerun")

    val = sub.add_parser("validate", help="validate a TOML config")
    val.add_argument("config")

    theory = sub.add_parser("theory", help="print closed-form predictions")
    theory.add_argument("--solid-angle", type=float, required=True, help="enclosed solid angle in rad")
    theory.add_argument("--tau-ns", type=float, required=True, help="loop duration in ns")
    theory.add_argument("--detuning-mhz", type=float, default=-50.0)
    theory.add_argument("--bandwidth-mhz", type=float, default=10.0)
    theory.add_argument("--s", type=float, default=1.0 / 15.0, help="normalized radial noise amplitude")
    return parser


def _cmd_run(args) -> int:
    resolved = None
    if args.preset == "custom":
        if args.config is None:
            print("error: custom preset requires --config", file=sys.stderr)
            return 2
        resolved, errors = load_config(args.config)
        if errors:
            for err in errors:
                print(f"error: {err}", file=sys.stderr)
            return 1
        ens = resolved["ensemble"]
        if args.realizations == 300:
            args.realizations = ens["realizations"]
        if args.seed == 1234:
            args.seed = ens["master_seed"]
        if args.workers == 1:
            args.workers = ens["workers"]
    try:
        preset = build_preset(
            args.preset, args.seed, args.realizations, args.dt, args.workers, resolved
        )
        manifest_path = run_preset(preset, args.out)
    except (InvalidArgumentError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    print(manifest_path)
    return 0


def _cmd_rerun(args) -> int:
    try:
        manifest_path = rerun_manifest(args.manifest, args.out)
    except (InvalidArgumentError, OSError, KeyError, json.JSONDecodeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    print(manifest_path)
    return 0


def _cmd_validate(args) -> int:
    resolved, errors = load_config(args.config)
    if errors:
        for err in errors:
            print(f"error: {err}", file=sys.stderr)
        return 1
    to_ensemble_config(resolved)  # exercises dataclass-level validation too
    print(config_echo(resolved))
    return 0


def _cmd_theory(args) -> int:
    delta = mhz_to_rad_per_ns(args.detuning_mhz)
    try:
        omega = omega_for_solid_angle(args.solid_angle, delta)
        theta = polar_angle(omega, delta)
        b = math.hypot(omega, delta)
        rate = mhz_to_rad_per_ns(args.bandwidth_mhz)
        power = normalized_amplitude_to_power(args.s, "radial", omega) if args.s > 0 else 0.0
        inp = TheoryInput(theta=theta, b=b, tau=args.tau_ns, gamma_rate=rate, power=power)
        sigma_geo = math.sqrt(variance_geometric(inp))
        sigma_dyn = math.sqrt(variance_dynamic(inp))
        out = {
            "solid_angle_rad": args.solid_angle,
            "theta_rad": theta,
            "omega_rad_per_ns": omega,
            "b_rad_per_ns": b,
            "tau_ns": args.tau_ns,
            "rate_per_ns": rate,
            "power": power,
            "sigma_geometric": sigma_geo,
            "sigma_dynamic": sigma_dyn,
            "tau_star_ns": crossover_time(theta, b),
            "coherence_geometric": coherence_from_total_sigma(4.0 * sigma_geo),
            "coherence_dynamic": coherence_from_total_sigma(sigma_dyn),
        }
    except InvalidArgumentError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    print(json.dumps(out, indent=2, sort_keys=True))
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "run": _cmd_run,
        "rerun": _cmd_rerun,
        "validate": _cmd_validate,
        "theory": _cmd_theory,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
