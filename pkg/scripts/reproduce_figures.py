#!/usr/bin/env python3
"""Run every preset at full scale and render the figures.

Writes CSVs + manifests into --out and, when the frontend is built
(frontend/dist/src/cli.js exists), one SVG per figure kind next to them.
Desk-scale runtime is a few minutes at the default 300 realizations.
"""

import argparse
import os
import shutil
import subprocess
import sys

REPO = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, os.path.join(REPO, "src"))

from berrysim.presets import build_preset, run_preset  # noqa: E402


def render(kind, inputs, out_path):
    cli = os.path.join(REPO, "frontend", "dist", "src", "cli.js")
    if not os.path.exists(cli) or shutil.which("node") is None:
        print(f"  (skipping {os.path.basename(out_path)}: frontend not built)")
        return
    cmd = ["node", cli, "render", "--kind", kind, "--out", out_path]
    for path in inputs:
        cmd += ["--in", path]
    subprocess.run(cmd, check=True)
    print(f"  wrote {out_path}")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="results")
    parser.add_argument("--seed", type=int, default=1234)
    parser.add_argument("--realizations", type=int, default=300)
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args()

    for name in ("fig2", "fig3-berry", "fig3-dynamic", "fig4"):
        print(f"running preset {name} ...")
        preset = build_preset(name, args.seed, args.realizations, workers=args.workers)
        manifest = run_preset(preset, args.out)
        print(f"  wrote {manifest}")

    summary = lambda name: os.path.join(args.out, f"{name}_summary.csv")  # noqa: E731
    realizations = os.path.join(args.out, "fig2_realizations.csv")
    render("fig2", [summary("fig2")], os.path.join(args.out, "fig2.svg"))
    render("fig3", [summary("fig3-berry")], os.path.join(args.out, "fig3_berry.svg"))
    render("fig3", [summary("fig3-dynamic")], os.path.join(args.out, "fig3_dynamic.svg"))
    render("fig4", [summary("fig4")], os.path.join(args.out, "fig4.svg"))
    render("histogram", [realizations], os.path.join(args.out, "fig2_histogram.svg"))
    render("equator-scatter", [realizations], os.path.join(args.out, "fig2_equator.svg"))


if __name__ == "__main__":
    main()
