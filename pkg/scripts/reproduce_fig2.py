#!/usr/bin/env python3
"""Sweep every protocol family over input fidelity under pure network noise.

Writes one CSV per purified state (ghz3, ghz4, cluster4) with all five
recipes for that state: the raw distribution, the two single-pair recipes,
the two-pair recipe and the mixed-sacrifice recipe.  Output fidelity and
success probability come from the Monte Carlo engine with Wilson intervals,
so the files feed straight into the curve renderer.

Usage: python3 scripts/reproduce_fig2.py [--trials 100000] [--out-dir out]
"""

import argparse
import pathlib

import numpy as np

from purecliff import SweepSpec, run_sweep

FAMILIES = {
    "ghz3": ("raw-ghz3", "ghz3-p1", "ghz3-p2", "ghz3-p1p2", "ghz3-het"),
    "ghz4": ("raw-ghz4", "ghz4-p1", "ghz4-p2", "ghz4-p1p2", "ghz4-het"),
    "cluster4": (
        "raw-cluster4",
        "cluster4-p1",
        "cluster4-p2",
        "cluster4-p1p2",
        "cluster4-het",
    ),
}


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--trials", type=int, default=100_000)
    parser.add_argument("--seed", type=int, default=20260814)
    parser.add_argument("--points", type=int, default=16)
    parser.add_argument("--f-min", type=float, default=0.85)
    parser.add_argument("--f-max", type=float, default=0.999)
    parser.add_argument("--out-dir", default="out")
    args = parser.parse_args()

    grid = tuple(np.linspace(args.f_min, args.f_max, args.points))
    out_dir = pathlib.Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for family, protocols in FAMILIES.items():
        spec = SweepSpec(
            protocols=protocols,
            x_axis="input_fidelity",
            x_values=grid,
            trials=args.trials,
            seed=args.seed,
            engine="mc",
        )
        path = out_dir / f"fig2_{family}.csv"
        path.write_text(run_sweep(spec))
        print(f"wrote {path} ({len(protocols)} protocols x {len(grid)} points)")


if __name__ == "__main__":
    main()
