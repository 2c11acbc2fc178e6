#!/usr/bin/env python3
"""Run SweepRunner on seeded random families and print the summary."""

from __future__ import annotations

import argparse
from pathlib import Path

from hyperbisect.data import write_json
from hyperbisect.experiments import SweepConfig, SweepRunner


def main() -> None:
    parser = argparse.ArgumentParser(description="Measure continuation success on random families.")
    parser.add_argument("--instances", type=int, default=20, help="Number of random families.")
    parser.add_argument("--n", type=int, default=2, help="Ambient dimension.")
    parser.add_argument("--d", type=int, default=2, help="Number of hyperplanes.")
    parser.add_argument("--points", type=int, default=11, help="Odd support size per measure.")
    parser.add_argument("--seed", type=int, default=0, help="Seed of the first instance.")
    parser.add_argument("--no-sweep", action="store_true", help="Only track the first partition.")
    parser.add_argument("--workers", type=int, default=1, help="Threads for partition sweeps.")
    parser.add_argument(
        "--table", type=Path, default=None, help="Optional JSON path for per-instance rows."
    )
    args = parser.parse_args()

    config = SweepConfig(
        instances=args.instances,
        n=args.n,
        D=args.d,
        points_per_measure=args.points,
        seed=args.seed,
        sweep_partitions=not args.no_sweep,
        max_workers=args.workers,
    )
    result = SweepRunner(config).run()
    print("Sweep stats:", result.stats)
    if args.table is not None:
        write_json(result.table.to_dict(orient="records"), args.table)
        print(f"Rows saved to {args.table}")


if __name__ == "__main__":
    main()
