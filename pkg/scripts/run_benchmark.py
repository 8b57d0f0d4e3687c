#!/usr/bin/env python
from __future__ import annotations

import argparse
import sys
from pathlib import Path

PROJECT_ROOT = Path(__file__).resolve().parents[1]
if str(PROJECT_ROOT) not in sys.path:
    sys.path.append(str(PROJECT_ROOT))

from src.bench.config import RunConfig  # noqa: E402
from src.bench.suite import run_benchmark_suite, run_sweep  # noqa: E402
from src.config import ConfigManager  # noqa: E402
from src.utils.log import configure_logging  # noqa: E402


def parse_args() -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        description=(
            "Compare blocking algorithms on an extracted subgraph over a budget sweep, "
            "optionally sweeping theta and the seed set."
        )
    )
    parser.add_argument("--input", type=Path, help="Edge list; a synthetic graph when omitted.")
    parser.add_argument("--synthetic", default="2000,10000", help="N,M for the synthetic graph.")
    parser.add_argument(
        "--algos",
        nargs="+",
        default=["exact", "gr", "ag", "outdeg", "rand"],
        help="Algorithms to include; the first one is the reference.",
    )
    parser.add_argument("--budgets", default="1,2", help="Budget sweep.")
    parser.add_argument("--extract", type=int, default=100, help="Subgraph size in nodes.")
    parser.add_argument("--seeds", default="random:10")
    parser.add_argument("--prob", default="tr", choices=["tr", "wc", "file"])
    parser.add_argument("--model", default="ic", choices=["ic", "lt"])
    parser.add_argument("--theta", type=int, default=10_000)
    parser.add_argument(
        "--thetas",
        help="Comma-separated theta values to sweep, e.g. 1000,10000,100000.",
    )
    parser.add_argument(
        "--seeds-sweep",
        nargs="+",
        help="Seed sets to sweep, e.g. random:10 random:50 random:100.",
    )
    parser.add_argument("--eval-rounds", type=int, default=10_000)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--rng-seed", type=int, default=0)
    parser.add_argument("--output", type=Path, help="Optional JSON output path.")
    return parser.parse_args()


def main() -> None:
    args = parse_args()
    configure_logging("INFO")
    overrides = {
        "dataset": {
            "prob": args.prob,
            "seeds": args.seeds,
            "extract": args.extract,
        },
        "run": {
            "algorithm": args.algos[0],
            "budgets": args.budgets,
            "model": args.model,
            "repeats": args.repeats,
            "master_seed": args.rng_seed,
        },
        "estimation": {"theta": args.theta, "mcs_rounds": args.theta},
        "evaluation": {"rounds": args.eval_rounds},
        "exact": {"estimator": "mcs"},
        "sweep": {"thetas": args.thetas or [], "seeds": args.seeds_sweep or []},
    }
    if args.input:
        overrides["dataset"]["path"] = str(args.input)
    else:
        overrides["dataset"]["synthetic"] = args.synthetic
    config = RunConfig.from_manager(ConfigManager.with_defaults(overrides))
    if config.thetas or config.seed_sweep:
        payload = run_sweep(config, args.algos).to_json(include_timing=True)
    else:
        report = run_benchmark_suite(config, args.algos, reference=args.algos[0])
        payload = report.to_json(include_timing=True)

    if args.output:
        args.output.write_text(payload)
        print(f"Wrote benchmark report to {args.output}")
    else:
        print(payload)


if __name__ == "__main__":
    main()
