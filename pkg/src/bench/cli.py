from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from src.bench.config import RunConfig
from src.bench.runner import inspect_delta, run
from src.bench.suite import run_benchmark_suite
from src.config import ConfigManager
from src.errors import ConfigError, DatasetError, GraphError
from src.minimizers.factory import ALGORITHMS
from src.utils.log import configure_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_TIMEOUT = 3

# argparse destination -> dot-path in the configuration
OVERRIDES: Dict[str, str] = {
    "input": "dataset.path",
    "synthetic": "dataset.synthetic",
    "prob": "dataset.prob",
    "seeds": "dataset.seeds",
    "extract": "dataset.extract",
    "prob_seed": "dataset.prob_seed",
    "model": "run.model",
    "strategy": "run.strategy",
    "algo": "run.algorithm",
    "budget": "run.budgets",
    "theta": "estimation.theta",
    "mcs_rounds": "estimation.mcs_rounds",
    "workers": "estimation.workers",
    "eval_rounds": "evaluation.rounds",
    "eval_mode": "evaluation.mode",
    "rng_seed": "run.master_seed",
    "repeats": "run.repeats",
    "time_limit": "run.time_limit",
    "repeat_workers": "run.workers",
    "exact_estimator": "exact.estimator",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="imin",
        description="Choose blockers that minimise influence spread from a seed set.",
    )
    source = parser.add_argument_group("input")
    source.add_argument("--input", type=Path, help="Edge list: 'u v' or 'u v p' per line.")
    source.add_argument("--synthetic", metavar="N,M", help="Random directed graph instead of a file.")
    source.add_argument("--undirected", action="store_true", help="Treat each line as two directed edges.")
    source.add_argument("--prob", choices=["tr", "wc", "file"], help="Probability assignment.")
    source.add_argument("--seeds", help="'random:k', 'file:PATH' or comma-separated node ids.")
    source.add_argument("--extract", type=int, metavar="N", help="Run on a random N-node subgraph.")
    source.add_argument("--prob-seed", type=int, help="Seed for TR draws (default: master seed).")
    source.add_argument("--config", type=Path, help="JSON configuration file.")

    algo = parser.add_argument_group("algorithm")
    algo.add_argument("--model", choices=["ic", "lt"])
    algo.add_argument("--strategy", choices=["node", "edge"])
    algo.add_argument("--algo", choices=ALGORITHMS)
    algo.add_argument("--budget", help="Budget or comma-separated budget sweep.")
    algo.add_argument("--theta", type=int, help="Sampled worlds per decrease estimation.")
    algo.add_argument("--mcs-rounds", type=int, help="Monte-Carlo rounds for bg and exact/mcs.")
    algo.add_argument("--top-up", action="store_true", help="GreedyReplace fills unused budget.")
    algo.add_argument(
        "--fresh-worlds",
        action="store_true",
        help="BaselineGreedy draws new worlds per candidate instead of sharing them.",
    )
    algo.add_argument("--exact-estimator", choices=["exact", "mcs"])

    runs = parser.add_argument_group("run")
    runs.add_argument("--eval-rounds", type=int, help="MCS rounds for the final spread.")
    runs.add_argument("--eval-mode", choices=["auto", "exact", "mcs"])
    runs.add_argument("--rng-seed", type=int, help="Master seed.")
    runs.add_argument("--repeats", type=int)
    runs.add_argument("--time-limit", type=float, metavar="SECS")
    runs.add_argument("--workers", type=int, help="Processes for world sampling.")
    runs.add_argument("--repeat-workers", type=int, help="Processes for independent repeats.")

    out = parser.add_argument_group("output")
    out.add_argument("--out", type=Path, help="JSON result path (stdout when omitted).")
    out.add_argument("--csv", type=Path, help="Append one row per repeat to this CSV.")
    out.add_argument("--json-timings", action="store_true", help="Include wall times in JSON.")
    out.add_argument("--inspect", action="store_true", help="Write the decrease table instead of running.")
    out.add_argument(
        "--compare",
        metavar="ALGOS",
        help="Comma-separated algorithms to run alongside --algo; --algo is the reference.",
    )
    out.add_argument("-v", "--verbose", action="count", default=0)
    out.add_argument("--log-level", help="Explicit log level (overrides -v).")
    return parser


def build_config(args: argparse.Namespace) -> RunConfig:
    cfg = ConfigManager.from_file(args.config) if args.config else ConfigManager.with_defaults()
    values: Dict[str, Any] = vars(args)
    for dest, key in OVERRIDES.items():
        if values.get(dest) is not None:
            cfg.set(key, str(values[dest]) if dest == "input" else values[dest])
    if args.undirected:
        cfg.set("dataset.directed", False)
    if args.top_up:
        cfg.set("replace.top_up", True)
    if args.fresh_worlds:
        cfg.set("baseline.common_random_numbers", False)
    if args.inspect and cfg.get("run.algorithm") is None:
        cfg.set("run.algorithm", "ag")
    return RunConfig.from_manager(cfg)


def _level(args: argparse.Namespace) -> str:
    if args.log_level:
        return args.log_level
    return ("WARNING", "INFO", "DEBUG")[min(args.verbose, 2)]


def _emit(text: str, path: Optional[Path]) -> None:
    if path is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        path.write_text(text)
        logger.info("wrote %s", path)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(_level(args))
    try:
        config = build_config(args)
        if args.inspect:
            _emit(inspect_delta(config), args.out)
            return EXIT_OK
        if args.compare:
            others: List[str] = [a.strip() for a in args.compare.split(",") if a.strip()]
            report = run_benchmark_suite(
                config, [config.algorithm] + others, reference=config.algorithm
            )
            _emit(report.to_json(args.json_timings), args.out)
            records = report.records
        else:
            record = run(config)
            _emit(record.to_json(args.json_timings), args.out)
            records = [record]
    except (ConfigError, DatasetError, GraphError) as exc:
        logger.error("%s", exc)
        return EXIT_CONFIG
    if args.csv is not None:
        for record in records:
            record.write_csv(args.csv)
    if any(r.status == "timeout" for r in records):
        return EXIT_TIMEOUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
