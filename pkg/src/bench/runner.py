from __future__ import annotations

import csv
import io
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from src.bench.config import RunConfig
from src.bench.extract import extract_subgraph
from src.datasets import (
    DatasetStats,
    assign_probabilities,
    load_edge_list,
    random_graph,
    resolve_seeds,
    stats,
)
from src.decrease import decrease_table
from src.diffusion.spread import evaluate_spread
from src.errors import ConfigError, GraphError, TimeLimitExceeded
from src.graphs import ProbGraph, apply_blockers, unify_seeds, validate
from src.minimizers import BlockResult, create_minimizer
from src.utils.rng import RngStream
from src.utils.timing import Deadline

logger = logging.getLogger(__name__)

CSV_HEADER = ("algorithm", "dataset", "model", "strategy", "b", "repeat", "residual", "wall_ms", "blockers")


@dataclass
class RunRecord:
    """Per-repeat results of one algorithm over a budget sweep."""

    config: RunConfig
    stats: DatasetStats
    base_spread: float
    base_estimator: str
    results: Dict[int, List[BlockResult]] = field(default_factory=dict)
    status: str = "ok"

    def residuals(self, budget: int) -> List[float]:
        return [float(r.residual_spread) for r in self.results.get(budget, [])]

    def mean_residual(self, budget: int) -> float:
        values = self.residuals(budget)
        return float(np.mean(values)) if values else float("nan")

    def mean_wall_ms(self, budget: int) -> float:
        values = [r.wall_time_ms for r in self.results.get(budget, [])]
        return float(np.mean(values)) if values else float("nan")

    def as_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        budgets = []
        for b, results in self.results.items():
            entry: Dict[str, Any] = {
                "budget": b,
                "mean_residual": self.mean_residual(b) if results else None,
                "repeats": [r.as_dict(include_timing) for r in results],
            }
            if include_timing:
                entry["mean_wall_ms"] = self.mean_wall_ms(b) if results else None
            budgets.append(entry)
        return {
            "config": self.config.echo(),
            "dataset": self.stats.as_dict(),
            "base_spread": self.base_spread,
            "base_estimator": self.base_estimator,
            "status": self.status,
            "budgets": budgets,
        }

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(
            self.as_dict(include_timing), indent=2, sort_keys=True, allow_nan=False
        )

    def csv_rows(self) -> List[Tuple[Any, ...]]:
        cfg = self.config
        rows = []
        for b, results in self.results.items():
            for repeat, r in enumerate(results):
                rows.append(
                    (
                        r.algorithm,
                        cfg.dataset_name,
                        cfg.model.value,
                        cfg.strategy.value,
                        b,
                        repeat,
                        repr(float(r.residual_spread)),
                        f"{r.wall_time_ms:.3f}",
                        ";".join(r.names),
                    )
                )
        return rows

    def write_csv(self, path: str | Path) -> None:
        """Append rows, writing the header first when the file is new."""
        path = Path(path)
        fresh = not path.exists() or path.stat().st_size == 0
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        if fresh:
            writer.writerow(CSV_HEADER)
        writer.writerows(self.csv_rows())
        with path.open("a") as handle:
            handle.write(buffer.getvalue())


def prepare_graph(config: RunConfig) -> ProbGraph:
    """Load or generate the input, assign probabilities and seeds, unify seeds."""
    stream = RngStream(config.master_seed).child("dataset")
    if config.dataset is not None:
        graph = load_edge_list(config.dataset, config.model)
    else:
        n, m = config.synthetic  # type: ignore[misc]
        graph = random_graph(n, m, stream.child("synthetic"), config.model)
    if config.extract is not None:
        graph = extract_subgraph(graph, config.extract, stream.child("extract"))
    prob_stream = stream.child("prob")
    if config.prob_seed is not None:
        prob_stream = RngStream(config.prob_seed).child("prob")
    graph = assign_probabilities(graph, config.prob_model, prob_stream)
    graph = resolve_seeds(graph, config.seed_spec, stream.child("seeds"))
    problems = [v for v in validate(graph) if v.code in ("probability-range", "lt-in-sum")]
    if problems:
        raise ConfigError(f"graph fails {config.model.value.upper()} validation: {problems[0]}")
    try:
        return unify_seeds(graph)
    except GraphError as exc:
        raise ConfigError(str(exc)) from exc


def _evaluation_stream(config: RunConfig, repeat: int) -> RngStream:
    # Shared by every budget and algorithm at the same repeat.
    return RngStream(config.master_seed).child("eval", repeat)


def run_repeat(graph: ProbGraph, config: RunConfig, budget: int, repeat: int) -> BlockResult:
    """One algorithm run plus an independent evaluation of its blockers."""
    minimizer = create_minimizer(
        config.algorithm,
        kind=config.strategy,
        theta=config.theta,
        mcs_rounds=config.mcs_rounds,
        stream=RngStream(config.master_seed).child("run", budget, repeat),
        deadline=Deadline(config.time_limit),
        workers=config.workers,
        common_random_numbers=config.common_random_numbers,
        top_up=config.top_up,
        exact_estimator=config.exact_estimator,
        max_combinations=config.max_combinations,
        max_uncertain=config.max_uncertain,
    )
    try:
        result = minimizer.block(graph, budget, evaluate=False)
    except TimeLimitExceeded as exc:
        result = exc.partial
        logger.warning("%s b=%d repeat %d hit the time limit", config.algorithm, budget, repeat)
    blocked = apply_blockers(graph, config.strategy, result.blockers.members)
    result.residual_spread, result.estimator = evaluate_spread(
        blocked,
        _evaluation_stream(config, repeat),
        config.eval_rounds,
        mode=config.eval_mode,
        max_uncertain=config.max_uncertain,
        workers=config.workers,
    )
    return result


def run(config: RunConfig, graph: Optional[ProbGraph] = None) -> RunRecord:
    """Run ``config.algorithm`` for every budget and repeat.

    Repeats are independent streams and may run in parallel; results are
    recorded in (budget, repeat) order either way. The first timeout stops
    the sweep and flags the record.
    """
    if graph is None:
        graph = prepare_graph(config)
    base_spread, base_estimator = evaluate_spread(
        graph,
        _evaluation_stream(config, 0),
        config.eval_rounds,
        mode=config.eval_mode,
        max_uncertain=config.max_uncertain,
        workers=config.workers,
    )
    record = RunRecord(config, stats(graph), base_spread, base_estimator)
    logger.info(
        "%s on %s: base spread %.4f (%s)", config.algorithm, config.dataset_name, base_spread, base_estimator
    )
    tasks = [(b, r) for b in config.budgets for r in range(config.repeats)]

    if config.repeat_workers > 1:
        with ProcessPoolExecutor(max_workers=config.repeat_workers) as pool:
            futures = [pool.submit(run_repeat, graph, config, b, r) for b, r in tasks]
            for (b, _), future in zip(tasks, futures):
                if record.status == "timeout":
                    future.cancel()
                    continue
                _add(record, b, future.result())
        return record

    for b, r in tasks:
        _add(record, b, run_repeat(graph, config, b, r))
        if record.status == "timeout":
            break
    return record


def _add(record: RunRecord, budget: int, result: BlockResult) -> None:
    record.results.setdefault(budget, []).append(result)
    if result.status == "timeout":
        record.status = "timeout"
    logger.info(
        "b=%d repeat %d: residual %.4f with %s",
        budget,
        len(record.results[budget]) - 1,
        result.residual_spread,
        ", ".join(result.names) or "no blockers",
    )


def inspect_delta(config: RunConfig, out: Optional[str | Path] = None) -> str:
    """CSV of the decrease of every candidate on the prepared graph."""
    graph = prepare_graph(config)
    table = decrease_table(
        graph,
        config.strategy,
        config.theta,
        RngStream(config.master_seed).child("inspect"),
        workers=config.workers,
    )
    text = table.to_csv()
    if out is not None:
        Path(out).write_text(text)
    return text
