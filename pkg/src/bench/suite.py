from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional, Sequence

from src.bench.compare import Comparison, compare_runs
from src.bench.config import RunConfig
from src.bench.runner import RunRecord, prepare_graph, run

logger = logging.getLogger(__name__)


@dataclass
class BenchmarkReport:
    records: List[RunRecord] = field(default_factory=list)
    comparisons: Dict[str, List[Comparison]] = field(default_factory=dict)
    reference: Optional[str] = None

    def to_json(self, include_timing: bool = False) -> str:
        payload = {
            "reference": self.reference,
            "runs": [r.as_dict(include_timing) for r in self.records],
            "comparisons": {
                name: [c.as_dict() for c in rows] for name, rows in self.comparisons.items()
            },
        }
        return json.dumps(payload, indent=2, sort_keys=True, allow_nan=False)


def run_benchmark_suite(
    config: RunConfig,
    algorithms: Sequence[str],
    reference: Optional[str] = None,
) -> BenchmarkReport:
    """Run several algorithms on one prepared graph and compare them.

    Every algorithm sees the same graph, seeds and evaluation streams, so the
    per-repeat residuals pair up for the t-test against ``reference``.
    """
    graph = prepare_graph(config)
    report = BenchmarkReport(reference=reference)
    by_name: Dict[str, RunRecord] = {}
    for name in algorithms:
        record = run(replace(config, algorithm=name), graph=graph)
        report.records.append(record)
        by_name[name] = record
        if record.status == "timeout":
            logger.warning("%s timed out; later budgets are missing", name)
    if reference is not None and reference in by_name:
        for name, record in by_name.items():
            if name != reference:
                report.comparisons[name] = compare_runs(record, by_name[reference])
    return report


@dataclass
class SweepPoint:
    """One (seed set, theta, algorithm) cell of a parameter sweep."""

    algorithm: str
    theta: int
    seed_spec: str
    record: RunRecord

    def as_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "algorithm": self.algorithm,
            "theta": self.theta,
            "seeds": self.seed_spec,
            "mean_residual": {str(b): self.record.mean_residual(b) for b in self.record.results},
            "run": self.record.as_dict(include_timing),
        }
        if include_timing:
            data["mean_wall_ms"] = {
                str(b): self.record.mean_wall_ms(b) for b in self.record.results
            }
        return data


@dataclass
class SweepReport:
    points: List[SweepPoint] = field(default_factory=list)

    def to_json(self, include_timing: bool = False) -> str:
        payload = {"points": [p.as_dict(include_timing) for p in self.points]}
        return json.dumps(payload, indent=2, sort_keys=True, allow_nan=False)


def run_sweep(config: RunConfig, algorithms: Sequence[str]) -> SweepReport:
    """Run every algorithm at every swept theta and seed set.

    Each seed set gets its own prepared graph; within it every theta and
    algorithm share that graph and the evaluation streams. Empty sweep axes
    fall back to ``config.theta`` and ``config.seed_spec``.
    """
    thetas = config.thetas or (config.theta,)
    seed_specs = config.seed_sweep or (config.seed_spec,)
    report = SweepReport()
    for spec in seed_specs:
        dataset = None if config.dataset is None else replace(config.dataset, seed_spec=spec)
        seeded = replace(config, seed_spec=spec, dataset=dataset)
        graph = prepare_graph(seeded)
        for theta in thetas:
            for name in algorithms:
                record = run(replace(seeded, algorithm=name, theta=theta), graph=graph)
                report.points.append(SweepPoint(name, theta, spec, record))
                logger.info("sweep %s theta=%d seeds=%s done", name, theta, spec)
    return report
