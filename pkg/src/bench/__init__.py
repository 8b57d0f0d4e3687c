"""Experiment harness: run configuration, runs, comparisons and the CLI."""

from .compare import Comparison, compare_runs
from .config import RunConfig
from .extract import extract_subgraph, induced_subgraph
from .runner import CSV_HEADER, RunRecord, inspect_delta, prepare_graph, run, run_repeat
from .suite import BenchmarkReport, SweepPoint, SweepReport, run_benchmark_suite, run_sweep

__all__ = [
    "BenchmarkReport",
    "CSV_HEADER",
    "Comparison",
    "RunConfig",
    "RunRecord",
    "SweepPoint",
    "SweepReport",
    "compare_runs",
    "extract_subgraph",
    "induced_subgraph",
    "inspect_delta",
    "prepare_graph",
    "run",
    "run_benchmark_suite",
    "run_repeat",
    "run_sweep",
]
