from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import partial
from typing import Optional, Tuple

from src.diffusion.engine import run_worlds
from src.diffusion.exact import DEFAULT_MAX_UNCERTAIN, exact_spread
from src.diffusion.sampling import SampledWorld, reached_nodes
from src.errors import InfeasibleEnumeration
from src.graphs.prob_graph import ProbGraph
from src.utils.rng import RngStream

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpreadEstimate:
    """Monte-Carlo estimate of the expected spread from one source."""

    mean: float
    rounds: int
    total: int
    per_round_counts: Optional[Tuple[int, ...]] = None

    def variance(self) -> float:
        if not self.per_round_counts or self.rounds < 2:
            return 0.0
        mu = self.mean
        return sum((c - mu) ** 2 for c in self.per_round_counts) / (self.rounds - 1)

    def stderr(self) -> float:
        return math.sqrt(self.variance() / self.rounds) if self.rounds else 0.0


def _reach_kernel(source: int, world: SampledWorld):
    return (0,), (len(reached_nodes(world, source)),)


def mcs_spread(
    graph: ProbGraph,
    rounds: int,
    stream: RngStream,
    source: Optional[int] = None,
    keep_counts: bool = False,
    workers: int = 1,
) -> SpreadEstimate:
    """Average reachable count over ``rounds`` independent sampled worlds."""
    if rounds <= 0:
        raise ValueError("MCS needs at least one round")
    if source is None:
        source = graph.source
    totals = run_worlds(
        graph,
        partial(_reach_kernel, source),
        1,
        rounds,
        stream,
        workers=workers,
        keep_rounds=keep_counts,
        phase="simulation",
    )
    total = int(totals.counts[0])
    per_round = tuple(int(c) for c in totals.per_round) if keep_counts else None
    return SpreadEstimate(total / rounds, rounds, total, per_round)


def evaluate_spread(
    graph: ProbGraph,
    stream: RngStream,
    rounds: int,
    mode: str = "auto",
    max_uncertain: int = DEFAULT_MAX_UNCERTAIN,
    workers: int = 1,
) -> Tuple[float, str]:
    """Expected spread of the original seed set, with the estimator used.

    ``mode`` is ``exact``, ``mcs`` or ``auto`` (exact when the enumeration
    fits under ``max_uncertain``). The unified-seed offset is added back.
    """
    if mode not in ("auto", "exact", "mcs"):
        raise ValueError(f"unknown evaluation mode: {mode}")
    if mode != "mcs":
        try:
            value = exact_spread(graph, max_uncertain=max_uncertain)
            return value + graph.spread_offset, "exact"
        except InfeasibleEnumeration:
            if mode == "exact":
                raise
            logger.info("exact spread infeasible, falling back to %d MCS rounds", rounds)
    estimate = mcs_spread(graph, rounds, stream, workers=workers)
    return estimate.mean + graph.spread_offset, "mcs"
