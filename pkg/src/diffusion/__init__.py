"""Live-edge world sampling, Monte-Carlo spread and the exact oracle."""

from .engine import RoundTotals, run_worlds
from .exact import DEFAULT_MAX_UNCERTAIN, exact_spread, relevant_uncertain_edges
from .sampling import (
    SampledWorld,
    draw_live,
    iter_worlds,
    reachable_count,
    reached_nodes,
    sample_world,
)
from .spread import SpreadEstimate, evaluate_spread, mcs_spread

__all__ = [
    "DEFAULT_MAX_UNCERTAIN",
    "RoundTotals",
    "SampledWorld",
    "SpreadEstimate",
    "draw_live",
    "evaluate_spread",
    "exact_spread",
    "iter_worlds",
    "mcs_spread",
    "reachable_count",
    "reached_nodes",
    "relevant_uncertain_edges",
    "run_worlds",
    "sample_world",
]
