"""Blocker-selection algorithms: greedy family, heuristics and exhaustive search."""

from .advanced import AdvancedGreedy, advanced_greedy
from .base import BlockResult, CandidatePool, Minimizer, RoundTrace
from .baseline import BaselineGreedy, baseline_greedy
from .exact import ExactSearch, exact_search
from .factory import ALGORITHMS, create_minimizer
from .heuristics import OutDegreeBlocker, RandomBlocker, heuristic_outdegree, heuristic_random
from .replace import GreedyReplace, greedy_replace, heuristic_out_neighbors

__all__ = [
    "ALGORITHMS",
    "AdvancedGreedy",
    "BaselineGreedy",
    "BlockResult",
    "CandidatePool",
    "ExactSearch",
    "GreedyReplace",
    "Minimizer",
    "OutDegreeBlocker",
    "RandomBlocker",
    "RoundTrace",
    "advanced_greedy",
    "baseline_greedy",
    "create_minimizer",
    "exact_search",
    "greedy_replace",
    "heuristic_out_neighbors",
    "heuristic_outdegree",
    "heuristic_random",
]
