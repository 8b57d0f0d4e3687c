from __future__ import annotations

import logging
from itertools import combinations
from math import comb
from typing import List, Optional, Tuple

from src.diffusion.exact import DEFAULT_MAX_UNCERTAIN, exact_spread
from src.diffusion.spread import mcs_spread
from src.errors import InfeasibleEnumeration
from src.graphs.prob_graph import BlockKind, ProbGraph
from src.graphs.transforms import apply_blockers
from src.minimizers.base import BlockResult, CandidatePool, Minimizer
from src.utils.timing import Timer

logger = logging.getLogger(__name__)

DEFAULT_MAX_COMBINATIONS = 1_000_000
TIE_TOLERANCE = 1e-9
# Sets scored between deadline checks.
DEADLINE_STRIDE = 64


class ExactSearch(Minimizer):
    """Evaluate every blocker set of size at most b and keep the best.

    ``estimator="exact"`` scores sets with the exact oracle; ``"mcs"`` uses
    ``rounds`` Monte-Carlo worlds shared by every set. Ties go to the set
    enumerated first (smaller, then lexicographically smaller).
    """

    def __init__(
        self,
        estimator: str = "exact",
        rounds: int = 10_000,
        max_combinations: int = DEFAULT_MAX_COMBINATIONS,
        **kwargs,
    ) -> None:
        kwargs.setdefault("name", "Exact")
        super().__init__(**kwargs)
        if estimator not in ("exact", "mcs"):
            raise ValueError(f"unknown estimator: {estimator}")
        self.estimator = estimator
        self.rounds = int(rounds)
        self.max_combinations = int(max_combinations)
        self.rounds_used = 0 if estimator == "exact" else self.rounds
        self.best_spread: Optional[float] = None

    def _score(self, graph: ProbGraph, members: Tuple[int, ...]) -> float:
        blocked = apply_blockers(graph, self.kind, members)
        if self.estimator == "exact":
            return exact_spread(blocked, max_uncertain=self.max_uncertain)
        return mcs_spread(blocked, self.rounds, self.stream.child("exact")).mean

    def select(self, graph: ProbGraph, budget: int) -> List[int]:
        pool = sorted(CandidatePool.for_graph(graph, self.kind).members)
        size = min(budget, len(pool))
        total = sum(comb(len(pool), k) for k in range(size + 1))
        if total > self.max_combinations:
            raise InfeasibleEnumeration(
                f"exhaustive search over {total} blocker sets exceeds the cap of "
                f"{self.max_combinations}"
            )
        best: Tuple[int, ...] = ()
        best_value = self._score(graph, best)
        for k in range(1, size + 1):
            with Timer() as timer:
                for i, members in enumerate(combinations(pool, k)):
                    if i % DEADLINE_STRIDE == 0:
                        self._check_deadline(list(best))
                    value = self._score(graph, members)
                    if value < best_value - TIE_TOLERANCE:
                        best, best_value = members, value
            self.timing.record(timer.elapsed, "evaluation")
        logger.debug("exact search scored %d sets, best %.6f", total, best_value)
        self.best_spread = best_value + graph.spread_offset
        for c in best:
            self._record(graph, "exhaustive", c)
        return list(best)

    def block(self, graph: ProbGraph, budget: int, evaluate: bool = True) -> BlockResult:
        self.best_spread = None
        result = super().block(graph, budget, evaluate=False)
        if self.best_spread is None:
            self.best_spread = self._score(graph, ()) + graph.spread_offset
        result.residual_spread = self.best_spread
        result.estimator = self.estimator
        return result


def exact_search(
    graph: ProbGraph,
    budget: int,
    kind: BlockKind | str = BlockKind.NODE,
    estimator: str = "exact",
    max_uncertain: int = DEFAULT_MAX_UNCERTAIN,
    **kwargs,
) -> BlockResult:
    return ExactSearch(
        estimator=estimator, kind=kind, max_uncertain=max_uncertain, **kwargs
    ).block(graph, budget)
