from __future__ import annotations

import logging
from typing import Iterable, List, Optional

from src.decrease.estimators import DEFAULT_THETA, decrease_table
from src.graphs.prob_graph import BlockKind, ProbGraph
from src.graphs.transforms import apply_blockers
from src.minimizers.base import BlockResult, CandidatePool, Minimizer
from src.utils.rng import RngStream
from src.utils.timing import Timer

logger = logging.getLogger(__name__)


class AdvancedGreedy(Minimizer):
    """Greedy blocking where each round prices all candidates with one decrease table."""

    def __init__(
        self,
        theta: int = DEFAULT_THETA,
        pool: Optional[Iterable[int]] = None,
        **kwargs,
    ) -> None:
        kwargs.setdefault("name", "AdvancedGreedy")
        super().__init__(**kwargs)
        self.theta = int(theta)
        self.pool = tuple(pool) if pool is not None else None
        self.rounds_used = self.theta

    def select(self, graph: ProbGraph, budget: int) -> List[int]:
        pool = self.pool or CandidatePool.for_graph(graph, self.kind).members
        chosen = greedy_rounds(self, graph, pool, budget, first_round=0)
        if budget > len(pool):
            self._warn(f"budget {budget} exceeds {len(pool)} candidates; blocking all")
        return chosen


def greedy_rounds(
    minimizer: Minimizer,
    graph: ProbGraph,
    pool: Iterable[int],
    budget: int,
    first_round: int,
    chosen: Optional[List[int]] = None,
    phase: str = "greedy",
) -> List[int]:
    """Commit up to ``budget`` argmax picks from ``pool`` on top of ``chosen``.

    Round k draws its worlds from ``stream.child("round", k)``; candidates
    with zero decrease still fill the budget, lowest id first.
    """
    chosen = list(chosen or [])
    taken = set(chosen)
    remaining = [c for c in pool if c not in taken]
    current = apply_blockers(graph, minimizer.kind, chosen)
    step = first_round
    while remaining and len(chosen) < budget:
        minimizer._check_deadline(chosen)
        table = decrease_table(
            current,
            minimizer.kind,
            minimizer.theta,  # type: ignore[attr-defined]
            minimizer.stream.child("round", step),
            workers=minimizer.workers,
        )
        minimizer.timing.merge(table.timing)
        minimizer.tables.append(table)
        with Timer() as timer:
            pick = table.argmax(remaining)
        minimizer.timing.record(timer.elapsed, "selection")
        if pick is None:
            break
        minimizer._record(graph, phase, pick, table)
        chosen.append(pick)
        remaining.remove(pick)
        current = apply_blockers(current, minimizer.kind, [pick])
        step += 1
    return chosen


def advanced_greedy(
    graph: ProbGraph,
    budget: int,
    theta: int = DEFAULT_THETA,
    stream: Optional[RngStream] = None,
    pool: Optional[Iterable[int]] = None,
    kind: BlockKind | str = BlockKind.NODE,
    **kwargs,
) -> BlockResult:
    return AdvancedGreedy(theta=theta, pool=pool, kind=kind, stream=stream, **kwargs).block(
        graph, budget
    )
