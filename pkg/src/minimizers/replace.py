from __future__ import annotations

import logging
from typing import List, Optional

from src.decrease.estimators import DEFAULT_THETA, decrease_table
from src.graphs.prob_graph import BlockKind, ProbGraph
from src.graphs.transforms import apply_blockers
from src.minimizers.advanced import greedy_rounds
from src.minimizers.base import BlockResult, CandidatePool, Minimizer
from src.utils.rng import RngStream
from src.utils.timing import Timer

logger = logging.getLogger(__name__)


class GreedyReplace(Minimizer):
    """Start from the seed's out-neighbours, then try to swap each blocker out.

    Phase 1 greedily blocks up to ``budget`` out-neighbours (out-edges for the
    edge strategy). Phase 2 revisits the blockers in reverse insertion order,
    frees one, and re-inserts the best candidate over the whole pool; the
    first time the freed blocker wins again the replacement stops.
    ``top_up`` spends budget left over after phase 2 on further greedy rounds.
    """

    def __init__(
        self,
        theta: int = DEFAULT_THETA,
        replace: bool = True,
        top_up: bool = False,
        **kwargs,
    ) -> None:
        kwargs.setdefault("name", "GreedyReplace" if replace else "OutNeighbors")
        super().__init__(**kwargs)
        self.theta = int(theta)
        self.replace = replace
        self.top_up = top_up
        self.rounds_used = self.theta

    def _first_pool(self, graph: ProbGraph) -> List[int]:
        s = graph.source
        if self.kind is BlockKind.NODE:
            return sorted(set(graph.out_neighbors(s)) - set(graph.seeds))
        active = graph.active
        return [e for e in graph.out_edges[s] if active[e]]

    def select(self, graph: ProbGraph, budget: int) -> List[int]:
        first_pool = self._first_pool(graph)
        if not first_pool:
            self._warn("source has no out-neighbours; nothing to block")
            return []
        if budget > len(first_pool) and not self.top_up:
            self._warn(
                f"only {len(first_pool)} out-neighbour candidates for a budget of {budget}"
            )
        chosen = greedy_rounds(self, graph, first_pool, budget, first_round=0, phase="greedy")
        step = len(chosen)

        if self.replace:
            pool = CandidatePool.for_graph(graph, self.kind).members
            for i in reversed(range(len(chosen))):
                self._check_deadline(chosen)
                freed = chosen[i]
                others = chosen[:i] + chosen[i + 1 :]
                current = apply_blockers(graph, self.kind, others)
                table = decrease_table(
                    current,
                    self.kind,
                    self.theta,
                    self.stream.child("round", step),
                    workers=self.workers,
                )
                self.timing.merge(table.timing)
                self.tables.append(table)
                step += 1
                taken = set(others)
                with Timer() as timer:
                    best = table.argmax(c for c in pool if c not in taken)
                self.timing.record(timer.elapsed, "selection")
                if best is None:
                    break
                chosen[i] = best
                self._record(graph, "replace", best, table)
                if best == freed:
                    break

        if self.top_up and len(chosen) < budget:
            pool = CandidatePool.for_graph(graph, self.kind).members
            chosen = greedy_rounds(
                self, graph, pool, budget, first_round=step, chosen=chosen, phase="top-up"
            )
        return chosen


def greedy_replace(
    graph: ProbGraph,
    budget: int,
    theta: int = DEFAULT_THETA,
    stream: Optional[RngStream] = None,
    kind: BlockKind | str = BlockKind.NODE,
    top_up: bool = False,
    **kwargs,
) -> BlockResult:
    return GreedyReplace(theta=theta, top_up=top_up, kind=kind, stream=stream, **kwargs).block(
        graph, budget
    )


def heuristic_out_neighbors(
    graph: ProbGraph,
    budget: int,
    theta: int = DEFAULT_THETA,
    stream: Optional[RngStream] = None,
    kind: BlockKind | str = BlockKind.NODE,
    **kwargs,
) -> BlockResult:
    """Greedy choice restricted to the seed's out-neighbours, no replacement."""
    return GreedyReplace(theta=theta, replace=False, kind=kind, stream=stream, **kwargs).block(
        graph, budget
    )
