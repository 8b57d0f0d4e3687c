from __future__ import annotations

from typing import List, Optional

from src.graphs.prob_graph import BlockKind, ProbGraph
from src.minimizers.base import BlockResult, CandidatePool, Minimizer
from src.utils.rng import RngStream


class RandomBlocker(Minimizer):
    """Uniform sample of blockers without replacement (seeds excluded)."""

    def __init__(self, **kwargs) -> None:
        kwargs.setdefault("name", "Random")
        super().__init__(**kwargs)

    def select(self, graph: ProbGraph, budget: int) -> List[int]:
        pool = CandidatePool.for_graph(graph, self.kind).members
        gen = self.stream.child("random").generator()
        picks = gen.choice(len(pool), size=min(budget, len(pool)), replace=False)
        chosen = [pool[int(i)] for i in picks]
        for c in chosen:
            self._record(graph, "random", c)
        return chosen


class OutDegreeBlocker(Minimizer):
    """Highest out-degree nodes; for edges, edges whose head has the highest out-degree."""

    def __init__(self, **kwargs) -> None:
        kwargs.setdefault("name", "OutDegree")
        super().__init__(**kwargs)

    def select(self, graph: ProbGraph, budget: int) -> List[int]:
        pool = CandidatePool.for_graph(graph, self.kind).members
        degree = graph.out_degree
        if self.kind is BlockKind.NODE:
            ranked = sorted(pool, key=lambda u: (-int(degree[u]), u))
        else:
            ranked = sorted(pool, key=lambda e: (-int(degree[graph.dst[e]]), e))
        chosen = ranked[:budget]
        for c in chosen:
            score = degree[c] if self.kind is BlockKind.NODE else degree[graph.dst[c]]
            self._record(graph, "degree", c, delta=float(score))
        return chosen


def heuristic_random(
    graph: ProbGraph,
    budget: int,
    stream: Optional[RngStream] = None,
    kind: BlockKind | str = BlockKind.NODE,
    **kwargs,
) -> BlockResult:
    return RandomBlocker(kind=kind, stream=stream, **kwargs).block(graph, budget)


def heuristic_outdegree(
    graph: ProbGraph,
    budget: int,
    kind: BlockKind | str = BlockKind.NODE,
    **kwargs,
) -> BlockResult:
    return OutDegreeBlocker(kind=kind, **kwargs).block(graph, budget)
