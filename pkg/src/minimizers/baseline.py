from __future__ import annotations

import logging
from functools import partial
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.decrease.table import DecreaseTable
from src.diffusion.engine import run_worlds
from src.diffusion.sampling import SampledWorld, reached_nodes
from src.diffusion.spread import mcs_spread
from src.graphs.prob_graph import BlockKind, ProbGraph
from src.graphs.transforms import apply_blockers
from src.minimizers.base import BlockResult, CandidatePool, Minimizer
from src.utils.rng import RngStream
from src.utils.timing import Timer

logger = logging.getLogger(__name__)

DEFAULT_MCS_ROUNDS = 10_000


def _node_loss_kernel(source: int, candidates: Tuple[int, ...], world: SampledWorld):
    base = reached_nodes(world, source)
    reached = set(base)
    idx, vals = [], []
    for c in candidates:
        if c in reached:
            idx.append(c)
            vals.append(len(base) - len(reached_nodes(world, source, skip_node=c)))
    return idx, vals


def _edge_loss_kernel(source: int, candidates: Tuple[int, ...], world: SampledWorld):
    base = reached_nodes(world, source)
    reached = set(base)
    live = world.live_list
    src = world.graph.src
    idx, vals = [], []
    for e in candidates:
        if live[e] and int(src[e]) in reached:
            idx.append(e)
            vals.append(len(base) - len(reached_nodes(world, source, skip_edge=e)))
    return idx, vals


class BaselineGreedy(Minimizer):
    """Greedy blocking that re-simulates the spread for every candidate.

    With ``common_random_numbers`` every candidate of round k is scored on the
    same worlds (``stream.child("round", k)``), which are also the worlds
    AdvancedGreedy uses in that round; otherwise each candidate gets fresh
    Monte-Carlo rounds.
    """

    def __init__(
        self,
        rounds: int = DEFAULT_MCS_ROUNDS,
        common_random_numbers: bool = True,
        **kwargs,
    ) -> None:
        kwargs.setdefault("name", "BaselineGreedy")
        super().__init__(**kwargs)
        self.rounds = int(rounds)
        self.common_random_numbers = common_random_numbers
        self.rounds_used = self.rounds

    def select(self, graph: ProbGraph, budget: int) -> List[int]:
        pool = list(CandidatePool.for_graph(graph, self.kind).members)
        if budget > len(pool):
            self._warn(f"budget {budget} exceeds {len(pool)} candidates; blocking all")
        chosen: List[int] = []
        current = graph
        step = 0
        while pool and len(chosen) < budget:
            self._check_deadline(chosen)
            stream = self.stream.child("round", step)
            if self.common_random_numbers:
                table = self._shared_world_table(current, pool, stream)
                self.tables.append(table)
                self.timing.merge(table.timing)
                with Timer() as timer:
                    pick = table.argmax(pool)
                self.timing.record(timer.elapsed, "selection")
                self._record(graph, "greedy", pick, table)
            else:
                with Timer() as timer:
                    pick, decrease = self._fresh_world_pick(current, pool, stream, chosen)
                self.timing.record(timer.elapsed, "simulation")
                self._record(graph, "greedy", pick, delta=decrease)
            chosen.append(pick)
            pool.remove(pick)
            current = apply_blockers(current, self.kind, [pick])
            step += 1
        return chosen

    def _shared_world_table(
        self, graph: ProbGraph, pool: Sequence[int], stream: RngStream
    ) -> DecreaseTable:
        kernel = _node_loss_kernel if self.kind is BlockKind.NODE else _edge_loss_kernel
        size = graph.n if self.kind is BlockKind.NODE else graph.m
        totals = run_worlds(
            graph,
            partial(kernel, graph.source, tuple(pool)),
            size,
            self.rounds,
            stream,
            workers=self.workers,
            phase="simulation",
        )
        names = graph.labels if self.kind is BlockKind.NODE else tuple(
            graph.edge_label(e) for e in range(graph.m)
        )
        excluded = frozenset(range(size)) - frozenset(pool)
        return DecreaseTable(
            self.kind, self.rounds, totals.counts, names, excluded, totals.timing
        )

    def _fresh_world_pick(
        self,
        graph: ProbGraph,
        pool: Sequence[int],
        stream: RngStream,
        chosen: Sequence[int],
    ) -> Tuple[int, float]:
        base = mcs_spread(graph, self.rounds, stream.child("base"), workers=self.workers).mean
        best, best_decrease = pool[0], -np.inf
        for c in sorted(pool):
            self._check_deadline(chosen)
            spread = mcs_spread(
                apply_blockers(graph, self.kind, [c]),
                self.rounds,
                stream.child("candidate", c),
                workers=self.workers,
            ).mean
            if base - spread > best_decrease:
                best, best_decrease = c, base - spread
        return best, float(best_decrease)


def baseline_greedy(
    graph: ProbGraph,
    budget: int,
    rounds: int = DEFAULT_MCS_ROUNDS,
    stream: Optional[RngStream] = None,
    kind: BlockKind | str = BlockKind.NODE,
    common_random_numbers: bool = True,
    **kwargs,
) -> BlockResult:
    return BaselineGreedy(
        rounds=rounds,
        common_random_numbers=common_random_numbers,
        kind=kind,
        stream=stream,
        **kwargs,
    ).block(graph, budget)
