from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, List, Optional, Tuple

import numpy as np

from src.graphs.prob_graph import DiffusionModel, ProbGraph
from src.utils.rng import BLOCK_ROUNDS, RngStream, block_spans

# Upper bound on uniforms drawn per batch; bounds memory of the live matrix.
BATCH_CELLS = 1 << 22


@dataclass(frozen=True, eq=False)
class SampledWorld:
    """One live-edge instantiation of a ProbGraph.

    ``live`` is aligned with the parent's edge indices; blocked edges and
    edges touching blocked nodes are never live.
    """

    graph: ProbGraph
    live: np.ndarray
    round_seed: int = 0

    @cached_property
    def live_list(self) -> List[bool]:
        return self.live.tolist()

    @property
    def node_count(self) -> int:
        return self.graph.n

    @property
    def live_edge_count(self) -> int:
        return int(np.count_nonzero(self.live))

    def successors(self, u: int) -> List[int]:
        live = self.live_list
        dst = self.graph.dst_list
        return [dst[e] for e in self.graph.out_edges[u] if live[e]]

    def live_edge_ids(self) -> List[int]:
        return np.flatnonzero(self.live).tolist()

    def live_in_degree(self) -> np.ndarray:
        return np.bincount(self.graph.dst[self.live], minlength=self.graph.n)


def draw_width(graph: ProbGraph) -> int:
    """Uniforms per world: one per edge under IC, one per node under LT."""
    return graph.m if graph.model is DiffusionModel.IC else graph.n


def draw_live(graph: ProbGraph, uniforms: np.ndarray) -> np.ndarray:
    """Turn a (k, width) matrix of uniforms into a (k, m) live-edge matrix."""
    uniforms = np.atleast_2d(uniforms)
    if graph.model is DiffusionModel.IC:
        live = uniforms < graph.prob
    else:
        order, lower, upper = graph.lt_bounds
        u = uniforms[:, graph.dst[order]]
        chosen = (u >= lower) & (u < upper)
        live = np.empty_like(chosen)
        live[:, order] = chosen
    return live & graph.active


def round_uniforms(seed: int, width: int) -> np.ndarray:
    return np.random.default_rng(int(seed)).random(width)


def sample_world(graph: ProbGraph, rng: np.random.Generator | int) -> SampledWorld:
    """Draw a single world; an integer ``rng`` is used as the round seed.

    A world yielded by :func:`iter_worlds` is reproduced by passing its
    ``round_seed`` back in.
    """
    width = draw_width(graph)
    if isinstance(rng, np.random.Generator):
        return SampledWorld(graph, draw_live(graph, rng.random((1, width)))[0])
    seed = int(rng)
    return SampledWorld(graph, draw_live(graph, round_uniforms(seed, width))[0], seed)


def iter_live_batches(
    graph: ProbGraph, stream: RngStream, rounds: int, start: int = 0
) -> Iterator[Tuple[int, np.ndarray]]:
    """Yield ``(first_round, live_matrix)`` batches covering rounds [start, start+rounds).

    Round i is drawn from ``stream.round_seed(i)``, so any batching gives
    the same worlds.
    """
    width = draw_width(graph)
    step = max(1, BATCH_CELLS // max(width, 1))
    for block, row0, row1 in block_spans(start, start + rounds):
        seeds = stream.block_seeds(block)
        for a in range(row0, row1, step):
            b = min(row1, a + step)
            uniforms = np.empty((b - a, width))
            for i, seed in enumerate(seeds[a:b]):
                uniforms[i] = round_uniforms(seed, width)
            yield block * BLOCK_ROUNDS + a, draw_live(graph, uniforms)


def iter_worlds(
    graph: ProbGraph, stream: RngStream, rounds: int, start: int = 0
) -> Iterator[SampledWorld]:
    for first, batch in iter_live_batches(graph, stream, rounds, start):
        seeds = stream.block_seeds(first // BLOCK_ROUNDS)
        row = first % BLOCK_ROUNDS
        for offset, live in enumerate(batch):
            yield SampledWorld(graph, live, int(seeds[row + offset]))


def reached_nodes(
    world: SampledWorld,
    source: int,
    skip_node: int = -1,
    skip_edge: int = -1,
) -> List[int]:
    """Nodes reachable from ``source`` over live edges, in BFS order.

    ``skip_node`` / ``skip_edge`` evaluate the same world with one extra
    blocker without building a new graph.
    """
    graph = world.graph
    out_edges = graph.out_edges
    dst = graph.dst_list
    live = world.live_list
    seen = bytearray(graph.n)
    seen[source] = 1
    if 0 <= skip_node < graph.n:
        seen[skip_node] = 1
    order = [source]
    for u in order:
        for e in out_edges[u]:
            if live[e] and e != skip_edge:
                v = dst[e]
                if not seen[v]:
                    seen[v] = 1
                    order.append(v)
    return order


def reachable_count(world: SampledWorld, source: Optional[int] = None) -> int:
    """Number of nodes reachable from ``source`` (default: the graph's seed), itself included."""
    if source is None:
        source = world.graph.source
    return len(reached_nodes(world, source))
