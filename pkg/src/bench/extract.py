from __future__ import annotations

import logging
from typing import List, Set

import numpy as np

from src.graphs.prob_graph import BlockKind, ProbGraph
from src.utils.rng import RngStream

logger = logging.getLogger(__name__)


def induced_subgraph(graph: ProbGraph, nodes: Set[int]) -> ProbGraph:
    """Subgraph on ``nodes`` with every active edge between them.

    Node order, edge order, labels and probabilities follow ``graph``;
    seeds outside ``nodes`` are dropped.
    """
    keep = sorted(nodes)
    new_id = {v: i for i, v in enumerate(keep)}
    edges = [
        e
        for e in graph.active_edge_ids()
        if int(graph.src[e]) in new_id and int(graph.dst[e]) in new_id
    ]
    return ProbGraph(
        n=len(keep),
        src=np.array([new_id[int(graph.src[e])] for e in edges], dtype=np.int64),
        dst=np.array([new_id[int(graph.dst[e])] for e in edges], dtype=np.int64),
        prob=graph.prob[edges],
        seeds=tuple(new_id[s] for s in graph.seeds if s in new_id),
        model=graph.model,
        labels=tuple(graph.labels[v] for v in keep),
    )


def _edge_count(graph: ProbGraph, nodes: Set[int]) -> int:
    return sum(
        1
        for e in graph.active_edge_ids()
        if int(graph.src[e]) in nodes and int(graph.dst[e]) in nodes
    )


def extract_subgraph(
    graph: ProbGraph,
    target: int,
    stream: RngStream,
    by: BlockKind | str = BlockKind.NODE,
) -> ProbGraph:
    """Grow a node set by random picks plus their neighbourhoods.

    Each step adds a random node not yet included together with all of its
    in- and out-neighbours; growth stops once the set holds ``target`` nodes
    (or its induced subgraph ``target`` edges) or more.
    """
    by = BlockKind(by)
    limit = graph.n if by is BlockKind.NODE else graph.m
    if target >= limit:
        return graph
    neighbours: List[Set[int]] = [set() for _ in range(graph.n)]
    for e in graph.active_edge_ids():
        u, v = int(graph.src[e]), int(graph.dst[e])
        neighbours[u].add(v)
        neighbours[v].add(u)

    gen = stream.generator()
    chosen: Set[int] = set()
    remaining = [u for u in range(graph.n) if not graph.node_removed[u]]
    while remaining:
        pick = remaining[int(gen.integers(len(remaining)))]
        chosen.add(pick)
        chosen |= neighbours[pick]
        remaining = [u for u in remaining if u not in chosen]
        size = len(chosen) if by is BlockKind.NODE else _edge_count(graph, chosen)
        if size >= target:
            break
    logger.info("extracted %d of %d nodes", len(chosen), graph.n)
    return induced_subgraph(graph, chosen)
