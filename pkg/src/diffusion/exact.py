from __future__ import annotations

import logging
from typing import List, Optional

from src.errors import InfeasibleEnumeration
from src.graphs.prob_graph import DiffusionModel, ProbGraph

logger = logging.getLogger(__name__)

DEFAULT_MAX_UNCERTAIN = 25


def relevant_uncertain_edges(graph: ProbGraph, source: int) -> List[int]:
    """Active edges with 0 < p < 1 whose tail can be reached from ``source``."""
    active = graph.active.tolist()
    prob = graph.prob.tolist()
    dst = graph.dst_list
    seen = bytearray(graph.n)
    seen[source] = 1
    order = [source]
    uncertain: List[int] = []
    for u in order:
        for e in graph.out_edges[u]:
            if not active[e] or prob[e] <= 0.0:
                continue
            if prob[e] < 1.0:
                uncertain.append(e)
            v = dst[e]
            if not seen[v]:
                seen[v] = 1
                order.append(v)
    return uncertain


def exact_spread(
    graph: ProbGraph,
    source: Optional[int] = None,
    max_uncertain: int = DEFAULT_MAX_UNCERTAIN,
) -> float:
    """Exact expected spread from ``source`` by enumerating uncertain edges.

    Edges with p = 1 are followed without branching; only uncertain edges
    whose tail is reached get enumerated, so the work is bounded by
    2^(relevant uncertain edges). The unified-seed offset is not included.
    """
    if source is None:
        source = graph.source
    uncertain = relevant_uncertain_edges(graph, source)
    if len(uncertain) > max_uncertain:
        raise InfeasibleEnumeration(
            f"exact enumeration infeasible: {len(uncertain)} uncertain edges "
            f"exceed the cap of {max_uncertain}"
        )
    if graph.model is DiffusionModel.LT:
        return _lt_path_sum(graph, source)
    return _ic_enumerate(graph, source)


def _ic_enumerate(graph: ProbGraph, source: int) -> float:
    active = graph.active.tolist()
    prob = graph.prob.tolist()
    dst = graph.dst_list
    out_edges = graph.out_edges

    def close(reached: bytearray, start: int, pending: list) -> int:
        added = 0
        stack = [start]
        while stack:
            u = stack.pop()
            for e in out_edges[u]:
                if not active[e] or prob[e] <= 0.0:
                    continue
                v = dst[e]
                if reached[v]:
                    continue
                if prob[e] >= 1.0:
                    reached[v] = 1
                    added += 1
                    stack.append(v)
                else:
                    pending.append(e)
        return added

    reached = bytearray(graph.n)
    reached[source] = 1
    pending: list = []
    count = 1 + close(reached, source, pending)

    total = 0.0
    # Each frame: reached set, its size, undecided edges, path probability.
    frames = [(reached, count, pending, 1.0)]
    while frames:
        reached, count, pending, weight = frames.pop()
        while pending and reached[dst[pending[-1]]]:
            pending = pending[:-1]
        if not pending:
            total += weight * count
            continue
        e = pending[-1]
        rest = pending[:-1]
        p = prob[e]
        frames.append((reached, count, rest, weight * (1.0 - p)))
        grown = bytearray(reached)
        v = dst[e]
        grown[v] = 1
        more = list(rest)
        added = 1 + close(grown, v, more)
        frames.append((grown, count + added, more, weight * p))
    return total


def _lt_path_sum(graph: ProbGraph, source: int) -> float:
    # Each node keeps at most one live in-edge, so a node is reached exactly
    # when its parent chain is a simple path from the source; chains are
    # disjoint events, hence the spread is a sum over simple paths.
    active = graph.active.tolist()
    prob = graph.prob.tolist()
    dst = graph.dst_list
    out_edges = graph.out_edges
    on_path = bytearray(graph.n)
    on_path[source] = 1
    total = 1.0
    stack = [(source, 1.0, iter(out_edges[source]))]
    while stack:
        u, weight, edges = stack[-1]
        advanced = False
        for e in edges:
            if not active[e] or prob[e] <= 0.0:
                continue
            v = dst[e]
            if on_path[v]:
                continue
            w = weight * prob[e]
            total += w
            on_path[v] = 1
            stack.append((v, w, iter(out_edges[v])))
            advanced = True
            break
        if not advanced:
            stack.pop()
            if u != source:
                on_path[u] = 0
    return total
