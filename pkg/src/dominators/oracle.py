from __future__ import annotations

from typing import Dict, List, Set

from src.dominators.tree import FlowGraph

MAX_ORACLE_NODES = 200


def _reachable(graph: FlowGraph, source: int, removed: int = -1) -> Set[int]:
    if source == removed:
        return set()
    seen = {source}
    order = [source]
    for u in order:
        for v in graph.successors(u):
            if v != removed and v not in seen:
                seen.add(v)
                order.append(v)
    return seen


def brute_force_idom(graph: FlowGraph, source: int) -> Dict[int, int]:
    """Immediate dominators straight from the definition (test oracle).

    u dominates v when v is unreachable from the source once u is removed;
    strict dominators form a chain and the idom is its lowest member.
    """
    reach = _reachable(graph, source)
    if len(reach) > MAX_ORACLE_NODES:
        raise ValueError(
            f"brute-force oracle limited to {MAX_ORACLE_NODES} reachable nodes"
        )
    cut_off: Dict[int, Set[int]] = {u: reach - _reachable(graph, source, u) for u in reach}
    strict: Dict[int, List[int]] = {v: [] for v in reach}
    for u, lost in cut_off.items():
        for v in lost:
            if v != u:
                strict[v].append(u)
    return {
        v: max(doms, key=lambda d: len(strict[d]))
        for v, doms in strict.items()
        if v != source
    }
