from __future__ import annotations

from typing import Dict

import numpy as np

from src.dominators.tree import DomTree, FlowGraph
from src.errors import GraphError


def build_lt(graph: FlowGraph, source: int, check: bool = True) -> DomTree:
    """Dominator tree of a world where every node has at most one live in-edge.

    The unique live in-neighbour is the immediate dominator, so a BFS from
    ``source`` builds the tree in O(m). ``check`` rejects worlds that break
    the in-degree condition.
    """
    if check and hasattr(graph, "live_in_degree"):
        indeg = graph.live_in_degree()
        crowded = np.flatnonzero(indeg > 1)
        if len(crowded):
            raise GraphError(
                f"not an LT world: node {int(crowded[0])} has {int(indeg[crowded[0]])} live in-edges"
            )
    idom: Dict[int, int] = {}
    order = [source]
    for u in order:
        for v in graph.successors(u):
            if v == source:
                continue
            if v in idom:
                if check:
                    raise GraphError(f"not an LT world: node {v} has two live in-edges")
                continue
            idom[v] = u
            order.append(v)
    return DomTree(root=source, idom=idom, order=tuple(order))
