from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import Dict, Iterable, List, Tuple, Union

import numpy as np

from src.errors import GraphError
from src.graphs.prob_graph import LT_TOLERANCE, BlockKind, DiffusionModel, Edge, ProbGraph

logger = logging.getLogger(__name__)

Member = Union[int, Edge]


@dataclass(frozen=True)
class BlockSet:
    """Chosen blockers: node ids, or edge ids for the edge strategy.

    Members keep insertion order; edge members are edge indices of the
    graph they were chosen on.
    """

    kind: BlockKind
    members: Tuple[int, ...]
    budget: int

    def __post_init__(self) -> None:
        if self.budget < 0:
            raise ValueError("budget must be non-negative")
        if len(self.members) > self.budget:
            raise ValueError(
                f"{len(self.members)} blockers exceed the budget of {self.budget}"
            )
        if len(set(self.members)) != len(self.members):
            raise ValueError("blockers must be distinct")

    def __len__(self) -> int:
        return len(self.members)

    def describe(self, graph: ProbGraph) -> List[str]:
        if self.kind is BlockKind.NODE:
            return [graph.label(u) for u in self.members]
        return [graph.edge_label(e) for e in self.members]


def unify_seeds(graph: ProbGraph) -> ProbGraph:
    """Merge every seed into one new source node s' (appended last).

    Seed out-edges into the same node u collapse into one edge (s', u) with
    probability 1 - prod(1 - p_i) under IC and sum(p_i) under LT; edges into
    seeds are dropped. The spread offset grows by |S| - 1 so that spreads
    measured from s' translate back to spreads of the original seed set.
    """
    seeds = sorted(set(graph.seeds))
    if not seeds:
        raise GraphError("cannot unify an empty seed set")
    if len(seeds) == 1:
        return graph

    seed_set = set(seeds)
    keep = [v for v in range(graph.n) if v not in seed_set]
    new_id = {v: i for i, v in enumerate(keep)}
    unified = len(keep)

    src: List[int] = []
    dst: List[int] = []
    prob: List[float] = []
    removed: List[bool] = []
    merged: Dict[int, float] = {}
    lt = graph.model is DiffusionModel.LT

    for e in range(graph.m):
        u, v = int(graph.src[e]), int(graph.dst[e])
        if v in seed_set:
            continue
        p = float(graph.prob[e])
        if u in seed_set:
            if graph.edge_removed[e]:
                continue
            if lt:
                merged[v] = merged.get(v, 0.0) + p
            else:
                merged[v] = merged.get(v, 1.0) * (1.0 - p)
            continue
        src.append(new_id[u])
        dst.append(new_id[v])
        prob.append(p)
        removed.append(bool(graph.edge_removed[e]))

    for v in sorted(merged, key=new_id.__getitem__):
        p = merged[v] if lt else 1.0 - merged[v]
        if lt and p > 1.0 + LT_TOLERANCE:
            raise GraphError(
                f"LT merge overflow: seed in-edges of {graph.label(v)} sum to {p:.6f}"
            )
        src.append(unified)
        dst.append(new_id[v])
        prob.append(p)
        removed.append(False)

    labels = tuple(graph.labels[v] for v in keep) + ("+".join(graph.labels[s] for s in seeds),)
    node_removed = np.append(graph.node_removed[keep], False)
    logger.debug("unified %d seeds into node %d (%d merged edges)", len(seeds), unified, len(merged))
    return ProbGraph(
        n=unified + 1,
        src=np.array(src, dtype=np.int64),
        dst=np.array(dst, dtype=np.int64),
        prob=np.array(prob, dtype=np.float64),
        seeds=(unified,),
        model=graph.model,
        labels=labels,
        node_removed=node_removed,
        edge_removed=np.array(removed, dtype=bool),
        spread_offset=graph.spread_offset + len(seeds) - 1,
    )


def remove_nodes(graph: ProbGraph, blockers: Iterable[int]) -> ProbGraph:
    """Block nodes: every edge touching them stops propagating."""
    nodes = sorted(set(int(u) for u in blockers))
    if not nodes:
        return graph
    if any(u < 0 or u >= graph.n for u in nodes):
        raise GraphError(f"blocker outside node range: {nodes}")
    clash = set(nodes) & set(graph.seeds)
    if clash:
        raise GraphError(f"seeds cannot be blocked: {sorted(clash)}")
    mask = graph.node_removed.copy()
    mask[nodes] = True
    return replace(graph, node_removed=mask)


def remove_edges(graph: ProbGraph, blockers: Iterable[Edge]) -> ProbGraph:
    """Block edges given as ``(src, dst)`` pairs."""
    ids = []
    for pair in blockers:
        key = (int(pair[0]), int(pair[1]))
        if key not in graph.edge_index:
            raise GraphError(f"edge {key} is not in the graph")
        ids.append(graph.edge_index[key])
    return remove_edge_ids(graph, ids)


def remove_edge_ids(graph: ProbGraph, edge_ids: Iterable[int]) -> ProbGraph:
    ids = sorted(set(int(e) for e in edge_ids))
    if not ids:
        return graph
    if any(e < 0 or e >= graph.m for e in ids):
        raise GraphError(f"edge id outside [0, {graph.m}): {ids}")
    mask = graph.edge_removed.copy()
    mask[ids] = True
    return replace(graph, edge_removed=mask)


def apply_blockers(graph: ProbGraph, kind: BlockKind, members: Iterable[int]) -> ProbGraph:
    if BlockKind(kind) is BlockKind.NODE:
        return remove_nodes(graph, members)
    return remove_edge_ids(graph, members)
