from __future__ import annotations

import logging
from functools import partial
from typing import Optional

from src.decrease.edge_world import EdgeSampledWorld
from src.decrease.table import DecreaseTable
from src.diffusion.engine import run_worlds
from src.diffusion.sampling import SampledWorld
from src.dominators.lengauer_tarjan import build_lengauer_tarjan
from src.dominators.linear import build_lt
from src.dominators.tree import DomTree, FlowGraph, subtree_sizes
from src.graphs.prob_graph import BlockKind, DiffusionModel, ProbGraph
from src.utils.rng import RngStream

logger = logging.getLogger(__name__)

DEFAULT_THETA = 10_000


def _tree(world: FlowGraph, source: int, lt: bool) -> DomTree:
    if lt:
        return build_lt(world, source, check=False)
    return build_lengauer_tarjan(world, source)


def _node_kernel(source: int, lt: bool, world: SampledWorld):
    sizes = subtree_sizes(_tree(world, source, lt))
    del sizes[source]
    return list(sizes), list(sizes.values())


def _edge_kernel(source: int, lt: bool, world: SampledWorld):
    split = EdgeSampledWorld(world)
    # Original nodes keep at most one in-edge after the split, so LT worlds
    # stay on the linear path.
    sizes = subtree_sizes(_tree(split, source, lt), counted=split.original_nodes.__contains__)
    idx, vals = [], []
    for x, size in sizes.items():
        if split.is_virtual(x):
            idx.append(split.edge_of(x))
            vals.append(size)
    return idx, vals


def desc(
    graph: ProbGraph,
    theta: int,
    stream: RngStream,
    source: Optional[int] = None,
    workers: int = 1,
) -> DecreaseTable:
    """Decrease in expected spread for blocking each node, from θ worlds.

    Blocking u removes exactly the subtree of u in a world's dominator tree,
    so one tree per world prices every candidate at once.
    """
    if theta <= 0:
        raise ValueError("theta must be positive")
    if source is None:
        source = graph.source
    lt = graph.model is DiffusionModel.LT
    totals = run_worlds(
        graph,
        partial(_node_kernel, source, lt),
        graph.n,
        theta,
        stream,
        workers=workers,
        phase="dominator",
    )
    excluded = frozenset(graph.seeds) | graph.removed_nodes | {source}
    logger.debug("desc: %d worlds, %d candidates", theta, graph.n - len(excluded))
    return DecreaseTable(
        BlockKind.NODE, theta, totals.counts, graph.labels, excluded, totals.timing
    )


def desce(
    graph: ProbGraph,
    theta: int,
    stream: RngStream,
    source: Optional[int] = None,
    workers: int = 1,
) -> DecreaseTable:
    """Decrease in expected spread for blocking each edge, from θ worlds.

    Each world is split into its edge-sampled form; blocking edge (u, v)
    removes the original nodes in the subtree of its virtual node.
    """
    if theta <= 0:
        raise ValueError("theta must be positive")
    if source is None:
        source = graph.source
    lt = graph.model is DiffusionModel.LT
    totals = run_worlds(
        graph,
        partial(_edge_kernel, source, lt),
        graph.m,
        theta,
        stream,
        workers=workers,
        phase="dominator",
    )
    names = tuple(graph.edge_label(e) for e in range(graph.m))
    excluded = frozenset(i for i, on in enumerate(graph.active.tolist()) if not on)
    logger.debug("desce: %d worlds, %d candidates", theta, graph.m - len(excluded))
    return DecreaseTable(BlockKind.EDGE, theta, totals.counts, names, excluded, totals.timing)


def decrease_table(
    graph: ProbGraph,
    kind: BlockKind,
    theta: int,
    stream: RngStream,
    workers: int = 1,
) -> DecreaseTable:
    if BlockKind(kind) is BlockKind.NODE:
        return desc(graph, theta, stream, workers=workers)
    return desce(graph, theta, stream, workers=workers)
