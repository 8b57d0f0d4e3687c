from __future__ import annotations

import networkx as nx
import numpy as np

from src.graphs.prob_graph import DiffusionModel, ProbGraph
from src.utils.rng import RngStream


def random_graph(
    n: int,
    m: int,
    stream: RngStream,
    model: DiffusionModel | str = DiffusionModel.IC,
) -> ProbGraph:
    """Uniform random directed graph with n nodes and m edges, probabilities unset."""
    seed = int(stream.generator().integers(2**32))
    g = nx.gnm_random_graph(n, m, seed=seed, directed=True)
    edges = sorted(g.edges())
    src = np.array([u for u, _ in edges], dtype=np.int64)
    dst = np.array([v for _, v in edges], dtype=np.int64)
    return ProbGraph(
        n=n,
        src=src,
        dst=dst,
        prob=np.full(len(edges), np.nan),
        model=DiffusionModel(model),
    )
