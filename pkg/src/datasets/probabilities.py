from __future__ import annotations

import numpy as np

from src.datasets.loader import ProbModel
from src.errors import DatasetError
from src.graphs.prob_graph import ProbGraph
from src.utils.rng import RngStream

TRIVALENCY = (0.1, 0.01, 0.001)


def assign_tr(graph: ProbGraph, stream: RngStream) -> ProbGraph:
    """Trivalency: every edge draws p uniformly from {0.1, 0.01, 0.001}."""
    picks = stream.generator().integers(0, len(TRIVALENCY), size=graph.m)
    return graph.with_probabilities(np.asarray(TRIVALENCY)[picks])


def assign_wc(graph: ProbGraph) -> ProbGraph:
    """Weighted cascade: p(u, v) = 1 / in-degree(v)."""
    indeg = np.bincount(graph.dst, minlength=graph.n)
    return graph.with_probabilities(1.0 / indeg[graph.dst])


def assign_probabilities(
    graph: ProbGraph, model: ProbModel | str, stream: RngStream
) -> ProbGraph:
    model = ProbModel(model)
    if model is ProbModel.TR:
        return assign_tr(graph, stream)
    if model is ProbModel.WC:
        return assign_wc(graph)
    if np.isnan(graph.prob).any():
        raise DatasetError("explicit probability model but some edges have no probability")
    return graph
