"""Directed probabilistic graphs, validation and blocking transforms."""

from .prob_graph import BlockKind, DiffusionModel, Edge, ProbGraph
from .transforms import (
    BlockSet,
    apply_blockers,
    remove_edge_ids,
    remove_edges,
    remove_nodes,
    unify_seeds,
)
from .validation import Violation, validate

__all__ = [
    "BlockKind",
    "BlockSet",
    "DiffusionModel",
    "Edge",
    "ProbGraph",
    "Violation",
    "apply_blockers",
    "remove_edge_ids",
    "remove_edges",
    "remove_nodes",
    "unify_seeds",
    "validate",
]
