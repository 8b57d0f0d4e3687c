"""Dataset ingestion, probability assignment and statistics."""

from .loader import (
    DatasetSpec,
    ProbModel,
    load_dataset,
    load_edge_list,
    load_seeds,
    node_lookup,
    pick_random_seeds,
    resolve_seeds,
)
from .probabilities import TRIVALENCY, assign_probabilities, assign_tr, assign_wc
from .stats import DatasetStats, stats
from .synthetic import random_graph

__all__ = [
    "DatasetSpec",
    "DatasetStats",
    "ProbModel",
    "TRIVALENCY",
    "assign_probabilities",
    "assign_tr",
    "assign_wc",
    "load_dataset",
    "load_edge_list",
    "load_seeds",
    "node_lookup",
    "pick_random_seeds",
    "random_graph",
    "resolve_seeds",
    "stats",
]
