"""One-pass estimation of spread decrease for every node or edge blocker."""

from .chernoff import chernoff_theta
from .edge_world import EdgeSampledWorld, build_edge_world
from .estimators import DEFAULT_THETA, decrease_table, desc, desce
from .table import DecreaseTable

__all__ = [
    "DEFAULT_THETA",
    "DecreaseTable",
    "EdgeSampledWorld",
    "build_edge_world",
    "chernoff_theta",
    "decrease_table",
    "desc",
    "desce",
]
