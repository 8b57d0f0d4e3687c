from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Dict

import numpy as np

from src.graphs.prob_graph import ProbGraph


@dataclass(frozen=True)
class DatasetStats:
    n: int
    m: int
    d_avg: float
    d_max: int

    def as_dict(self) -> Dict[str, float]:
        return asdict(self)


def stats(graph: ProbGraph) -> DatasetStats:
    """Node/edge counts and in+out degree summary of the active graph."""
    degree = graph.in_degree + graph.out_degree
    m = int(np.count_nonzero(graph.active))
    return DatasetStats(
        n=graph.n,
        m=m,
        d_avg=2.0 * m / graph.n if graph.n else 0.0,
        d_max=int(degree.max()) if graph.n else 0,
    )
