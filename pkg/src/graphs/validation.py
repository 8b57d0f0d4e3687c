from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List

import numpy as np

from src.graphs.prob_graph import LT_TOLERANCE, DiffusionModel, ProbGraph


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    detail: Dict[str, Any] = field(default_factory=dict)

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


def validate(graph: ProbGraph) -> List[Violation]:
    """Report every model-constraint violation; an empty list means valid."""
    violations: List[Violation] = []
    src, dst, prob = graph.src, graph.dst, graph.prob

    bad = np.flatnonzero(~((prob >= 0.0) & (prob <= 1.0)))
    for e in bad.tolist():
        violations.append(
            Violation(
                "probability-range",
                "probability out of range",
                {"edge": graph.edge(e), "p": float(prob[e])},
            )
        )

    for e in np.flatnonzero(src == dst).tolist():
        violations.append(Violation("self-loop", "self-loop", {"edge": graph.edge(e)}))

    seen: Dict[tuple, int] = {}
    for e, pair in enumerate(zip(src.tolist(), dst.tolist())):
        if pair in seen:
            violations.append(
                Violation(
                    "duplicate-edge",
                    "duplicate edge",
                    {"edge": pair, "first": seen[pair], "again": e},
                )
            )
        else:
            seen[pair] = e

    if graph.model is DiffusionModel.LT and graph.m:
        in_sum = np.bincount(dst, weights=prob, minlength=graph.n)
        for v in np.flatnonzero(in_sum > 1.0 + LT_TOLERANCE).tolist():
            violations.append(
                Violation(
                    "lt-in-sum",
                    "LT in-sum exceeds 1",
                    {"node": v, "sum": float(in_sum[v])},
                )
            )

    if not graph.seeds:
        violations.append(Violation("no-seeds", "seed set is empty"))
    for s in graph.seeds:
        if not 0 <= s < graph.n:
            violations.append(Violation("seed-range", "seed outside node range", {"seed": s}))
    return violations
