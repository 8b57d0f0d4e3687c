from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from src.errors import GraphError

Edge = Tuple[int, int]

LT_TOLERANCE = 1e-12


class DiffusionModel(str, Enum):
    IC = "ic"
    LT = "lt"


class BlockKind(str, Enum):
    NODE = "node"
    EDGE = "edge"


def _frozen(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


@dataclass(frozen=True, eq=False)
class ProbGraph:
    """Immutable directed graph with per-edge propagation probabilities.

    Edges keep their ingestion order; index ``e`` addresses ``src[e]``,
    ``dst[e]`` and ``prob[e]`` for the whole life of the graph. Blocking
    never re-indexes: removed nodes and edges are recorded in boolean masks
    so decrease tables stay aligned across greedy rounds.
    """

    n: int
    src: np.ndarray
    dst: np.ndarray
    prob: np.ndarray
    seeds: Tuple[int, ...] = ()
    model: DiffusionModel = DiffusionModel.IC
    labels: Tuple[str, ...] = ()
    node_removed: Optional[np.ndarray] = None
    edge_removed: Optional[np.ndarray] = None
    spread_offset: int = 0

    def __post_init__(self) -> None:
        src = np.array(self.src, dtype=np.int64).reshape(-1)
        dst = np.array(self.dst, dtype=np.int64).reshape(-1)
        prob = np.array(self.prob, dtype=np.float64).reshape(-1)
        if not (len(src) == len(dst) == len(prob)):
            raise GraphError("src, dst and prob must have the same length")
        if len(src) and (src.min() < 0 or dst.min() < 0 or max(src.max(), dst.max()) >= self.n):
            raise GraphError("edge endpoint outside [0, n)")
        node_removed = (
            np.zeros(self.n, dtype=bool)
            if self.node_removed is None
            else np.array(self.node_removed, dtype=bool)
        )
        edge_removed = (
            np.zeros(len(src), dtype=bool)
            if self.edge_removed is None
            else np.array(self.edge_removed, dtype=bool)
        )
        labels = tuple(self.labels) if self.labels else tuple(str(i) for i in range(self.n))
        if len(labels) != self.n:
            raise GraphError("labels must name every node")
        object.__setattr__(self, "src", _frozen(src))
        object.__setattr__(self, "dst", _frozen(dst))
        object.__setattr__(self, "prob", _frozen(prob))
        object.__setattr__(self, "node_removed", _frozen(node_removed))
        object.__setattr__(self, "edge_removed", _frozen(edge_removed))
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "seeds", tuple(int(s) for s in self.seeds))
        object.__setattr__(self, "model", DiffusionModel(self.model))

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[Tuple[int, int, float]],
        seeds: Iterable[int] = (),
        model: DiffusionModel | str = DiffusionModel.IC,
        labels: Optional[Sequence[str]] = None,
    ) -> "ProbGraph":
        rows = list(edges)
        src = np.array([r[0] for r in rows], dtype=np.int64)
        dst = np.array([r[1] for r in rows], dtype=np.int64)
        prob = np.array([r[2] for r in rows], dtype=np.float64)
        return cls(
            n=n,
            src=src,
            dst=dst,
            prob=prob,
            seeds=tuple(seeds),
            model=DiffusionModel(model),
            labels=tuple(labels) if labels else (),
        )

    # -- structure -----------------------------------------------------

    @property
    def m(self) -> int:
        return int(len(self.src))

    @property
    def source(self) -> int:
        """The single seed every spread and decrease operation starts from."""
        if len(self.seeds) != 1:
            raise GraphError(
                f"expected exactly one (unified) seed, found {len(self.seeds)}"
            )
        return self.seeds[0]

    @cached_property
    def active(self) -> np.ndarray:
        """Edges still present: not removed and both endpoints unblocked."""
        mask = ~self.edge_removed & ~self.node_removed[self.src] & ~self.node_removed[self.dst]
        return _frozen(mask)

    @cached_property
    def out_edges(self) -> Tuple[Tuple[int, ...], ...]:
        buckets: List[List[int]] = [[] for _ in range(self.n)]
        for e, u in enumerate(self.src.tolist()):
            buckets[u].append(e)
        return tuple(tuple(b) for b in buckets)

    @cached_property
    def in_edges(self) -> Tuple[Tuple[int, ...], ...]:
        buckets: List[List[int]] = [[] for _ in range(self.n)]
        for e, v in enumerate(self.dst.tolist()):
            buckets[v].append(e)
        return tuple(tuple(b) for b in buckets)

    @cached_property
    def edge_index(self) -> Dict[Edge, int]:
        return {
            (u, v): e
            for e, (u, v) in enumerate(zip(self.src.tolist(), self.dst.tolist()))
        }

    @cached_property
    def dst_list(self) -> List[int]:
        return self.dst.tolist()

    @cached_property
    def out_degree(self) -> np.ndarray:
        return _frozen(np.bincount(self.src[self.active], minlength=self.n))

    @cached_property
    def in_degree(self) -> np.ndarray:
        return _frozen(np.bincount(self.dst[self.active], minlength=self.n))

    @cached_property
    def lt_bounds(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """In-edge order plus the [lower, upper) slice each edge owns of [0, 1).

        Each node's in-edges split the unit interval in ingestion order; an
        LT world keeps the in-edge whose slice contains the node's uniform.
        """
        order = np.argsort(self.dst, kind="stable")
        dst_sorted = self.dst[order]
        prob_sorted = self.prob[order]
        upper = np.cumsum(prob_sorted)
        starts = np.ones(len(order), dtype=bool)
        starts[1:] = dst_sorted[1:] != dst_sorted[:-1]
        group_base = np.maximum.accumulate(np.where(starts, np.arange(len(order)), 0))
        offset = np.where(group_base > 0, upper[group_base - 1], 0.0)
        upper = upper - offset
        lower = np.empty_like(upper)
        if len(order):
            lower[0] = 0.0
            lower[1:] = upper[:-1]
            lower[starts] = 0.0
        return _frozen(order), _frozen(lower), _frozen(upper)

    # -- accessors -----------------------------------------------------

    def edge(self, e: int) -> Edge:
        return int(self.src[e]), int(self.dst[e])

    def label(self, u: int) -> str:
        return self.labels[u]

    def edge_label(self, e: int) -> str:
        u, v = self.edge(e)
        return f"{self.labels[u]}->{self.labels[v]}"

    def iter_edges(self) -> Iterator[Tuple[int, int, float]]:
        """Active edges as ``(src, dst, p)`` in ingestion order."""
        for e in np.flatnonzero(self.active).tolist():
            yield int(self.src[e]), int(self.dst[e]), float(self.prob[e])

    def active_edge_ids(self) -> List[int]:
        return np.flatnonzero(self.active).tolist()

    @property
    def removed_nodes(self) -> frozenset[int]:
        return frozenset(np.flatnonzero(self.node_removed).tolist())

    @property
    def removed_edges(self) -> frozenset[int]:
        return frozenset(np.flatnonzero(self.edge_removed).tolist())

    def out_neighbors(self, u: int) -> List[int]:
        active = self.active
        return [int(self.dst[e]) for e in self.out_edges[u] if active[e]]

    # -- derived graphs ------------------------------------------------

    def with_probabilities(self, prob: np.ndarray) -> "ProbGraph":
        return replace(self, prob=np.asarray(prob, dtype=np.float64))

    def with_seeds(self, seeds: Iterable[int]) -> "ProbGraph":
        return replace(self, seeds=tuple(seeds))

    def with_model(self, model: DiffusionModel | str) -> "ProbGraph":
        return replace(self, model=DiffusionModel(model))

    def same_structure(self, other: "ProbGraph") -> bool:
        return (
            self.n == other.n
            and self.seeds == other.seeds
            and self.model == other.model
            and self.spread_offset == other.spread_offset
            and np.array_equal(self.src, other.src)
            and np.array_equal(self.dst, other.dst)
            and np.array_equal(self.prob, other.prob)
            and np.array_equal(self.active, other.active)
            and np.array_equal(self.node_removed, other.node_removed)
        )

    def __repr__(self) -> str:
        return (
            f"ProbGraph(n={self.n}, m={self.m}, model={self.model.value}, "
            f"seeds={self.seeds}, removed_nodes={len(self.removed_nodes)}, "
            f"removed_edges={int(self.edge_removed.sum())})"
        )
