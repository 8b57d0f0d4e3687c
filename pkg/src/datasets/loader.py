from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from src.errors import DatasetError
from src.graphs.prob_graph import DiffusionModel, ProbGraph
from src.utils.rng import RngStream

logger = logging.getLogger(__name__)

COMMENT_PREFIXES = ("#", "%")


class ProbModel(str, Enum):
    TR = "tr"
    WC = "wc"
    EXPLICIT = "file"


SeedSpec = Union[str, Sequence[str]]


@dataclass(frozen=True)
class DatasetSpec:
    """Where a graph comes from and how its probabilities and seeds are set.

    ``seed_spec`` is ``"random:k"``, ``"file:PATH"`` or an explicit list of
    original node ids.
    """

    path: Path
    directed: bool = True
    prob_model: ProbModel = ProbModel.TR
    seed_spec: SeedSpec = "random:10"

    @property
    def name(self) -> str:
        return Path(self.path).stem


def _parse_line(tokens: List[str], lineno: int, explicit: bool) -> Tuple[str, str, float]:
    if len(tokens) not in (2, 3):
        raise DatasetError(f"expected 'u v' or 'u v p', got {len(tokens)} fields", lineno)
    if explicit and len(tokens) != 3:
        raise DatasetError("explicit probabilities need a third column", lineno)
    p = float("nan")
    if len(tokens) == 3:
        try:
            p = float(tokens[2])
        except ValueError:
            raise DatasetError(f"bad probability {tokens[2]!r}", lineno) from None
    return tokens[0], tokens[1], p


def load_edge_list(
    spec: DatasetSpec, model: DiffusionModel | str = DiffusionModel.IC
) -> ProbGraph:
    """Parse a SNAP-style edge list into a ProbGraph with contiguous node ids.

    Probabilities are NaN unless the file carries a third column; undirected
    inputs get both directions. Self-loops are dropped, duplicates rejected.
    """
    path = Path(spec.path)
    if not path.is_file():
        raise DatasetError(f"no such dataset file: {path}")
    explicit = ProbModel(spec.prob_model) is ProbModel.EXPLICIT
    ids: Dict[str, int] = {}
    src: List[int] = []
    dst: List[int] = []
    prob: List[float] = []
    seen: Dict[Tuple[int, int], int] = {}
    loops = 0

    def node(label: str) -> int:
        if label not in ids:
            ids[label] = len(ids)
        return ids[label]

    with path.open() as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.strip()
            if not line or line.startswith(COMMENT_PREFIXES):
                continue
            a, b, p = _parse_line(line.split(), lineno, explicit)
            u, v = node(a), node(b)
            if u == v:
                loops += 1
                continue
            pairs = [(u, v)] if spec.directed else [(u, v), (v, u)]
            for pair in pairs:
                if pair in seen:
                    raise DatasetError(
                        f"duplicate edge {a} {b} (first seen on line {seen[pair]})", lineno
                    )
                seen[pair] = lineno
                src.append(pair[0])
                dst.append(pair[1])
                prob.append(p)

    if loops:
        logger.warning("dropped %d self-loops from %s", loops, path.name)
    labels = tuple(sorted(ids, key=ids.__getitem__))
    logger.info("loaded %s: %d nodes, %d edges", path.name, len(labels), len(src))
    return ProbGraph(
        n=len(labels),
        src=np.array(src, dtype=np.int64),
        dst=np.array(dst, dtype=np.int64),
        prob=np.array(prob, dtype=np.float64),
        model=DiffusionModel(model),
        labels=labels,
    )


def node_lookup(graph: ProbGraph) -> Dict[str, int]:
    """Original dataset id -> internal node id."""
    return {label: i for i, label in enumerate(graph.labels)}


def load_seeds(path: str | Path, graph: ProbGraph) -> Tuple[int, ...]:
    lookup = node_lookup(graph)
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise DatasetError(f"cannot read seed file {path}: {exc.strerror or exc}") from exc
    seeds: List[int] = []
    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith(COMMENT_PREFIXES):
            continue
        if line not in lookup:
            raise DatasetError(f"seed {line!r} is not a node of the graph", lineno)
        seeds.append(lookup[line])
    return tuple(dict.fromkeys(seeds))


def pick_random_seeds(graph: ProbGraph, k: int, stream: RngStream) -> Tuple[int, ...]:
    """k distinct seeds drawn uniformly from nodes with at least one edge."""
    degree = graph.in_degree + graph.out_degree
    candidates = np.flatnonzero(degree > 0)
    if k > len(candidates):
        raise DatasetError(f"cannot pick {k} seeds from {len(candidates)} non-isolated nodes")
    picks = stream.generator().choice(candidates, size=k, replace=False)
    return tuple(sorted(int(u) for u in picks))


def resolve_seeds(graph: ProbGraph, seed_spec: SeedSpec, stream: RngStream) -> ProbGraph:
    """Apply ``random:k``, ``file:PATH``, a bare seed-file path or a comma list of ids."""
    if isinstance(seed_spec, str):
        kind, _, arg = seed_spec.partition(":")
        if kind == "random":
            try:
                k = int(arg)
            except ValueError:
                raise DatasetError(f"bad seed count in {seed_spec!r}") from None
            return graph.with_seeds(pick_random_seeds(graph, k, stream))
        if kind == "file":
            return graph.with_seeds(load_seeds(arg, graph))
        if seed_spec not in node_lookup(graph) and Path(seed_spec).is_file():
            return graph.with_seeds(load_seeds(seed_spec, graph))
        seed_spec = [s for s in seed_spec.split(",") if s]
    lookup = node_lookup(graph)
    missing = [s for s in seed_spec if s not in lookup]
    if missing:
        raise DatasetError(f"unknown seed ids: {missing}")
    return graph.with_seeds(tuple(dict.fromkeys(lookup[s] for s in seed_spec)))


def load_dataset(
    spec: DatasetSpec,
    model: DiffusionModel | str,
    stream: RngStream,
    prob_stream: Optional[RngStream] = None,
) -> ProbGraph:
    """Edge list -> probabilities -> seeds, ready for seed unification."""
    from src.datasets.probabilities import assign_probabilities

    graph = load_edge_list(spec, model)
    graph = assign_probabilities(graph, spec.prob_model, prob_stream or stream.child("prob"))
    return resolve_seeds(graph, spec.seed_spec, stream.child("seeds"))
