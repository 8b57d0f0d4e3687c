from __future__ import annotations

from pathlib import Path
from typing import Callable

import numpy as np
import pytest

from src.datasets import assign_wc
from src.graphs import DiffusionModel, ProbGraph

DATA_DIR = Path(__file__).resolve().parent / "data"

TOY_LABELS = tuple(f"v{i}" for i in range(1, 10))
TOY_EDGES = [
    ("v1", "v2", 1.0),
    ("v1", "v4", 1.0),
    ("v2", "v5", 1.0),
    ("v4", "v5", 1.0),
    ("v5", "v3", 1.0),
    ("v5", "v6", 1.0),
    ("v5", "v9", 1.0),
    ("v5", "v8", 0.5),
    ("v9", "v8", 0.2),
    ("v8", "v7", 0.1),
]


def node(label: str) -> int:
    return TOY_LABELS.index(label)


def build_toy() -> ProbGraph:
    return ProbGraph.from_edges(
        9,
        [(node(u), node(v), p) for u, v, p in TOY_EDGES],
        seeds=[node("v1")],
        labels=TOY_LABELS,
    )


def random_digraph(
    seed: int,
    n: int,
    density: float,
    model: DiffusionModel = DiffusionModel.IC,
    max_uncertain: int | None = None,
) -> ProbGraph:
    """Random simple digraph seeded at node 0.

    IC graphs mix certain and uncertain edges (at most ``max_uncertain`` of
    the latter); LT graphs get weighted-cascade probabilities.
    """
    gen = np.random.default_rng(seed)
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    keep = [pair for pair in pairs if gen.random() < density]
    # make sure the seed propagates somewhere
    if not any(u == 0 for u, _ in keep):
        keep.insert(0, (0, int(gen.integers(1, n))))
    prob = gen.uniform(0.1, 0.9, size=len(keep))
    if max_uncertain is not None:
        certain = gen.permutation(len(keep))[max_uncertain:]
        prob[certain] = 1.0
    graph = ProbGraph(
        n=n,
        src=np.array([u for u, _ in keep]),
        dst=np.array([v for _, v in keep]),
        prob=prob,
        seeds=(0,),
        model=model,
    )
    return assign_wc(graph) if model is DiffusionModel.LT else graph


@pytest.fixture
def toy() -> ProbGraph:
    return build_toy()


@pytest.fixture
def toy_path() -> Path:
    return DATA_DIR / "toy_graph.txt"


@pytest.fixture
def chain_path() -> Path:
    return DATA_DIR / "chain.txt"


@pytest.fixture
def make_digraph() -> Callable[..., ProbGraph]:
    return random_digraph
