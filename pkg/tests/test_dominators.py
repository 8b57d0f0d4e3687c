from dataclasses import dataclass
from typing import List

import networkx as nx
import numpy as np
import pytest

from src.datasets import node_lookup
from src.diffusion import SampledWorld, iter_worlds, sample_world
from src.dominators import (
    brute_force_idom,
    build_lengauer_tarjan,
    build_lt,
    dump_tree,
    subtree_sizes,
)
from src.errors import GraphError
from src.graphs import DiffusionModel
from src.utils.rng import RngStream


@dataclass
class Adjacency:
    adj: List[List[int]]

    @property
    def node_count(self) -> int:
        return len(self.adj)

    def successors(self, u: int) -> List[int]:
        return self.adj[u]


def _random_adjacency(seed: int) -> Adjacency:
    gen = np.random.default_rng(seed)
    n = int(gen.integers(2, 13))
    adj = [[v for v in range(n) if v != u and gen.random() < 0.3] for u in range(n)]
    return Adjacency(adj)


def _nx_idom(graph: Adjacency, source: int) -> dict:
    g = nx.DiGraph()
    g.add_nodes_from(range(graph.node_count))
    g.add_edges_from((u, v) for u in range(graph.node_count) for v in graph.adj[u])
    idom = nx.immediate_dominators(g, source)
    idom.pop(source, None)
    return idom


@pytest.mark.parametrize("seed", range(200))
def test_lengauer_tarjan_matches_definition(seed):
    graph = _random_adjacency(seed)
    tree = build_lengauer_tarjan(graph, 0)
    assert tree.idom == brute_force_idom(graph, 0)
    assert tree.idom == _nx_idom(graph, 0)


def test_tree_order_lists_parents_first():
    graph = _random_adjacency(42)
    tree = build_lengauer_tarjan(graph, 0)
    position = {v: i for i, v in enumerate(tree.order)}
    for v, parent in tree.idom.items():
        assert position[parent] < position[v]


def test_lt_builder_matches_lengauer_tarjan(make_digraph):
    checked = 0
    for seed in range(10):
        g = make_digraph(seed, 10, 0.3, DiffusionModel.LT)
        for world in iter_worlds(g, RngStream(seed), 50):
            assert build_lt(world, 0).idom == build_lengauer_tarjan(world, 0).idom
            checked += 1
    assert checked == 500


def test_lt_builder_rejects_ic_world(toy):
    world = sample_world(toy, 0)
    with pytest.raises(GraphError):
        build_lt(world, 0)


def test_toy_dominators(toy):
    v = node_lookup(toy)
    world = sample_world(toy.with_probabilities(np.ones(toy.m)), 0)
    tree = build_lengauer_tarjan(world, 0)
    assert tree.idom[v["v5"]] == v["v1"]
    assert tree.idom[v["v8"]] == v["v5"]
    assert tree.idom[v["v7"]] == v["v8"]
    assert tree.subtree_size[v["v5"]] == 6
    assert tree.dominators(v["v7"]) == [v["v7"], v["v8"], v["v5"], v["v1"]]
    assert v["v9"] in tree


def test_subtree_sizes_can_skip_nodes(toy):
    world = sample_world(toy.with_probabilities(np.ones(toy.m)), 0)
    tree = build_lengauer_tarjan(world, 0)
    sizes = subtree_sizes(tree, counted=lambda x: x % 2 == 0)
    assert sizes[0] == 5


def test_unreachable_nodes_are_left_out():
    graph = Adjacency([[1], [], [1]])
    tree = build_lengauer_tarjan(graph, 0)
    assert tree.idom == {1: 0}
    assert 2 not in tree
    assert len(tree) == 2


def test_dump_tree_format():
    graph = Adjacency([[1, 2], [3], [3], []])
    assert dump_tree(build_lengauer_tarjan(graph, 0)) == "1 0\n2 0\n3 0"


def test_toy_world_with_dead_tail_edge(toy):
    v = node_lookup(toy)
    live = np.ones(toy.m, dtype=bool)
    live[9] = False  # v8 -> v7
    world = SampledWorld(toy, live)
    sizes = build_lengauer_tarjan(world, 0).subtree_size
    assert sizes[v["v5"]] == 5
    assert v["v7"] not in sizes


@pytest.mark.parametrize("model", [DiffusionModel.IC, DiffusionModel.LT])
def test_root_children_partition_reached_nodes(model, make_digraph):
    g = make_digraph(31, 15, 0.2, model)
    builder = build_lt if model is DiffusionModel.LT else build_lengauer_tarjan
    for world in iter_worlds(g, RngStream(6), 200):
        tree = builder(world, 0)
        sizes = tree.subtree_size
        assert sizes[0] == len(tree)
        assert sum(sizes[c] for c in tree.children[0]) == len(tree) - 1
        for u in tree.order:
            assert sizes[u] == 1 + sum(sizes[c] for c in tree.children[u])
