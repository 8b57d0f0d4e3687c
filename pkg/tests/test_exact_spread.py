from itertools import combinations

import pytest

from src.datasets import node_lookup
from src.diffusion import evaluate_spread, exact_spread, mcs_spread, relevant_uncertain_edges
from src.errors import InfeasibleEnumeration
from src.graphs import DiffusionModel, ProbGraph, remove_edges, remove_nodes
from src.utils.rng import RngStream


def _blocked(toy, *labels):
    v = node_lookup(toy)
    return exact_spread(remove_nodes(toy, [v[x] for x in labels]))


def test_toy_goldens(toy):
    v = node_lookup(toy)
    assert exact_spread(toy) == pytest.approx(7.66, abs=1e-9)
    assert _blocked(toy, "v5") == pytest.approx(3.0, abs=1e-9)
    assert _blocked(toy, "v2") == pytest.approx(6.66, abs=1e-9)
    assert _blocked(toy, "v2", "v4") == pytest.approx(1.0, abs=1e-9)
    assert exact_spread(remove_edges(toy, [(v["v5"], v["v9"])])) == pytest.approx(6.55, abs=1e-9)
    assert exact_spread(remove_edges(toy, [(v["v5"], v["v3"])])) == pytest.approx(6.66, abs=1e-9)


def test_blocking_is_not_supermodular_under_ic(toy):
    assert _blocked(toy, "v3") == pytest.approx(6.66, abs=1e-9)
    assert _blocked(toy, "v2", "v3") == pytest.approx(5.66, abs=1e-9)
    assert _blocked(toy, "v3", "v4") == pytest.approx(5.66, abs=1e-9)
    assert _blocked(toy, "v2", "v3", "v4") == pytest.approx(1.0, abs=1e-9)


def test_only_reachable_uncertain_edges_count(toy):
    assert relevant_uncertain_edges(toy, 0) == [7, 8, 9]
    v = node_lookup(toy)
    assert relevant_uncertain_edges(remove_nodes(toy, [v["v5"]]), 0) == []


def test_enumeration_cap(toy):
    with pytest.raises(InfeasibleEnumeration):
        exact_spread(toy, max_uncertain=2)
    with pytest.raises(InfeasibleEnumeration):
        evaluate_spread(toy, RngStream(0), 100, mode="exact", max_uncertain=2)
    value, estimator = evaluate_spread(toy, RngStream(0), 20_000, max_uncertain=2)
    assert estimator == "mcs"
    assert value == pytest.approx(7.66, abs=0.05)


def test_cycles_and_parallel_paths():
    # 0 -> 1 -> 2 -> 1 and 0 -> 2; node 2 reached with 1 - (1 - .5 * .5)(1 - .5)
    g = ProbGraph.from_edges(
        3, [(0, 1, 0.5), (1, 2, 0.5), (2, 1, 0.5), (0, 2, 0.5)], seeds=[0]
    )
    p2 = 1 - (1 - 0.25) * 0.5
    p1 = 1 - (1 - 0.5) * (1 - 0.5 * 0.5)
    assert exact_spread(g) == pytest.approx(1 + p1 + p2, abs=1e-12)


def test_lt_path_sum_matches_simulation(make_digraph):
    g = make_digraph(5, 7, 0.35, DiffusionModel.LT)
    exact = exact_spread(g)
    estimate = mcs_spread(g, 40_000, RngStream(13))
    assert estimate.mean == pytest.approx(exact, abs=0.05)


def test_lt_blocking_is_supermodular(make_digraph):
    violations = 0
    for seed in range(20):
        g = make_digraph(100 + seed, 7, 0.4, DiffusionModel.LT)
        others = list(range(1, g.n))
        f = {}
        for k in range(len(others) + 1):
            for blockers in combinations(others, k):
                f[blockers] = exact_spread(remove_nodes(g, blockers))
        for y in f:
            ys = set(y)
            for k in range(len(y) + 1):
                for x in combinations(y, k):
                    for u in others:
                        if u in ys:
                            continue
                        xu = tuple(sorted(x + (u,)))
                        yu = tuple(sorted(y + (u,)))
                        if f[x] - f[xu] < f[y] - f[yu] - 1e-9:
                            violations += 1
    assert violations == 0


def test_blocking_one_node_never_raises_spread(toy):
    base = exact_spread(toy)
    for u in range(1, toy.n):
        assert exact_spread(remove_nodes(toy, [u])) <= base + 1e-12


def test_spread_is_monotone_in_the_blocked_set(make_digraph):
    for seed in range(5):
        g = make_digraph(seed, 9, 0.3, max_uncertain=8)
        nodes = list(range(1, g.n))
        for a in combinations(nodes, 1):
            small = exact_spread(remove_nodes(g, a))
            for extra in nodes:
                if extra in a:
                    continue
                assert exact_spread(remove_nodes(g, [*a, extra])) <= small + 1e-12
