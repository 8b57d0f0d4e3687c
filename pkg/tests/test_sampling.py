from functools import partial

import numpy as np
import pytest

from src.datasets import node_lookup
from src.diffusion import iter_worlds, mcs_spread, reached_nodes, run_worlds, sample_world
from src.diffusion.sampling import iter_live_batches
from src.diffusion.spread import _reach_kernel
from src.graphs import DiffusionModel, ProbGraph, remove_nodes
from src.utils.rng import BLOCK_ROUNDS, RngStream


def test_certain_and_impossible_edges():
    g = ProbGraph.from_edges(3, [(0, 1, 1.0), (1, 2, 0.0)], seeds=[0])
    for world in iter_worlds(g, RngStream(1), 50):
        assert world.live.tolist() == [True, False]


def test_blocked_edges_never_live(toy):
    blocked = remove_nodes(toy, [node_lookup(toy)["v5"]])
    for world in iter_worlds(blocked, RngStream(2), 20):
        assert not world.live[[2, 3, 4, 5, 6, 7]].any()


def test_worlds_are_reproducible(toy):
    a = [w.live.tolist() for w in iter_worlds(toy, RngStream(7), 40)]
    b = [w.live.tolist() for w in iter_worlds(toy, RngStream(7), 40)]
    c = [w.live.tolist() for w in iter_worlds(toy, RngStream(8), 40)]
    assert a == b
    assert a != c


def test_round_seed_regenerates_world(toy, make_digraph):
    lt = make_digraph(3, 10, 0.3, DiffusionModel.LT)
    for g in (toy, lt):
        worlds = list(iter_worlds(g, RngStream(7), BLOCK_ROUNDS + 20))
        for w in worlds[:20] + worlds[-20:]:
            assert np.array_equal(sample_world(g, w.round_seed).live, w.live)
    assert RngStream(7).round_seed(BLOCK_ROUNDS + 3) == worlds[BLOCK_ROUNDS + 3].round_seed


def test_fewer_rounds_are_a_prefix(toy):
    long = run_worlds(toy, partial(_reach_kernel, 0), 1, 700, RngStream(3), keep_rounds=True)
    short = run_worlds(toy, partial(_reach_kernel, 0), 1, 300, RngStream(3), keep_rounds=True)
    assert long.per_round[:300].tolist() == short.per_round.tolist()


def test_batches_start_mid_block(toy):
    whole = np.concatenate([b for _, b in iter_live_batches(toy, RngStream(4), 600)])
    tail = np.concatenate([b for _, b in iter_live_batches(toy, RngStream(4), 200, start=BLOCK_ROUNDS + 50)])
    assert np.array_equal(whole[BLOCK_ROUNDS + 50 : BLOCK_ROUNDS + 250], tail)


def test_worker_count_does_not_change_totals(toy):
    one = mcs_spread(toy, 1500, RngStream(5), workers=1, keep_counts=True)
    three = mcs_spread(toy, 1500, RngStream(5), workers=3, keep_counts=True)
    assert one.total == three.total
    assert one.per_round_counts == three.per_round_counts


def test_mcs_spread_matches_toy(toy):
    estimate = mcs_spread(toy, 20_000, RngStream(11), keep_counts=True)
    assert estimate.mean == pytest.approx(7.66, abs=0.05)
    assert 0 < estimate.stderr() < 0.01


def test_mcs_needs_rounds(toy):
    with pytest.raises(ValueError):
        mcs_spread(toy, 0, RngStream(0))


def test_reached_nodes_with_skips(toy):
    v = node_lookup(toy)
    world = sample_world(toy.with_probabilities(np.ones(toy.m)), 0)
    assert len(reached_nodes(world, 0)) == 9
    assert len(reached_nodes(world, 0, skip_node=v["v5"])) == 3
    assert len(reached_nodes(world, 0, skip_edge=6)) == 8
    assert len(reached_nodes(world, 0, skip_edge=8)) == 9
    assert _reach_kernel(0, world) == ((0,), (9,))


def test_lt_worlds_keep_one_in_edge(make_digraph):
    graphs = [make_digraph(seed, 12, 0.3, DiffusionModel.LT) for seed in range(4)]
    for g in graphs:
        rounds = 100_000
        live_counts = np.zeros(g.m)
        for _, batch in iter_live_batches(g, RngStream(9), rounds):
            indeg = np.zeros((len(batch), g.n), dtype=np.int64)
            for e in range(g.m):
                indeg[:, g.dst[e]] += batch[:, e]
            assert indeg.max() <= 1
            live_counts += batch.sum(axis=0)
        assert np.all(np.abs(live_counts / rounds - g.prob) < 0.01)


def test_ic_edge_frequencies(make_digraph):
    g = make_digraph(3, 10, 0.3)
    rounds = 10_000
    counts = np.zeros(g.m)
    for _, batch in iter_live_batches(g, RngStream(12), rounds):
        counts += batch.sum(axis=0)
    assert np.all(np.abs(counts / rounds - g.prob) < 0.02)
