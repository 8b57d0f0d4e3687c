import logging

import numpy as np
import pytest

from src.datasets import (
    TRIVALENCY,
    DatasetSpec,
    ProbModel,
    assign_tr,
    assign_wc,
    load_dataset,
    load_edge_list,
    load_seeds,
    node_lookup,
    pick_random_seeds,
    random_graph,
    resolve_seeds,
    stats,
)
from src.errors import DatasetError
from src.graphs import DiffusionModel, ProbGraph, validate
from src.utils.rng import RngStream


def _write(tmp_path, text, name="graph.txt"):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_load_toy_file(toy_path, toy):
    g = load_edge_list(DatasetSpec(toy_path, prob_model=ProbModel.EXPLICIT))
    assert g.n == 9 and g.m == 10
    assert np.allclose(g.prob, toy.prob)
    lookup = node_lookup(g)
    # first-appearance order: v1 v2 v4 v5 v3 v6 v9 v8 v7
    assert lookup["v5"] == 3
    assert all(g.labels[lookup[label]] == label for label in lookup)


def test_undirected_lines_become_two_edges(tmp_path):
    path = _write(tmp_path, "a b\nb c\n")
    g = load_edge_list(DatasetSpec(path, directed=False))
    assert g.m == 4
    assert set(g.edge_index) == {(0, 1), (1, 0), (1, 2), (2, 1)}
    assert np.isnan(g.prob).all()


def test_self_loops_dropped_with_warning(tmp_path, caplog):
    path = _write(tmp_path, "# header\n1 1\n1 2\n2 2\n")
    with caplog.at_level(logging.WARNING, logger="src"):
        g = load_edge_list(DatasetSpec(path))
    assert g.m == 1
    assert "2 self-loops" in caplog.text


def test_duplicate_edge_rejected(tmp_path):
    path = _write(tmp_path, "1 2\n2 3\n1 2\n")
    with pytest.raises(DatasetError, match="line 3"):
        load_edge_list(DatasetSpec(path))


def test_undirected_reverse_duplicate_rejected(tmp_path):
    path = _write(tmp_path, "1 2\n2 1\n")
    with pytest.raises(DatasetError, match="duplicate"):
        load_edge_list(DatasetSpec(path, directed=False))


@pytest.mark.parametrize("line", ["1", "1 2 3 4", "1 2 high"])
def test_malformed_line_reports_number(tmp_path, line):
    path = _write(tmp_path, f"0 1\n{line}\n")
    with pytest.raises(DatasetError) as info:
        load_edge_list(DatasetSpec(path))
    assert info.value.line == 2


def test_explicit_model_needs_probabilities(tmp_path):
    path = _write(tmp_path, "0 1 0.5\n1 2\n")
    with pytest.raises(DatasetError, match="third column"):
        load_edge_list(DatasetSpec(path, prob_model=ProbModel.EXPLICIT))


def test_missing_file(tmp_path):
    with pytest.raises(DatasetError):
        load_edge_list(DatasetSpec(tmp_path / "nope.txt"))


def test_trivalency_frequencies():
    gen = np.random.default_rng(0)
    n = 1000
    g = ProbGraph(n, gen.integers(0, n, 100_000), gen.integers(0, n, 100_000), np.zeros(100_000))
    assigned = assign_tr(g, RngStream(1))
    for p in TRIVALENCY:
        assert np.mean(assigned.prob == p) == pytest.approx(1 / 3, abs=0.01)
    again = assign_tr(g, RngStream(1))
    assert np.array_equal(assigned.prob, again.prob)


def test_weighted_cascade():
    g = ProbGraph.from_edges(
        6,
        [(0, 4, 0), (1, 4, 0), (2, 4, 0), (3, 4, 0), (4, 5, 0)],
        seeds=[0],
        model=DiffusionModel.LT,
    )
    wc = assign_wc(g)
    assert wc.prob.tolist() == [0.25, 0.25, 0.25, 0.25, 1.0]
    assert validate(wc) == []


def test_weighted_cascade_passes_lt_validation(make_digraph):
    g = make_digraph(8, 12, 0.3, DiffusionModel.LT)
    in_sum = np.bincount(g.dst, weights=g.prob, minlength=g.n)
    assert np.all((np.abs(in_sum - 1) < 1e-12) | (in_sum == 0))
    assert validate(g) == []


def test_stats():
    path = ProbGraph.from_edges(3, [(0, 1, 1.0), (1, 2, 1.0)])
    s = stats(path)
    assert (s.n, s.m, s.d_max) == (3, 2, 2)
    assert s.d_avg == pytest.approx(4 / 3)
    assert stats(ProbGraph.from_edges(2, [])).d_avg == 0


def test_toy_stats(toy):
    s = stats(toy)
    assert (s.n, s.m, s.d_max) == (9, 10, 6)


def test_seed_files(tmp_path, toy):
    path = _write(tmp_path, "v1\n# comment\nv5\n", name="seeds.txt")
    assert load_seeds(path, toy) == (0, 4)
    bad = _write(tmp_path, "v10\n", name="bad.txt")
    with pytest.raises(DatasetError, match="line 1"):
        load_seeds(bad, toy)
    with pytest.raises(DatasetError, match="cannot read seed file"):
        load_seeds(tmp_path / "absent.txt", toy)
    assert resolve_seeds(toy, str(path), RngStream(0)).seeds == (0, 4)


def test_random_seeds_skip_isolated_nodes():
    g = ProbGraph.from_edges(6, [(0, 1, 1.0), (2, 3, 1.0)])
    seeds = pick_random_seeds(g, 4, RngStream(0))
    assert seeds == (0, 1, 2, 3)
    with pytest.raises(DatasetError):
        pick_random_seeds(g, 5, RngStream(0))


def test_resolve_seed_specs(toy):
    assert resolve_seeds(toy, "v1,v5", RngStream(0)).seeds == (0, 4)
    assert len(resolve_seeds(toy, "random:3", RngStream(0)).seeds) == 3
    with pytest.raises(DatasetError):
        resolve_seeds(toy, ["v42"], RngStream(0))


def test_random_graph_is_seeded():
    a = random_graph(50, 200, RngStream(3))
    b = random_graph(50, 200, RngStream(3))
    assert (a.n, a.m) == (50, 200)
    assert np.array_equal(a.src, b.src) and np.array_equal(a.dst, b.dst)
    assert not np.any(a.src == a.dst)


def test_load_dataset_pipeline(tmp_path):
    path = _write(tmp_path, "a b\nb c\nc a\n")
    spec = DatasetSpec(path, prob_model=ProbModel.WC, seed_spec="a")
    g = load_dataset(spec, DiffusionModel.LT, RngStream(0))
    assert g.seeds == (0,)
    assert g.prob.tolist() == [1.0, 1.0, 1.0]
