"""Graph representation, G(n, p) sampling, and neighborhood primitives."""

import io
import math

import pytest

from cliquechrom.graph import (
    Graph,
    common_non_neighbors,
    degree_stats,
    read_edge_list,
    sample_gnp,
    write_edge_list,
)


def complete(n):
    return Graph.from_edges(n, [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)])


def path3():
    return Graph.from_edges(3, [(1, 2), (2, 3)])


class TestSampling:
    def test_p_zero_is_edgeless(self):
        assert sample_gnp(5, 0.0, seed=123).edge_count == 0

    def test_p_one_is_complete(self):
        g = sample_gnp(5, 1.0, seed=123)
        assert g.edge_count == 10

    def test_edge_count_binomial_window(self):
        # oracle: direct edge count; 4-sigma binomial window around N/2
        g = sample_gnp(1000, 0.5, seed=7)
        pairs = 1000 * 999 // 2
        slack = 4 * math.sqrt(pairs * 0.25)
        assert abs(g.edge_count - pairs / 2) <= slack

    def test_deterministic(self):
        a = sample_gnp(300, 0.2, seed=42)
        b = sample_gnp(300, 0.2, seed=42)
        assert a == b and a.adj == b.adj

    def test_seed_changes_sample(self):
        assert sample_gnp(300, 0.2, seed=1) != sample_gnp(300, 0.2, seed=2)

    @pytest.mark.parametrize("n,p,seed", [(50, 0.3, 0), (200, 0.1, 5), (120, 0.8, 9)])
    def test_symmetry_and_no_self_loops_all_pairs(self, n, p, seed):
        g = sample_gnp(n, p, seed)
        for u in range(1, n + 1):
            assert not g.has_edge(u, u)
            for v in range(1, n + 1):
                assert g.has_edge(u, v) == g.has_edge(v, u)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            sample_gnp(0, 0.5, seed=1)
        with pytest.raises(ValueError):
            sample_gnp(5, -0.1, seed=1)
        with pytest.raises(ValueError):
            sample_gnp(5, 1.5, seed=1)

    def test_max_degree_tail_proxy(self):
        # fast version of the 2np degree-cap proxy; the acceptance suite
        # runs the full 200-sample check at n = 2000
        hits = sum(
            degree_stats(sample_gnp(500, 0.05, seed=s)).max_degree <= 2 * 500 * 0.05
            for s in range(30)
        )
        assert hits >= 29


class TestCommonNonNeighbors:
    def test_triangle_center(self):
        assert common_non_neighbors(complete(3), {1}) == set()

    def test_path(self):
        assert common_non_neighbors(path3(), {1}) == {3}

    def test_edgeless_pair(self):
        g = Graph.from_edges(4, [])
        assert common_non_neighbors(g, {1, 2}) == {3, 4}

    def test_empty_set_returns_everything(self):
        assert common_non_neighbors(path3(), set()) == {1, 2, 3}

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            common_non_neighbors(path3(), {9})


class TestDegreeStats:
    def test_cycle_codegree(self):
        c4 = Graph.from_edges(4, [(1, 2), (2, 3), (3, 4), (1, 4)])
        assert degree_stats(c4).codegree(1, 3) == 2

    def test_complete_degrees(self):
        stats = degree_stats(complete(5))
        assert stats.degrees == (4, 4, 4, 4, 4)

    def test_edgeless_max_degree(self):
        assert degree_stats(Graph.from_edges(6, [])).max_degree == 0


class TestEdgeListFormat:
    def test_roundtrip(self):
        g = sample_gnp(40, 0.3, seed=11)
        buf = io.StringIO()
        write_edge_list(g, buf)
        buf.seek(0)
        assert read_edge_list(buf) == g

    @pytest.mark.parametrize(
        "text",
        [
            "2 1\n1 1\n",  # self-loop
            "2 1\n2 1\n",  # u > v
            "2 1\n1 3\n",  # out of range
            "3 2\n1 2\n1 2\n",  # duplicate
            "3 2\n1 2\n",  # count mismatch
            "oops\n",  # bad header
        ],
    )
    def test_rejects_malformed(self, text):
        with pytest.raises(ValueError):
            read_edge_list(io.StringIO(text))


class TestGraphBasics:
    def test_induced_relabels(self):
        g = Graph.from_edges(5, [(1, 3), (3, 5), (2, 4)])
        sub, order = g.induced([1, 3, 5])
        assert order == [1, 3, 5]
        assert sub.n == 3 and sorted(sub.edges()) == [(1, 2), (2, 3)]

    def test_constructor_validates(self):
        with pytest.raises(ValueError):
            Graph(2, [0, 0b100, 0])  # asymmetric
        with pytest.raises(ValueError):
            Graph(2, [0, 0b010, 0])  # self loop
