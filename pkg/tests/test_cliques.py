"""Maximal-clique enumeration, maximality tests, extension, dominating search."""

import random

import pytest

from cliquechrom.cliques import (
    enumerate_maximal_cliques,
    extend_to_maximal,
    find_clique_dominating_outside,
    is_maximal_clique,
)
from cliquechrom.graph import Graph, sample_gnp

from oracles import brute_maximal_cliques


def complete(n):
    return Graph.from_edges(n, [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)])


class TestEnumeration:
    def test_triangle(self):
        assert set(enumerate_maximal_cliques(complete(3))) == {frozenset({1, 2, 3})}

    def test_path(self):
        g = Graph.from_edges(3, [(1, 2), (2, 3)])
        assert set(enumerate_maximal_cliques(g)) == {frozenset({1, 2}), frozenset({2, 3})}

    def test_isolated_vertices_are_emitted(self):
        g = Graph.from_edges(3, [(1, 2)])
        assert frozenset({3}) in set(enumerate_maximal_cliques(g))

    def test_limit(self):
        g = Graph.from_edges(4, [(1, 2), (3, 4)])
        assert len(list(enumerate_maximal_cliques(g, limit=1))) == 1

    def test_matches_brute_force_on_random_graphs(self):
        rng = random.Random(1)
        for _ in range(120):
            n = rng.randint(1, 12)
            g = sample_gnp(n, rng.choice([0.2, 0.5, 0.8]), seed=rng.randrange(2**32))
            assert set(enumerate_maximal_cliques(g)) == brute_maximal_cliques(g)

    def test_output_duplicate_free_and_maximal(self):
        for seed in range(40):
            g = sample_gnp(11, 0.5, seed=seed)
            cliques = list(enumerate_maximal_cliques(g))
            assert len(cliques) == len(set(cliques))
            for k in cliques:
                assert is_maximal_clique(g, k)


class TestMaximality:
    def test_strict_subset_of_k4(self):
        assert not is_maximal_clique(complete(4), {1, 2, 3})

    def test_k4_itself(self):
        assert is_maximal_clique(complete(4), {1, 2, 3, 4})

    def test_path_edge(self):
        g = Graph.from_edges(3, [(1, 2), (2, 3)])
        assert is_maximal_clique(g, {1, 2})

    def test_non_clique(self):
        g = Graph.from_edges(3, [(1, 2), (2, 3)])
        assert not is_maximal_clique(g, {1, 3})


class TestExtension:
    def test_k4_from_pair(self):
        assert extend_to_maximal(complete(4), {1, 2}) == frozenset({1, 2, 3, 4})

    def test_already_maximal(self):
        g = Graph.from_edges(3, [(1, 2), (2, 3)])
        assert extend_to_maximal(g, {2, 3}) == frozenset({2, 3})

    def test_rejects_non_clique(self):
        g = Graph.from_edges(3, [(1, 2), (2, 3)])
        with pytest.raises(ValueError):
            extend_to_maximal(g, {1, 3})

    def test_prefers_unforbidden_but_stays_maximal(self):
        # 3 is taken only after the unforbidden pool dries up
        got = extend_to_maximal(complete(4), {1, 2}, forbidden={3})
        assert got == frozenset({1, 2, 3, 4})

    def test_output_always_maximal(self):
        rng = random.Random(7)
        for _ in range(60):
            g = sample_gnp(10, 0.5, seed=rng.randrange(2**32))
            v = rng.randint(1, 10)
            got = extend_to_maximal(g, {v})
            assert is_maximal_clique(g, got)


class TestDominatingSearch:
    def test_near_k4_has_none(self):
        g = Graph.from_edges(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)])
        assert find_clique_dominating_outside(g, {3, 4}) is None

    def test_disjoint_triangles(self):
        g = Graph.from_edges(6, [(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6)])
        assert find_clique_dominating_outside(g, {1, 2, 3}) == frozenset({1, 2, 3})

    def test_isolated_vertex(self):
        g = Graph.from_edges(1, [])
        assert find_clique_dominating_outside(g, {1}) == frozenset({1})

    def test_result_extends_inside_w(self):
        rng = random.Random(3)
        for _ in range(40):
            g = sample_gnp(14, 0.4, seed=rng.randrange(2**32))
            w = {v for v in range(1, 15) if rng.random() < 0.5}
            got = find_clique_dominating_outside(g, w, seed=1)
            if got is None:
                continue
            assert got <= w
            assert extend_to_maximal(g, got) <= w
            assert is_maximal_clique(g, got)
            outside = set(range(1, 15)) - w
            for v in outside:
                assert any(not g.has_edge(v, u) for u in got)
