"""Clique-coloring validity and the exact solver."""

import io
import random

import pytest

from cliquechrom.coloring import (
    BudgetExceeded,
    Coloring,
    exact_chromatic_number,
    exact_clique_chromatic_number,
    is_valid_clique_coloring,
    monochromatic_maximal_cliques,
    read_coloring,
    write_coloring,
)
from cliquechrom.graph import Graph, sample_gnp

from oracles import brute_clique_chromatic, brute_is_valid, brute_monochromatic_maximal


def complete(n):
    return Graph.from_edges(n, [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)])


def petersen():
    outer = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]
    spokes = [(1, 6), (2, 7), (3, 8), (4, 9), (5, 10)]
    inner = [(6, 8), (8, 10), (10, 7), (7, 9), (9, 6)]
    return Graph.from_edges(10, outer + spokes + inner)


class TestValidity:
    def test_monochromatic_triangle(self):
        got = monochromatic_maximal_cliques(complete(3), Coloring((1, 1, 1)))
        assert got == [frozenset({1, 2, 3})]

    @pytest.mark.parametrize("n", [3, 5, 8])
    def test_two_colors_suffice_on_complete_graph(self, n):
        colors = (1,) + (2,) * (n - 1)
        assert monochromatic_maximal_cliques(complete(n), Coloring(colors)) == []

    def test_isolated_vertices_ignored(self):
        g = Graph.from_edges(4, [])
        assert monochromatic_maximal_cliques(g, Coloring((1, 1, 1, 1))) == []

    def test_rejects_partial_coloring(self):
        with pytest.raises(ValueError):
            monochromatic_maximal_cliques(complete(3), Coloring((1, 1)))

    def test_limit(self):
        g = Graph.from_edges(4, [(1, 2), (3, 4)])
        got = monochromatic_maximal_cliques(g, Coloring((1, 1, 1, 1)), limit=1)
        assert len(got) == 1

    def test_decision_matches_brute_force(self):
        rng = random.Random(11)
        for _ in range(150):
            n = rng.randint(1, 8)
            g = sample_gnp(n, rng.choice([0.25, 0.5, 0.75]), seed=rng.randrange(2**32))
            colors = tuple(rng.randint(1, 3) for _ in range(n))
            got = set(monochromatic_maximal_cliques(g, Coloring(colors)))
            assert got == brute_monochromatic_maximal(g, colors)
            assert is_valid_clique_coloring(g, Coloring(colors)) == brute_is_valid(g, colors)


class TestExactSolver:
    @pytest.mark.parametrize("n", range(2, 11))
    def test_complete_graphs_need_two(self, n):
        value, witness = exact_clique_chromatic_number(complete(n))
        assert value == 2
        assert is_valid_clique_coloring(complete(n), witness)

    def test_c5_needs_three(self):
        c5 = Graph.from_edges(5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)])
        value, witness = exact_clique_chromatic_number(c5)
        # independent oracle: exhaustive search over all assignments
        assert brute_clique_chromatic(c5)[0] == 3
        assert value == 3
        assert is_valid_clique_coloring(c5, witness)
        # triangle-free, so the ordinary chromatic number agrees
        assert exact_chromatic_number(c5)[0] == 3

    def test_petersen_needs_three(self):
        g = petersen()
        value, witness = exact_clique_chromatic_number(g)
        assert value == 3
        assert is_valid_clique_coloring(g, witness)
        assert exact_chromatic_number(g)[0] == 3  # triangle-free: chi_c = chi

    def test_edgeless_and_empty(self):
        assert exact_clique_chromatic_number(Graph.from_edges(4, []))[0] == 1
        assert exact_clique_chromatic_number(Graph(0, [0]))[0] == 0

    def test_single_edge_needs_two(self):
        value, _ = exact_clique_chromatic_number(Graph.from_edges(2, [(1, 2)]))
        assert value == 2

    def test_never_exceeds_chromatic_number(self):
        rng = random.Random(23)
        for _ in range(40):
            n = rng.randint(2, 10)
            g = sample_gnp(n, rng.choice([0.3, 0.5, 0.7]), seed=rng.randrange(2**32))
            cc, _ = exact_clique_chromatic_number(g)
            chi, _ = exact_chromatic_number(g)
            assert cc <= chi

    def test_any_edge_forces_two(self):
        rng = random.Random(5)
        for _ in range(30):
            g = sample_gnp(rng.randint(2, 9), 0.4, seed=rng.randrange(2**32))
            value, _ = exact_clique_chromatic_number(g)
            assert value >= (2 if g.edge_count else 1)

    def test_witness_matches_brute_lexicographic_minimum(self):
        rng = random.Random(31)
        for _ in range(25):
            n = rng.randint(2, 6)
            g = sample_gnp(n, 0.5, seed=rng.randrange(2**32))
            value, witness = exact_clique_chromatic_number(g)
            brute_value, brute_witness = brute_clique_chromatic(g)
            assert value == brute_value
            assert witness.colors == brute_witness

    def test_budget_exceeded_is_distinct(self):
        with pytest.raises(BudgetExceeded):
            exact_clique_chromatic_number(petersen(), budget=5)


class TestColoringIO:
    def test_roundtrip(self):
        c = Coloring((1, 2, 1, 3))
        buf = io.StringIO()
        write_coloring(c, buf)
        buf.seek(0)
        assert read_coloring(buf) == c

    def test_rejects_double_assignment(self):
        with pytest.raises(ValueError):
            read_coloring(io.StringIO("1 1\n1 2\n"))

    def test_rejects_gap(self):
        with pytest.raises(ValueError):
            read_coloring(io.StringIO("1 1\n3 2\n"))

    def test_palette_and_classes(self):
        c = Coloring((1, 2, 1))
        assert c.palette_size == 2
        assert c.classes() == {1: {1, 3}, 2: {2}}
