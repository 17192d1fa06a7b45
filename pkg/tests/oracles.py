"""Brute-force reference implementations used only by the tests.

Everything here enumerates subsets or assignments outright, with no shared
code paths into the library; the library must agree with these on small
instances.
"""

from __future__ import annotations

from itertools import product

from cliquechrom.graph import Graph


def subset_is_clique(g: Graph, mask: int) -> bool:
    vs = [v for v in range(1, g.n + 1) if mask >> v & 1]
    return all(g.has_edge(u, v) for i, u in enumerate(vs) for v in vs[i + 1 :])


def subset_is_maximal_clique(g: Graph, mask: int) -> bool:
    if mask == 0 or not subset_is_clique(g, mask):
        return False
    for v in range(1, g.n + 1):
        if mask >> v & 1:
            continue
        if mask & ~g.adj[v] == 0:  # v adjacent to the whole subset
            return False
    return True


def brute_maximal_cliques(g: Graph) -> set[frozenset[int]]:
    """All maximal cliques by checking every one of the 2^n subsets."""
    out = set()
    for raw in range(1, 1 << g.n):
        mask = raw << 1  # vertex v lives at bit v
        if subset_is_maximal_clique(g, mask):
            out.add(frozenset(v for v in range(1, g.n + 1) if mask >> v & 1))
    return out


def brute_monochromatic_maximal(g: Graph, colors: tuple[int, ...]) -> set[frozenset[int]]:
    """Maximal cliques of size >= 2 that sit inside one color class."""
    out = set()
    for clique in brute_maximal_cliques(g):
        if len(clique) < 2:
            continue
        if len({colors[v - 1] for v in clique}) == 1:
            out.add(clique)
    return out


def brute_is_valid(g: Graph, colors: tuple[int, ...]) -> bool:
    return not brute_monochromatic_maximal(g, colors)


def brute_clique_chromatic(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Exact clique chromatic number by trying every assignment, palette
    sizes 1, 2, ... in lexicographic order. Tiny n only."""
    if g.n == 0:
        return 0, ()
    q = 1
    while True:
        for assignment in product(range(1, q + 1), repeat=g.n):
            if brute_is_valid(g, assignment):
                return q, assignment
        q += 1


def brute_chromatic(g: Graph) -> int:
    """Exact ordinary chromatic number, same exhaustive scheme."""
    if g.n == 0:
        return 0
    q = 1
    while True:
        for assignment in product(range(1, q + 1), repeat=g.n):
            if all(assignment[u - 1] != assignment[v - 1] for u, v in g.edges()):
                return q
        q += 1
