"""Colorings, clique-coloring validity, and exact desk-scale solvers.

A coloring is valid when no inclusion-maximal clique of size >= 2 is
monochromatic; isolated vertices are ignored. The exact solver enumerates
the maximal cliques once and backtracks over canonical color assignments
(colors appear in first-use order, so vertex 1 always has color 1), which
makes the returned witness the lexicographically least valid assignment.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence, TextIO

from .cliques import enumerate_maximal_cliques, maximal_cliques_within
from .graph import Graph, bits_of, iter_bits

__all__ = [
    "Coloring",
    "BudgetExceeded",
    "monochromatic_maximal_cliques",
    "is_valid_clique_coloring",
    "exact_clique_chromatic_number",
    "exact_chromatic_number",
    "read_coloring",
    "write_coloring",
]


class BudgetExceeded(Exception):
    """Exact search ran out of its node budget before finishing."""

    def __init__(self, nodes: int):
        super().__init__(f"search budget exhausted after {nodes} nodes")
        self.nodes = nodes


@dataclass(frozen=True)
class Coloring:
    """Total map vertex -> color id, stored as a tuple indexed by vertex-1."""

    colors: tuple[int, ...]

    @classmethod
    def from_sequence(cls, colors: Sequence[int]) -> "Coloring":
        return cls(tuple(int(c) for c in colors))

    @classmethod
    def from_mapping(cls, n: int, mapping: Mapping[int, int]) -> "Coloring":
        if set(mapping) != set(range(1, n + 1)):
            raise ValueError("coloring must assign every vertex in [1, n] exactly once")
        return cls(tuple(mapping[v] for v in range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.colors)

    def color_of(self, v: int) -> int:
        return self.colors[v - 1]

    @property
    def palette_size(self) -> int:
        return len(set(self.colors))

    def classes(self) -> dict[int, set[int]]:
        out: dict[int, set[int]] = {}
        for v, c in enumerate(self.colors, start=1):
            out.setdefault(c, set()).add(v)
        return out

    def class_bits(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for v, c in enumerate(self.colors, start=1):
            out[c] = out.get(c, 0) | (1 << v)
        return out


def _require_total(g: Graph, c: Coloring) -> None:
    if c.n != g.n:
        raise ValueError(f"coloring covers {c.n} vertices, graph has {g.n}")


def monochromatic_maximal_cliques(
    g: Graph, c: Coloring, limit: Optional[int] = None
) -> list[frozenset[int]]:
    """Inclusion-maximal cliques of size >= 2 whose vertices share one color.

    Empty result <=> c is a valid clique coloring. Rejects colorings that do
    not cover every vertex.
    """
    _require_total(g, c)
    out: list[frozenset[int]] = []
    for _color, members in sorted(c.class_bits().items()):
        for kb in maximal_cliques_within(g, members):
            if kb.bit_count() >= 2:
                out.append(frozenset(iter_bits(kb)))
                if limit is not None and len(out) >= limit:
                    return out
    return out


def is_valid_clique_coloring(g: Graph, c: Coloring) -> bool:
    return not monochromatic_maximal_cliques(g, c, limit=1)


# -- Exact solvers ------------------------------------------------------------


def _solve_hypergraph_coloring(
    n: int, cliques: list[int], budget: int
) -> tuple[int, Coloring]:
    """Smallest palette such that no clique bitset is monochromatic, found by
    canonical backtracking over palette sizes 1, 2, ...

    `budget` counts assignment attempts across the whole search.
    """
    if n == 0:
        return 0, Coloring(())
    if not cliques:
        return 1, Coloring((1,) * n)

    # For each vertex, the cliques it completes (it is the largest member).
    closing: list[list[int]] = [[] for _ in range(n + 1)]
    for kb in cliques:
        closing[kb.bit_length() - 1].append(kb)

    nodes = 0

    def search(q: int) -> Optional[list[int]]:
        nonlocal nodes
        assignment = [0] * (n + 1)

        def rec(v: int, used: int) -> bool:
            nonlocal nodes
            if v > n:
                return True
            cap = min(q, used + 1)  # canonical: at most one brand-new color
            for color in range(1, cap + 1):
                nodes += 1
                if nodes > budget:
                    raise BudgetExceeded(nodes)
                assignment[v] = color
                ok = True
                for kb in closing[v]:
                    mono = True
                    rest = kb & ~(1 << v)
                    while rest:
                        low = rest & -rest
                        rest ^= low
                        if assignment[low.bit_length() - 1] != color:
                            mono = False
                            break
                    if mono:
                        ok = False
                        break
                if ok and rec(v + 1, max(used, color)):
                    return True
            assignment[v] = 0
            return False

        return assignment if rec(1, 0) else None

    q = 1
    while True:
        got = search(q)
        if got is not None:
            return q, Coloring(tuple(got[1:]))
        q += 1


def exact_clique_chromatic_number(
    g: Graph, budget: int = 20_000_000
) -> tuple[int, Coloring]:
    """Exact clique chromatic number with a witness coloring.

    Enumerates the maximal cliques of size >= 2 once, then backtracks.
    Intended for n up to roughly 30; raises BudgetExceeded rather than
    returning a wrong number when the budget runs out. The edgeless graph
    has value 1 (0 when there are no vertices at all).
    """
    cliques = [bits_of(k) for k in enumerate_maximal_cliques(g) if len(k) >= 2]
    return _solve_hypergraph_coloring(g.n, cliques, budget)


def exact_chromatic_number(g: Graph, budget: int = 20_000_000) -> tuple[int, Coloring]:
    """Exact ordinary chromatic number (no monochromatic edge), same engine."""
    edges = [(1 << u) | (1 << v) for u, v in g.edges()]
    return _solve_hypergraph_coloring(g.n, edges, budget)


# -- File format ---------------------------------------------------------------


def write_coloring(c: Coloring, fh: TextIO) -> None:
    """One "vertex color" line per vertex."""
    for v in range(1, c.n + 1):
        fh.write(f"{v} {c.color_of(v)}\n")


def read_coloring(fh: TextIO, n: Optional[int] = None) -> Coloring:
    """Parse "vertex color" lines; must cover 1..n exactly once.

    When n is None it is taken to be the largest vertex id present.
    """
    mapping: dict[int, int] = {}
    for line in fh:
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"malformed coloring line: {line!r}")
        v, color = int(parts[0]), int(parts[1])
        if v in mapping:
            raise ValueError(f"vertex {v} colored twice")
        if color < 0:
            raise ValueError(f"negative color id {color}")
        mapping[v] = color
    if n is None:
        n = max(mapping, default=0)
    return Coloring.from_mapping(n, mapping)
