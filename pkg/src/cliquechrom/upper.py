"""Two-phase upper-bound coloring procedures plus a validity repair loop.

Both procedures share the greedy first phase: walk v_1..v_s in vertex order,
give color i to every still-uncolored neighbor of v_i, then give the
uncolored part of {v_1..v_s} color s+1. Every vertex colored i <= s is
adjacent to v_i, so no maximal clique fits inside those classes; class s+1
is independent. Any monochromatic maximal clique must therefore live in the
leftover set N, which the two variants color differently:

  variant A: N splits into z = ceil(4/p) contiguous blocks, one fresh color
             each, giving the structural palette bound s + z + 1;
  variant B: z = ceil(8/(p sqrt(log n))); the induced leftover graph is
             recursively colored by variant A and that palette is folded
             (round-robin) into z fresh colors, overflow flagged.

The guarantees behind these choices are asymptotic; at finite n a
monochromatic maximal clique can survive, so `repair` recolors its smallest
vertex with a fresh color until the coloring is valid or a budget runs out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .cliques import maximal_cliques_within
from .coloring import Coloring, monochromatic_maximal_cliques
from .graph import Graph, iter_bits
from .params import class_count

__all__ = [
    "GreedyPhase",
    "greedy_phase",
    "ProcedureReport",
    "procedure_A",
    "procedure_B",
    "RepairResult",
    "repair",
    "variant_a_palette_cap",
]


@dataclass(frozen=True)
class GreedyPhase:
    assignment: tuple[int, ...]  # 0 = still uncolored; index = vertex - 1
    s_vertices: tuple[int, ...]
    leftover: tuple[int, ...]  # N, ascending


def greedy_phase(g: Graph, s: int) -> GreedyPhase:
    """First-phase coloring with pivots v_1..v_s (vertex order); colors 1..s+1."""
    if not 0 <= s <= g.n:
        raise ValueError(f"s must lie in [0, {g.n}]")
    assignment = [0] * (g.n + 1)
    uncolored = g.all_bits
    for i in range(1, s + 1):
        grab = uncolored & g.adj[i]
        for v in iter_bits(grab):
            assignment[v] = i
        uncolored &= ~grab
    s_bits = ((1 << s) - 1) << 1 if s else 0
    for v in iter_bits(uncolored & s_bits):
        assignment[v] = s + 1
    uncolored &= ~s_bits
    return GreedyPhase(
        assignment=tuple(assignment[1:]),
        s_vertices=tuple(range(1, s + 1)),
        leftover=tuple(iter_bits(uncolored)),
    )


@dataclass(frozen=True)
class ProcedureReport:
    variant: str
    n: int
    p: float
    delta: float
    delta_raw: float
    delta_clamped: bool
    s: int
    z: int
    leftover: int
    leftover_window_ok: bool  # |N| within [n^(1-delta)/2, 2 n^(1-delta)]
    palette: int
    palette_cap: int  # s + z + 1
    mono_pre_repair: int
    cap_overflow: bool  # variant B only: inner coloring needed > z colors

    def to_dict(self) -> dict:
        return {
            "variant": self.variant,
            "n": self.n,
            "p": self.p,
            "delta": self.delta,
            "delta_raw": self.delta_raw,
            "delta_clamped": self.delta_clamped,
            "s": self.s,
            "z": self.z,
            "leftover": self.leftover,
            "leftover_window_ok": self.leftover_window_ok,
            "palette": self.palette,
            "palette_cap": self.palette_cap,
            "mono_pre_repair": self.mono_pre_repair,
            "cap_overflow": self.cap_overflow,
        }


def _variant_a_delta(n: int, p: float) -> tuple[float, float, bool]:
    """delta = 1/2 - rho/2 + rho^2/(1-lambda) + lambda with
    lambda = 6 loglog(n)/log(n); clamped to 1/2 outside (0, 1)."""
    if n < 3:
        return 0.5, math.nan, True
    ln_n = math.log(n)
    rho = math.log(1.0 / p) / ln_n
    lam = 6.0 * math.log(ln_n) / ln_n
    raw = 0.5 - rho / 2.0 + rho * rho / (1.0 - lam) + lam
    if 0.0 < raw < 1.0:
        return raw, raw, False
    return 0.5, raw, True


def variant_a_palette_cap(n: int, p: float) -> int:
    """Structural bound s + z + 1 for variant A at this (n, p)."""
    delta, _, _ = _variant_a_delta(n, p)
    s = min(max(class_count(n, p, delta), 0), n)
    return s + math.ceil(4.0 / p) + 1


def _leftover_window_ok(n: int, delta: float, leftover: int) -> bool:
    target = n ** (1.0 - delta)
    return 0.5 * target <= leftover <= 2.0 * target


def _count_mono(g: Graph, c: Coloring) -> int:
    return len(monochromatic_maximal_cliques(g, c))


def procedure_A(g: Graph, p: float) -> tuple[Coloring, ProcedureReport]:
    """Greedy phase plus a z = ceil(4/p) way split of the leftover.

    Fully deterministic; the palette never exceeds s + z + 1 regardless of
    the graph. The report carries the pre-repair monochromatic-clique count,
    so validity failures are visible, not silent.
    """
    if not 0.0 < p < 1.0:
        raise ValueError("p must lie in (0, 1)")
    delta, raw, clamped = _variant_a_delta(g.n, p)
    s = min(max(class_count(g.n, p, delta), 0), g.n)
    z = math.ceil(4.0 / p)
    phase = greedy_phase(g, s)
    assignment = list(phase.assignment)
    blocks = _split_blocks(phase.leftover, z)
    for i, block in enumerate(blocks, start=1):
        for v in block:
            assignment[v - 1] = s + 1 + i
    coloring = Coloring(tuple(assignment))
    report = ProcedureReport(
        variant="A",
        n=g.n,
        p=p,
        delta=delta,
        delta_raw=raw,
        delta_clamped=clamped,
        s=s,
        z=z,
        leftover=len(phase.leftover),
        leftover_window_ok=_leftover_window_ok(g.n, delta, len(phase.leftover)),
        palette=coloring.palette_size,
        palette_cap=s + z + 1,
        mono_pre_repair=_count_mono(g, coloring),
        cap_overflow=False,
    )
    return coloring, report


def _split_blocks(items: tuple[int, ...], z: int) -> list[list[int]]:
    """Split into z contiguous blocks in the given order, sizes as equal as
    possible (never exceeding 2 len/z for len >= z)."""
    blocks: list[list[int]] = []
    total = len(items)
    base, extra = divmod(total, z)
    at = 0
    for i in range(z):
        width = base + (1 if i < extra else 0)
        blocks.append(list(items[at : at + width]))
        at += width
    return blocks


def procedure_B(
    g: Graph, p: float, epsilon: Optional[float] = None
) -> tuple[Coloring, ProcedureReport]:
    """Variant for p = n^(-2/5 + epsilon): greedy phase with delta = 5 eps/2,
    then the induced leftover graph is colored by variant A with its palette
    folded round-robin into z = ceil(8/(p sqrt(log n))) fresh colors.

    Omitting epsilon derives it from p; it must come out positive. Folding a
    too-large inner palette (cap_overflow in the report) can merge classes,
    which the repair loop cleans up afterwards.
    """
    if not 0.0 < p < 1.0:
        raise ValueError("p must lie in (0, 1)")
    ln_n = math.log(g.n)
    rho = math.log(1.0 / p) / ln_n
    if epsilon is None:
        epsilon = 0.4 - rho
    if epsilon <= 0.0:
        raise ValueError("epsilon must be positive (p must exceed n^(-2/5))")
    raw = 2.5 * epsilon
    clamped = not (0.0 < raw < 1.0)
    delta = min(max(raw, 0.01), 0.99) if clamped else raw
    s = min(max(class_count(g.n, p, delta), 0), g.n)
    z = math.ceil(8.0 / (p * math.sqrt(ln_n)))

    phase = greedy_phase(g, s)
    assignment = list(phase.assignment)
    cap_overflow = False
    if phase.leftover:
        sub, order = g.induced(phase.leftover)
        if sub.n >= 3:
            inner, _ = procedure_A(sub, p)
            inner_colors = inner.colors
        else:
            inner_colors = tuple(range(1, sub.n + 1))
        palette_needed = len(set(inner_colors))
        cap_overflow = palette_needed > z
        for idx, inner_color in enumerate(inner_colors):
            assignment[order[idx] - 1] = s + 1 + ((inner_color - 1) % z) + 1
    coloring = Coloring(tuple(assignment))
    report = ProcedureReport(
        variant="B",
        n=g.n,
        p=p,
        delta=delta,
        delta_raw=raw,
        delta_clamped=clamped,
        s=s,
        z=z,
        leftover=len(phase.leftover),
        leftover_window_ok=_leftover_window_ok(g.n, delta, len(phase.leftover)),
        palette=coloring.palette_size,
        palette_cap=s + z + 1,
        mono_pre_repair=_count_mono(g, coloring),
        cap_overflow=cap_overflow,
    )
    return coloring, report


@dataclass(frozen=True)
class RepairResult:
    coloring: Coloring
    extra_colors: int
    recolored: tuple[int, ...]
    exhausted: bool
    remaining_mono: int  # first monochromatic cliques still present on exhaustion

    def to_dict(self) -> dict:
        return {
            "extra_colors": self.extra_colors,
            "recolored": list(self.recolored),
            "exhausted": self.exhausted,
            "remaining_mono": self.remaining_mono,
        }


def repair(g: Graph, c: Coloring, budget: int = 1000) -> RepairResult:
    """Recolor until no monochromatic maximal clique of size >= 2 remains.

    Each step takes one offending clique and moves its smallest vertex to a
    brand-new color. The new class is a singleton (harmless) and the old
    class loses every offending clique through that vertex, so the count of
    monochromatic maximal cliques strictly decreases; the loop ends with a
    valid coloring or an explicit exhaustion report after `budget` recolors.
    """
    if c.n != g.n:
        raise ValueError("coloring does not cover the graph")
    assignment = list(c.colors)
    fresh = max(assignment, default=0)
    recolored: list[int] = []
    class_bits = Coloring(tuple(assignment)).class_bits()
    pending = sorted(class_bits)
    exhausted = False
    while pending and not exhausted:
        color = pending.pop(0)
        members = class_bits.get(color, 0)
        while True:
            kb = next(
                (
                    kb
                    for kb in maximal_cliques_within(g, members)
                    if kb.bit_count() >= 2
                ),
                None,
            )
            if kb is None:
                break
            if len(recolored) >= budget:
                exhausted = True
                break
            victim = (kb & -kb).bit_length() - 1
            fresh += 1
            assignment[victim - 1] = fresh
            members &= ~(1 << victim)
            recolored.append(victim)

    result = Coloring(tuple(assignment))
    remaining = (
        len(monochromatic_maximal_cliques(g, result, limit=100)) if exhausted else 0
    )
    return RepairResult(
        coloring=result,
        extra_colors=len(set(assignment)) - len(set(c.colors)),
        recolored=tuple(recolored),
        exhausted=exhausted,
        remaining_mono=remaining,
    )
