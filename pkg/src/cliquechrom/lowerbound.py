"""Lower-bound certification pipeline.

Given a coloring with few classes, the pipeline hunts for a monochromatic
inclusion-maximal clique inside one class: pick a promising ("useful") class
W, randomly split most of it into parts A, B_1..B_m so that each of the m
highest-A-degree outside vertices misses one part, and sample k-sets with
k-m vertices in A and one in each B_i. Such a set that happens to be a
clique and has no common neighbor outside W extends to a maximal clique
inside W, certifying that the coloring is not a valid clique coloring.

The thresholds the asymptotic argument uses (ell_1, usefulness) are usually
unattainable at desk scale; every entry point therefore accepts a `relax`
fraction that replaces ell_1(W) by relax*|W|. Relaxation is always recorded
in the outputs, never silent.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator, Optional

import numpy as np

from .cliques import extend_to_maximal, find_clique_dominating_outside, is_maximal_clique
from .coloring import Coloring
from .graph import Graph, bits_of, iter_bits
from .params import ParamSchedule, lambda_report

__all__ = [
    "ell1",
    "is_useful",
    "Selection",
    "select_useful_class",
    "PartitionWitness",
    "PartitionError",
    "pseudo_partition",
    "validate_witness",
    "CandidateReport",
    "classify_and_count",
    "enumerate_candidates",
    "DensityReport",
    "check_density_events",
    "CertifyReport",
    "certify",
]


def ell1(w: Iterable[int], sch: ParamSchedule) -> float:
    """Non-neighbor threshold ell_1(W) = max((1-tau) n^(1-delta)/s, |W| - 2np).

    A degenerate tau (>= 1) zeroes out the first branch; a degenerate s
    (< 1) is treated as 1 so the formula stays finite. ell_1(emptyset) is
    the schedule's ell0.
    """
    size = len(w) if hasattr(w, "__len__") else sum(1 for _ in w)
    return _ell1_size(size, sch)


def _ell1_size(size: int, sch: ParamSchedule) -> float:
    if sch.tau < 1.0:
        first = (1.0 - sch.tau) * sch.n ** (1.0 - sch.delta) / max(sch.s, 1)
    else:
        first = -math.inf
    return max(first, size - 2.0 * sch.n * sch.p)


def _threshold(size: int, sch: ParamSchedule, relax: Optional[float]) -> float:
    if relax is not None:
        if not 0.0 < relax <= 1.0:
            raise ValueError("relax fraction must lie in (0, 1]")
        return relax * size
    return _ell1_size(size, sch)


def is_useful(
    g: Graph, w: Iterable[int], sch: ParamSchedule, relax: Optional[float] = None
) -> bool:
    """True iff |V \\ W| >= max(s-1, 1) and every outside vertex has at least
    ell_1(W) non-neighbors in W (relax*|W| instead when relax is given)."""
    wb = bits_of(w)
    if wb & ~g.all_bits:
        raise ValueError("w contains ids outside [1, n]")
    outside = g.all_bits & ~wb
    if outside.bit_count() < max(sch.s - 1, 1):
        return False
    size = wb.bit_count()
    need = _threshold(size, sch, relax)
    for v in iter_bits(outside):
        if size - (g.adj[v] & wb).bit_count() < need:
            return False
    return True


# -- Useful-class selection ------------------------------------------------------


@dataclass(frozen=True)
class Selection:
    """Evidence for the chosen color class: the per-class minimizers S, their
    mutual non-neighbors N, and the winning class."""

    class_color: int
    s_vertices: tuple[int, ...]
    non_neighbors: frozenset[int]
    overlap: int  # |W_j cap N|
    average: float  # |N| / number of classes
    class_count: int
    class_count_ok: bool  # class count <= schedule's s
    relax: Optional[float]


def select_useful_class(
    g: Graph, c: Coloring, sch: ParamSchedule, relax: Optional[float] = None
) -> Optional[Selection]:
    """Pick the class the lower-bound argument would interrogate.

    For each class W_i take a vertex v_i outside W_i with the fewest
    non-neighbors in W_i (ties: smallest id); let N be the mutual
    non-neighbors of S = {v_1, ...}. Among classes with |W_j cap N| at least
    the average |N|/#classes, the one with the largest overlap (ties:
    smallest color) that is useful wins. Returns None when no such class is
    useful, a legitimate desk-scale outcome.

    A coloring with more classes than the schedule's s is processed anyway
    (the averaging bound still holds with the actual class count); the
    evidence records `class_count_ok=False` in that case.
    """
    if c.n != g.n:
        raise ValueError("coloring does not cover the graph")
    class_bits = dict(sorted(c.class_bits().items()))
    t = len(class_bits)

    s_vertices: list[int] = []
    for _color, wb in class_bits.items():
        outside = g.all_bits & ~wb
        size = wb.bit_count()
        best_v, best_nonnbrs = None, None
        for v in iter_bits(outside):
            nonnbrs = size - (g.adj[v] & wb).bit_count()
            if best_nonnbrs is None or nonnbrs < best_nonnbrs:
                best_v, best_nonnbrs = v, nonnbrs
        if best_v is not None:
            s_vertices.append(best_v)

    sb = bits_of(s_vertices)
    nb = g.all_bits & ~sb
    for v in s_vertices:
        nb &= ~g.adj[v]
    n_size = nb.bit_count()
    average = n_size / t if t else 0.0

    ranked = sorted(
        (
            (color, wb, (wb & nb).bit_count())
            for color, wb in class_bits.items()
        ),
        key=lambda item: (-item[2], item[0]),
    )
    for color, wb, overlap in ranked:
        if overlap < average:
            break
        if is_useful(g, iter_bits(wb), sch, relax):
            return Selection(
                class_color=color,
                s_vertices=tuple(s_vertices),
                non_neighbors=frozenset(iter_bits(nb)),
                overlap=overlap,
                average=average,
                class_count=t,
                class_count_ok=t <= sch.s,
                relax=relax,
            )
    return None


# -- Pseudo-partition --------------------------------------------------------------


class PartitionError(RuntimeError):
    """All attempts at the randomized partition construction failed."""

    def __init__(self, message: str, failures: dict[str, int]):
        super().__init__(message)
        self.failures = failures


@dataclass(frozen=True)
class PartitionWitness:
    """A realized pseudo-partition A, B_1..B_m of W.

    high_degree_order lists all of V \\ W by |Γ(u) ∩ A| descending (ties by
    id); L is its first m entries, and Γ(u_i) ∩ B_i = ∅ for each i.
    """

    w: frozenset[int]
    a_set: frozenset[int]
    b_sets: tuple[frozenset[int], ...]
    high_degree_order: tuple[int, ...]
    a: int
    b: int
    attempts: int
    failures: dict[str, int]
    ell1_value: float
    relax: Optional[float]

    @property
    def m(self) -> int:
        return len(self.b_sets)

    @property
    def l_set(self) -> tuple[int, ...]:
        return self.high_degree_order[: self.m]


def pseudo_partition(
    g: Graph,
    w: Iterable[int],
    sch: ParamSchedule,
    seed: int,
    max_attempts: int = 200,
    relax: Optional[float] = None,
) -> PartitionWitness:
    """Randomized rounds of the two-stage partition construction.

    Each attempt places every vertex of W independently into A+ (prob 1/2)
    or one of B_1+..B_m+ (prob 1/(2m) each), and is accepted when no count
    in the collection {|A+|} ∪ {|B_i+ \\ Γ(v)|} falls below half its mean.
    The accepted placement is trimmed: A is the lexicographically first
    a = ceil(|W|/4) vertices of A+, and B_i the first b = ceil(ell_1(W)/(4m))
    vertices of B_i+ \\ Γ(u_i). Raises PartitionError with per-condition
    failure counts when max_attempts rounds all fail.
    """
    wb = bits_of(w)
    if wb & ~g.all_bits:
        raise ValueError("w contains ids outside [1, n]")
    members = sorted(iter_bits(wb))
    size = len(members)
    m = sch.m
    outside = g.all_bits & ~wb
    if outside.bit_count() < m:
        raise ValueError(f"need at least m={m} vertices outside w")
    ell = _threshold(size, sch, relax)
    a = math.ceil(size / 4)
    b = math.ceil(ell / (4 * m))
    if b < 1 or a < 1:
        raise PartitionError(
            f"degenerate part sizes a={a}, b={b} (ell_1={ell:.3g}); "
            "use a relax fraction at desk scale",
            {},
        )

    rng = random.Random(seed)
    failures = {"a_plus": 0, "b_plus": 0, "trim": 0}
    for attempt in range(1, max_attempts + 1):
        a_plus = 0
        b_plus = [0] * m
        for v in members:
            slot = rng.randrange(2 * m)
            if slot < m:
                b_plus[slot] |= 1 << v
            else:
                a_plus |= 1 << v

        if a_plus.bit_count() < size / 4:
            failures["a_plus"] += 1
            continue
        ok = True
        for v in iter_bits(outside):
            non_nbr = ~g.adj[v]
            quota = (wb & non_nbr).bit_count() / (4 * m)
            if any((b_plus[i] & non_nbr).bit_count() < quota for i in range(m)):
                ok = False
                break
        if not ok:
            failures["b_plus"] += 1
            continue

        a_bits = _first_bits(a_plus, a)
        order = sorted(
            iter_bits(outside),
            key=lambda u: (-(g.adj[u] & a_bits).bit_count(), u),
        )
        b_bits = []
        for i in range(m):
            pool = b_plus[i] & ~g.adj[order[i]]
            if pool.bit_count() < b:
                b_bits = None
                break
            b_bits.append(_first_bits(pool, b))
        if b_bits is None:
            failures["trim"] += 1
            continue

        witness = PartitionWitness(
            w=frozenset(members),
            a_set=frozenset(iter_bits(a_bits)),
            b_sets=tuple(frozenset(iter_bits(bb)) for bb in b_bits),
            high_degree_order=tuple(order),
            a=a,
            b=b,
            attempts=attempt,
            failures=dict(failures),
            ell1_value=ell,
            relax=relax,
        )
        validate_witness(g, witness)
        return witness

    raise PartitionError(
        f"no acceptable partition in {max_attempts} attempts", failures
    )


def _first_bits(bits: int, count: int) -> int:
    out = 0
    for _ in range(count):
        low = bits & -bits
        out |= low
        bits ^= low
    return out


def validate_witness(g: Graph, pw: PartitionWitness) -> None:
    """Deterministic re-check of every witness invariant; raises on violation."""
    parts = [pw.a_set, *pw.b_sets]
    union: set[int] = set()
    for part in parts:
        if not part <= pw.w:
            raise AssertionError("partition part leaves W")
        if union & part:
            raise AssertionError("partition parts overlap")
        union |= part
    if len(pw.a_set) != pw.a:
        raise AssertionError("|A| != ceil(|W|/4)")
    if any(len(bs) != pw.b for bs in pw.b_sets):
        raise AssertionError("|B_i| != ceil(ell_1/(4m))")
    for i, u in enumerate(pw.l_set):
        if any(g.has_edge(u, x) for x in pw.b_sets[i]):
            raise AssertionError(f"Γ(u_{i+1}) meets B_{i+1}")


# -- Candidate classification -------------------------------------------------------


@dataclass(frozen=True)
class CandidateReport:
    size_cplus: int
    x_set: frozenset[int]
    y_set: frozenset[int]
    z_set: frozenset[int]
    bad_x: int
    bad_y: int
    bad_z: int
    bad_fraction: float
    surviving_fraction: float
    lambda_ratio: float

    @property
    def bad_total(self) -> int:
        return self.bad_x + self.bad_y + self.bad_z


def classify_and_count(
    g: Graph, w: Iterable[int], pw: PartitionWitness, sch: ParamSchedule
) -> CandidateReport:
    """Split V \\ (W ∪ L) into X/Y/Z by the r_1 p degree thresholds and count
    candidate spoilage exactly.

    The bad count accumulates, per outside vertex v, the number of candidate
    sets inside its neighborhood: C(deg_A(v), k-m) * prod_i deg_{B_i}(v).
    This is the union-bound pair count the analytic Lambda ratio bounds.
    """
    wb = bits_of(w)
    ab = bits_of(pw.a_set)
    bbs = [bits_of(bs) for bs in pw.b_sets]
    lb = bits_of(pw.l_set)
    rest = g.all_bits & ~wb & ~lb
    k, m = sch.k, sch.m
    km = k - m
    r1p = sch.r(1) * sch.p

    x_set, y_set, z_set = set(), set(), set()
    bad = {"x": 0, "y": 0, "z": 0}
    for v in iter_bits(rest):
        deg_a = (g.adj[v] & ab).bit_count()
        degs_b = [(g.adj[v] & bb).bit_count() for bb in bbs]
        if deg_a >= r1p * pw.a:
            bucket = "x"
            x_set.add(v)
        elif any(db >= r1p * pw.b for db in degs_b):
            bucket = "y"
            y_set.add(v)
        else:
            bucket = "z"
            z_set.add(v)
        spoiled = math.comb(deg_a, km)
        for db in degs_b:
            spoiled *= db
        bad[bucket] += spoiled

    size_cplus = math.comb(pw.a, km) * pw.b**m
    total_bad = bad["x"] + bad["y"] + bad["z"]
    frac = total_bad / size_cplus if size_cplus else math.inf
    return CandidateReport(
        size_cplus=size_cplus,
        x_set=frozenset(x_set),
        y_set=frozenset(y_set),
        z_set=frozenset(z_set),
        bad_x=bad["x"],
        bad_y=bad["y"],
        bad_z=bad["z"],
        bad_fraction=frac,
        surviving_fraction=max(0.0, 1.0 - frac),
        lambda_ratio=lambda_report(sch).lam,
    )


def enumerate_candidates(pw: PartitionWitness, k: int) -> Iterator[frozenset[int]]:
    """Materialize the candidate family: k-sets with k-m vertices in A and
    one in each B_i. Only sensible on small instances."""
    km = k - pw.m
    a_sorted = sorted(pw.a_set)
    b_sorted = [sorted(bs) for bs in pw.b_sets]
    for core in combinations(a_sorted, km):
        for picks in product(*b_sorted):
            yield frozenset(core + picks)


# -- Density events -------------------------------------------------------------------


@dataclass(frozen=True)
class DensityReport:
    applicable: bool
    u_size: int
    level_ok: bool
    level_violations: tuple[int, ...]
    alpha_ok: Optional[bool]  # m >= 2 only
    alpha_count: Optional[int]
    harmonic_ok: Optional[bool]  # m = 1 only
    harmonic_violations: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return (
            self.level_ok
            and (self.alpha_ok is not False)
            and (self.harmonic_ok is not False)
        )


def check_density_events(
    g: Graph, w: Iterable[int], u: Iterable[int], sch: ParamSchedule
) -> DensityReport:
    """Exact counting of the three outside-degree events for U ⊆ W.

    (level)    for each i >= 1 with r_i p <= 1: at most x_i outside vertices
               have >= r_i p |U| neighbors in U;
    (alpha)    m >= 2: at most m outside vertices have >= alpha |U| neighbors;
    (harmonic) m = 1: for 1 <= j <= 9 log n, at most j outside vertices have
               >= (1/(j+1) + 1/log^3 n)|U| neighbors.

    Sets smaller than ell_0/log^2(n) are flagged not-applicable but counted
    anyway.
    """
    wb = bits_of(w)
    ub = bits_of(u)
    if ub & ~wb:
        raise ValueError("u must be a subset of w")
    u_size = ub.bit_count()
    ln_n = math.log(sch.n)
    applicable = u_size >= sch.ell0 / ln_n**2

    outside = g.all_bits & ~wb
    degs = np.sort(
        np.fromiter(
            ((g.adj[v] & ub).bit_count() for v in iter_bits(outside)),
            dtype=np.int64,
        )
    )
    total = degs.size

    def count_at_least(thresholds: np.ndarray) -> np.ndarray:
        return total - np.searchsorted(degs, thresholds, side="left")

    # Level sets: i >= 1 while r_i p <= 1.
    i_max = math.floor(-math.log(sch.p) / sch.zeta) if sch.p < 1.0 else 0
    level_violations: list[int] = []
    if i_max >= 1:
        i = np.arange(1, i_max + 1, dtype=np.int64)
        r = np.exp(sch.zeta * i.astype(np.float64))
        counts = count_at_least(r * sch.p * u_size)
        x_i = math.log(sch.n) / (_phi_f64(r - 1.0) * sch.p)
        level_violations = [int(ii) for ii in i[counts > x_i]]

    alpha_ok = alpha_count = None
    harmonic_ok: Optional[bool] = None
    harmonic_violations: tuple[int, ...] = ()
    if sch.m >= 2:
        alpha_count = int(count_at_least(np.array([sch.alpha * u_size]))[0])
        alpha_ok = alpha_count <= sch.m
    else:
        j_max = math.floor(9 * ln_n)
        j = np.arange(1, j_max + 1, dtype=np.int64)
        thresholds = (1.0 / (j + 1.0) + 1.0 / ln_n**3) * u_size
        counts = count_at_least(thresholds)
        harmonic_violations = tuple(int(jj) for jj in j[counts > j])
        harmonic_ok = not harmonic_violations

    return DensityReport(
        applicable=applicable,
        u_size=u_size,
        level_ok=not level_violations,
        level_violations=tuple(level_violations),
        alpha_ok=alpha_ok,
        alpha_count=alpha_count,
        harmonic_ok=harmonic_ok,
        harmonic_violations=harmonic_violations,
    )


def _phi_f64(x: np.ndarray) -> np.ndarray:
    return (1.0 + x) * np.log1p(x) - x


# -- End-to-end certification -----------------------------------------------------------


@dataclass(frozen=True)
class CertifyReport:
    found: bool
    clique: Optional[frozenset[int]]
    class_color: Optional[int]
    method: Optional[str]  # "sampled" | "dominating"
    candidates_tested: int
    relax: Optional[float]
    selection: Optional[Selection]
    partition_attempts: int
    validated: bool

    def to_dict(self) -> dict:
        return {
            "found": self.found,
            "clique": sorted(self.clique) if self.clique else None,
            "class_color": self.class_color,
            "method": self.method,
            "candidates_tested": self.candidates_tested,
            "relax": self.relax,
            "class_count_ok": self.selection.class_count_ok if self.selection else None,
            "partition_attempts": self.partition_attempts,
            "validated": self.validated,
        }


_FALLBACK_CLASSES = 3  # dominating-search fallback is tried on this many classes


def certify(
    g: Graph,
    c: Coloring,
    sch: ParamSchedule,
    seed: int,
    budget: int = 10_000,
    relax: Optional[float] = None,
) -> CertifyReport:
    """Hunt for a monochromatic inclusion-maximal clique (size >= 2) in some
    color class of c.

    Pipeline: select a useful class, build a pseudo-partition, sample up to
    `budget` random candidate k-sets from it, keep the first that is a clique
    with no common neighbor outside the class, and extend it to a maximal
    clique inside the class. Classes without a workable partition fall back
    to the exhaustive-then-random dominating-clique search (on at most the
    first few classes, largest first). Not finding anything within budget is
    a legitimate outcome, reported as found=False.
    """
    if c.n != g.n:
        raise ValueError("coloring does not cover the graph")
    rng = random.Random(seed)
    selection = select_useful_class(g, c, sch, relax)
    class_bits = dict(sorted(c.class_bits().items()))
    if selection is not None:
        order = [selection.class_color] + [
            color for color in class_bits if color != selection.class_color
        ]
    else:
        order = [
            color
            for color, _ in sorted(
                class_bits.items(), key=lambda kv: (-kv[1].bit_count(), kv[0])
            )
        ]

    tested = 0
    attempts_total = 0
    for rank, color in enumerate(order):
        wb = class_bits[color]
        outside = g.all_bits & ~wb

        # Sampling path through the pseudo-partition.
        if tested < budget:
            witness = None
            try:
                witness = pseudo_partition(g, iter_bits(wb), sch, seed=rng.randrange(2**63), relax=relax)
            except (PartitionError, ValueError):
                pass
            if witness is not None:
                attempts_total += witness.attempts
                hit, used = _sample_candidates(
                    g, witness, sch, outside, rng, budget - tested
                )
                tested += used
                if hit is not None:
                    return _report(g, c, hit, color, "sampled", tested, relax, selection, attempts_total)

        # Fallback: budgeted dominating-clique search.
        if rank < _FALLBACK_CLASSES:
            found = find_clique_dominating_outside(
                g, iter_bits(wb), k_max=max(sch.k, 6), restarts=1000, seed=seed + rank
            )
            if found is not None and len(found) >= 2:
                return _report(g, c, found, color, "dominating", tested, relax, selection, attempts_total)

    return CertifyReport(
        found=False,
        clique=None,
        class_color=None,
        method=None,
        candidates_tested=tested,
        relax=relax,
        selection=selection,
        partition_attempts=attempts_total,
        validated=False,
    )


def _sample_candidates(
    g: Graph,
    pw: PartitionWitness,
    sch: ParamSchedule,
    outside: int,
    rng: random.Random,
    budget: int,
) -> tuple[Optional[frozenset[int]], int]:
    km = sch.k - sch.m
    a_list = sorted(pw.a_set)
    b_lists = [sorted(bs) for bs in pw.b_sets]
    if km < 0 or len(a_list) < km or any(not bl for bl in b_lists):
        return None, 0
    wb = bits_of(pw.w)
    for used in range(1, budget + 1):
        picks = rng.sample(a_list, km) + [rng.choice(bl) for bl in b_lists]
        kb = bits_of(picks)
        if kb.bit_count() < 2:
            continue
        clique = True
        for v in picks:
            if kb & ~g.adj[v] & ~(1 << v):
                clique = False
                break
        if not clique:
            continue
        cn = g.all_bits
        for v in picks:
            cn &= g.adj[v]
        if cn & outside:
            continue  # some outside vertex dominates the candidate
        grown = extend_to_maximal(g, picks, forbidden=iter_bits(outside))
        return grown, used
    return None, budget


def _report(
    g: Graph,
    c: Coloring,
    clique: frozenset[int],
    color: int,
    method: str,
    tested: int,
    relax: Optional[float],
    selection: Optional[Selection],
    attempts: int,
) -> CertifyReport:
    validated = (
        len(clique) >= 2
        and len({c.color_of(v) for v in clique}) == 1
        and is_maximal_clique(g, clique)
    )
    return CertifyReport(
        found=True,
        clique=clique,
        class_color=color,
        method=method,
        candidates_tested=tested,
        relax=relax,
        selection=selection,
        partition_attempts=attempts,
        validated=validated,
    )
