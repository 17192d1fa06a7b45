"""Config-driven Monte-Carlo sweeps and theory comparison tables.

A sweep walks the grid (n-values x p-values x procedures), runs `trials`
seeded trials per cell, and emits one record per trial. Replay is exact:
the trial seed is a documented mix of (master seed, cell index, trial
index), cells are enumerated in grid order, and records are merged in
(cell, trial) order no matter how workers finish, so reruns produce
byte-identical CSV. Wall-clock timings are inherently nondeterministic and
therefore live only in the JSON report, never in the CSV.
"""

from __future__ import annotations

import csv
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, TextIO

from .coloring import Coloring, is_valid_clique_coloring
from .graph import sample_gnp
from .lowerbound import certify
from .params import build_schedule, predicted_bounds
from .upper import procedure_A, procedure_B, repair

__all__ = [
    "SCHEMA_VERSION",
    "RECORD_COLUMNS",
    "ExperimentRecord",
    "SweepConfig",
    "mix_seed",
    "run_sweep",
    "SweepResult",
    "write_records",
    "read_records",
    "compare_with_theory",
    "CompareRow",
    "render_compare_table",
]

SCHEMA_VERSION = 1

PREDICTION_LABELS = (
    "order_log_over_p",
    "sparse_half",
    "very_sparse_5_2",
    "upper_refined",
    "one_third_order",
    "half_log_base",
)

RECORD_COLUMNS = (
    "schema_version",
    "n",
    "p",
    "seed",
    "procedure",
    "palette",
    "valid",
    "repairs",
    "leftover",
    "s",
    "z",
    "delta",
    "certificate_found",
    "error",
) + tuple(f"pred_{label}" for label in PREDICTION_LABELS)


@dataclass(frozen=True)
class ExperimentRecord:
    n: int
    p: float
    seed: int
    procedure: str
    palette: Optional[int]
    valid: Optional[bool]
    repairs: Optional[int]
    leftover: Optional[int]
    s: Optional[int]
    z: Optional[int]
    delta: Optional[float]
    certificate_found: Optional[bool]
    error: str
    predictions: dict[str, float]
    wall_time: float  # seconds; JSON-report only, excluded from the CSV

    def csv_row(self) -> list[str]:
        cells = [
            str(SCHEMA_VERSION),
            str(self.n),
            repr(self.p),
            str(self.seed),
            self.procedure,
            _fmt(self.palette),
            _fmt(self.valid),
            _fmt(self.repairs),
            _fmt(self.leftover),
            _fmt(self.s),
            _fmt(self.z),
            _fmt(self.delta),
            _fmt(self.certificate_found),
            self.error,
        ]
        cells.extend(repr(self.predictions[label]) for label in PREDICTION_LABELS)
        return cells


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


@dataclass(frozen=True)
class SweepConfig:
    """Versioned sweep description; see `from_json` for the file format."""

    n_grid: tuple[int, ...]
    p_grid: tuple[float, ...] = ()
    rho_grid: tuple[float, ...] = ()  # p = n^(-rho), resolved per cell
    trials: int = 1
    master_seed: int = 0
    procedures: tuple[str, ...] = ("A",)
    epsilon: Optional[float] = None
    repair_budget: int = 1000
    relax: Optional[float] = None
    certify_classes: int = 2
    certify_budget: int = 10_000
    workers: int = 1

    def __post_init__(self):
        if not self.n_grid:
            raise ValueError("n grid must be nonempty")
        if bool(self.p_grid) == bool(self.rho_grid):
            raise ValueError("exactly one of the p grid and the rho grid must be given")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        bad = set(self.procedures) - {"A", "B", "certify"}
        if bad:
            raise ValueError(f"unknown procedures: {sorted(bad)}")

    def cells(self) -> list[tuple[int, float, str]]:
        out = []
        for n in self.n_grid:
            for raw in self.p_grid or self.rho_grid:
                p = float(raw) if self.p_grid else float(n) ** -float(raw)
                for proc in self.procedures:
                    out.append((n, p, proc))
        return out

    @classmethod
    def from_json(cls, fh: TextIO) -> "SweepConfig":
        doc = json.load(fh)
        if doc.get("version") != SCHEMA_VERSION:
            raise ValueError(f"config version must be {SCHEMA_VERSION}")
        known = {
            "version",
            "n",
            "p",
            "rho",
            "trials",
            "master_seed",
            "procedures",
            "epsilon",
            "repair_budget",
            "relax",
            "certify_classes",
            "certify_budget",
            "workers",
        }
        unknown = set(doc) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(
            n_grid=tuple(int(v) for v in doc["n"]),
            p_grid=tuple(float(v) for v in doc.get("p", ())),
            rho_grid=tuple(float(v) for v in doc.get("rho", ())),
            trials=int(doc.get("trials", 1)),
            master_seed=int(doc.get("master_seed", 0)),
            procedures=tuple(doc.get("procedures", ("A",))),
            epsilon=doc.get("epsilon"),
            repair_budget=int(doc.get("repair_budget", 1000)),
            relax=doc.get("relax"),
            certify_classes=int(doc.get("certify_classes", 2)),
            certify_budget=int(doc.get("certify_budget", 10_000)),
            workers=int(doc.get("workers", 1)),
        )


_MASK64 = (1 << 64) - 1


def mix_seed(master: int, cell: int, trial: int) -> int:
    """Derive an independent 63-bit trial seed.

    splitmix64 finalizer applied to master + C1*(cell+1) + C2*(trial+1);
    the odd constants are the usual splitmix64/murmur mix constants. Stable
    across platforms and documented so records can be regenerated anywhere.
    """
    x = (master + 0x9E3779B97F4A7C15 * (cell + 1) + 0xBF58476D1CE4E5B9 * (trial + 1)) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    x ^= x >> 31
    return x >> 1  # keep it in signed-64 range for portability


@dataclass(frozen=True)
class _Task:
    cell_index: int
    trial_index: int
    n: int
    p: float
    procedure: str
    seed: int
    epsilon: Optional[float]
    repair_budget: int
    relax: Optional[float]
    certify_classes: int
    certify_budget: int


def _run_trial(task: _Task) -> ExperimentRecord:
    start = time.perf_counter()
    preds = {b.label: b.value for b in predicted_bounds(task.n, task.p)}
    base = dict(
        n=task.n,
        p=task.p,
        seed=task.seed,
        procedure=task.procedure,
        predictions=preds,
    )
    try:
        g = sample_gnp(task.n, task.p, task.seed)
        if task.procedure in ("A", "B"):
            if task.procedure == "A":
                coloring, rep = procedure_A(g, task.p)
            else:
                coloring, rep = procedure_B(g, task.p, task.epsilon)
            fixed = repair(g, coloring, budget=task.repair_budget)
            # repair terminates only on a coloring with no monochromatic
            # maximal clique, so validity reduces to non-exhaustion.
            valid = not fixed.exhausted
            return ExperimentRecord(
                **base,
                palette=fixed.coloring.palette_size,
                valid=valid,
                repairs=len(fixed.recolored),
                leftover=rep.leftover,
                s=rep.s,
                z=rep.z,
                delta=rep.delta,
                certificate_found=None,
                error="budget exhausted in repair" if fixed.exhausted else "",
                wall_time=time.perf_counter() - start,
            )
        # certify trial: a deliberately coarse round-robin coloring.
        classes = task.certify_classes
        coloring = Coloring(tuple(1 + (v - 1) % classes for v in range(1, task.n + 1)))
        sch = build_schedule(task.n, task.p)
        report = certify(
            g, coloring, sch, seed=task.seed, budget=task.certify_budget, relax=task.relax
        )
        found = report.found and report.validated
        valid = False if found else is_valid_clique_coloring(g, coloring)
        return ExperimentRecord(
            **base,
            palette=classes,
            valid=valid,
            repairs=None,
            leftover=None,
            s=sch.s,
            z=None,
            delta=sch.delta,
            certificate_found=found,
            error="",
            wall_time=time.perf_counter() - start,
        )
    except Exception as exc:  # per-trial failures never abort the sweep
        return ExperimentRecord(
            **base,
            palette=None,
            valid=None,
            repairs=None,
            leftover=None,
            s=None,
            z=None,
            delta=None,
            certificate_found=None,
            error=f"{type(exc).__name__}: {exc}",
            wall_time=time.perf_counter() - start,
        )


@dataclass(frozen=True)
class SweepResult:
    records: tuple[ExperimentRecord, ...]
    budget_exhausted: bool
    elapsed: float


def run_sweep(cfg: SweepConfig, workers: Optional[int] = None) -> SweepResult:
    """Execute every (cell, trial); per-trial errors are recorded in the
    record's error column, never raised."""
    start = time.perf_counter()
    tasks = []
    for cell_index, (n, p, proc) in enumerate(cfg.cells()):
        for trial in range(cfg.trials):
            tasks.append(
                _Task(
                    cell_index=cell_index,
                    trial_index=trial,
                    n=n,
                    p=p,
                    procedure=proc,
                    seed=mix_seed(cfg.master_seed, cell_index, trial),
                    epsilon=cfg.epsilon,
                    repair_budget=cfg.repair_budget,
                    relax=cfg.relax,
                    certify_classes=cfg.certify_classes,
                    certify_budget=cfg.certify_budget,
                )
            )
    nworkers = workers if workers is not None else cfg.workers
    if nworkers > 1:
        with ProcessPoolExecutor(max_workers=nworkers) as pool:
            results = list(pool.map(_run_trial, tasks, chunksize=1))
    else:
        results = [_run_trial(task) for task in tasks]
    # `tasks` is already in (cell, trial) order and map preserves it; the
    # sort keeps the merge order explicit and future-proof.
    paired = sorted(zip(tasks, results), key=lambda tr: (tr[0].cell_index, tr[0].trial_index))
    records = tuple(rec for _, rec in paired)
    exhausted = any("budget exhausted" in rec.error for rec in records)
    return SweepResult(records=records, budget_exhausted=exhausted, elapsed=time.perf_counter() - start)


def write_records(records: Iterable[ExperimentRecord], fh: TextIO) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(RECORD_COLUMNS)
    for rec in records:
        writer.writerow(rec.csv_row())


def read_records(fh: TextIO) -> list[dict[str, str]]:
    """Read a records CSV back as raw string dicts.

    The header must match the known schema exactly; unknown or missing
    columns are rejected.
    """
    reader = csv.reader(fh)
    header = next(reader, None)
    if header is None or tuple(header) != RECORD_COLUMNS:
        raise ValueError("records CSV header does not match the known schema")
    return [dict(zip(RECORD_COLUMNS, row)) for row in reader]


# -- Theory comparison -------------------------------------------------------------


@dataclass(frozen=True)
class CompareRow:
    n: int
    p: float
    procedure: str
    trials: int
    mean_palette: float
    min_palette: int
    max_palette: int
    ratios: dict[str, Optional[float]]  # label -> mean/predicted, None = n/a


def compare_with_theory(records: Sequence[ExperimentRecord]) -> list[CompareRow]:
    """Per-cell palette statistics against the in-range leading-order
    predictions. Ratios are empirical mean / predicted value; predictions
    whose p-window excludes the cell are reported as n/a."""
    if not records:
        raise ValueError("no records to compare")
    cells: dict[tuple[int, float, str], list[ExperimentRecord]] = {}
    for rec in records:
        if rec.procedure not in ("A", "B") or rec.palette is None:
            continue
        cells.setdefault((rec.n, rec.p, rec.procedure), []).append(rec)
    rows = []
    for (n, p, proc), group in sorted(cells.items()):
        palettes = [rec.palette for rec in group]
        mean = sum(palettes) / len(palettes)
        ratios: dict[str, Optional[float]] = {}
        for bound in predicted_bounds(n, p):
            usable = bound.in_range and bound.value > 0 and math.isfinite(bound.value)
            ratios[bound.label] = mean / bound.value if usable else None
        rows.append(
            CompareRow(
                n=n,
                p=p,
                procedure=proc,
                trials=len(group),
                mean_palette=mean,
                min_palette=min(palettes),
                max_palette=max(palettes),
                ratios=ratios,
            )
        )
    return rows


def render_compare_table(rows: Sequence[CompareRow]) -> str:
    header = ["n", "p", "proc", "trials", "mean", "min", "max"] + [
        f"ratio_{label}" for label in PREDICTION_LABELS
    ]
    lines = ["\t".join(header)]
    for row in rows:
        cells = [
            str(row.n),
            repr(row.p),
            row.procedure,
            str(row.trials),
            f"{row.mean_palette:.3f}",
            str(row.min_palette),
            str(row.max_palette),
        ]
        for label in PREDICTION_LABELS:
            ratio = row.ratios.get(label)
            cells.append("n/a" if ratio is None else f"{ratio:.4f}")
        lines.append("\t".join(cells))
    return "\n".join(lines) + "\n"
