"""Replicated experiments, min/mean/std aggregation and result files."""

from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .core import FhoConfig, RunResult, run_replicated
from .errors import ParameterError
from .problems import (
    BENCHMARK_NAMES,
    DEFAULT_PENALTY,
    PenaltyStrategy,
    Problem,
    cantilever,
    constraint_report,
    get_problem,
    penalize,
    pressure_vessel,
    spring,
)

log = logging.getLogger(__name__)

OUTPUT_KINDS = ("summary", "histories", "solutions")
SUMMARY_COLUMNS = ("problem", "dimension", "replicates", "population", "iterations", "seed", "min", "mean", "std")
ENGINEERING_SUITE = ("cantilever", "pressure-vessel", "spring")


def fmt(x: float) -> str:
    return f"{x:.16e}"


@dataclass(frozen=True)
class ExperimentSpec:
    problem: str
    config: FhoConfig = field(default_factory=FhoConfig)
    replicates: int = 30
    outputs: frozenset = frozenset({"summary"})
    dimension: Optional[int] = None
    penalty: Optional[PenaltyStrategy] = None
    ddof: int = 0

    def __post_init__(self):
        if self.replicates < 1:
            raise ParameterError(f"replicates must be >= 1, got {self.replicates}")
        unknown = set(self.outputs) - set(OUTPUT_KINDS)
        if unknown:
            raise ParameterError(f"unknown outputs {sorted(unknown)}; choose from {OUTPUT_KINDS}")

    def base_problem(self) -> Problem:
        return get_problem(self.problem, self.dimension)

    def objective_problem(self, base: Problem) -> Problem:
        if not base.constraints:
            return base
        strategy = self.penalty or DEFAULT_PENALTY.get(base.name, PenaltyStrategy())
        return penalize(base, strategy)


@dataclass
class ExperimentStats:
    min: float
    mean: float
    std: float
    best_solution: np.ndarray
    per_run: list[float]

    @classmethod
    def from_runs(cls, results: Sequence[RunResult], ddof: int = 0) -> "ExperimentStats":
        finals = np.array([r.best_fitness for r in results])
        best = results[int(np.argmin(finals))]
        std = float(np.std(finals, ddof=ddof)) if len(finals) > ddof else 0.0
        return cls(float(finals.min()), float(finals.mean()), std, best.best_position.copy(), finals.tolist())


@dataclass
class ExperimentResult:
    spec: ExperimentSpec
    problem: Problem
    stats: ExperimentStats
    runs: list[RunResult]

    def summary_row(self) -> dict:
        cfg = self.spec.config
        return {
            "problem": self.problem.name,
            "dimension": self.problem.n,
            "replicates": self.spec.replicates,
            "population": cfg.population,
            "iterations": cfg.max_iterations,
            "seed": cfg.seed,
            "min": self.stats.min,
            "mean": self.stats.mean,
            "std": self.stats.std,
        }

    def solution(self) -> dict:
        x = self.stats.best_solution
        return {
            "problem": self.problem.name,
            "best_position": x.tolist(),
            "best_fitness": self.stats.min,
            "objective": self.problem(x),
            "constraint_report": constraint_report(self.problem, x).as_dict(),
        }

    def histories(self) -> list[dict]:
        return [
            {"seed": r.seed, "replicate": r.replicate, "final_best": r.best_fitness, "history": r.history.tolist()}
            for r in self.runs
        ]


def summary_csv(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SUMMARY_COLUMNS)
    for row in rows:
        writer.writerow([fmt(row[c]) if c in ("min", "mean", "std") else row[c] for c in SUMMARY_COLUMNS])
    return buf.getvalue()


def runs_csv(result: ExperimentResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("replicate", "seed", "final_best", "evaluations"))
    for r in result.runs:
        writer.writerow((r.replicate, r.seed, fmt(r.best_fitness), r.evaluations))
    return buf.getvalue()


def _dump_json(obj, path: Path) -> None:
    path.write_text(json.dumps(obj, indent=1) + "\n")


def write_artifacts(result: ExperimentResult, out_dir: Path, write_summary: bool = True) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    outputs = result.spec.outputs
    if "summary" in outputs:
        if write_summary:
            (out_dir / "summary.csv").write_text(summary_csv([result.summary_row()]))
        (out_dir / "runs.csv").write_text(runs_csv(result))
    if "histories" in outputs:
        _dump_json(result.histories(), out_dir / "histories.json")
    if "solutions" in outputs:
        _dump_json(result.solution(), out_dir / "solutions.json")


def run_experiment(spec: ExperimentSpec, out_dir: Optional[Path] = None, workers: int = 1) -> ExperimentResult:
    base = spec.base_problem()
    problem = spec.objective_problem(base)
    runs = run_replicated(problem, spec.config, spec.replicates, workers=workers)
    stats = ExperimentStats.from_runs(runs, ddof=spec.ddof)
    result = ExperimentResult(spec, base, stats, runs)
    if out_dir is not None:
        write_artifacts(result, Path(out_dir))
    return result


@dataclass
class SuiteResult:
    results: list[ExperimentResult]
    failures: list[tuple[str, str]]

    @property
    def rows(self) -> list[dict]:
        return [r.summary_row() for r in self.results]

    @property
    def ok(self) -> bool:
        return not self.failures


def run_suite(specs: Sequence[ExperimentSpec], out_dir: Optional[Path] = None, workers: int = 1) -> SuiteResult:
    """Run each spec in order; a failing spec is logged and skipped."""
    if not specs:
        raise ParameterError("run_suite needs at least one experiment spec")
    results, failures = [], []
    for spec in specs:
        try:
            result = run_experiment(spec, workers=workers)
        except Exception as exc:  # noqa: BLE001 - reported per spec, suite continues
            log.error("experiment %s failed: %s", spec.problem, exc)
            failures.append((spec.problem, str(exc)))
            continue
        results.append(result)
        if out_dir is not None:
            write_artifacts(result, Path(out_dir) / result.problem.name, write_summary=False)
    suite = SuiteResult(results, failures)
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "summary.csv").write_text(summary_csv(suite.rows))
        if any("solutions" in r.spec.outputs for r in results):
            _dump_json([r.solution() for r in results if "solutions" in r.spec.outputs], out / "solutions.json")
    return suite


def table2_specs(config: FhoConfig, replicates: int = 30, include_engineering: bool = False,
                 outputs=frozenset({"summary"})) -> list[ExperimentSpec]:
    names = list(BENCHMARK_NAMES)
    if include_engineering:
        names += ENGINEERING_SUITE
    return [ExperimentSpec(name, config, replicates, frozenset(outputs)) for name in names]


# Published solution rows: (problem factory, point, reported objective, tolerance)
PUBLISHED_OPTIMA = {
    "cantilever": (cantilever, (6.0421055, 5.3377723, 4.4720019, 3.4819607, 2.1409217), 1.3365892, 1e-6),
    "pressure-vessel": (pressure_vessel, (0.8375030, 0.4139782, 43.3939372, 161.2185336), 5994.6845509, 0.5),
    "spring": (spring, (0.0531127, 0.3919440, 9.4875998), 0.0127014, 1e-5),
}


@dataclass
class OracleEntry:
    problem: str
    point: list[float]
    reported: float
    computed: float
    tolerance: float
    constraints: list[float]

    @property
    def delta(self) -> float:
        return abs(self.computed - self.reported)

    @property
    def passed(self) -> bool:
        return self.delta <= self.tolerance

    def as_dict(self) -> dict:
        return {
            "problem": self.problem,
            "point": self.point,
            "reported": self.reported,
            "computed": self.computed,
            "delta": self.delta,
            "tolerance": self.tolerance,
            "constraints": self.constraints,
            "passed": self.passed,
        }


def oracle_check() -> list[OracleEntry]:
    """Re-evaluate the published solution rows under the implemented problems."""
    entries = []
    for name, (factory, point, reported, tol) in PUBLISHED_OPTIMA.items():
        problem = factory()
        x = np.array(point)
        entries.append(OracleEntry(name, list(point), reported, problem(x), tol,
                                   problem.constraint_values(x).tolist()))
    return entries
