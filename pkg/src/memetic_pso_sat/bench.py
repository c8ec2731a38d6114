"""Benchmark harness: repeated runs per instance, success rates and report rendering."""

from __future__ import annotations

import csv
import io
import json
import logging
import multiprocessing as mp
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence, Union

from tqdm import tqdm

from .config import SolverConfig
from .dimacs import read_dimacs_file
from .exceptions import ConfigurationError, SoundnessError
from .models import CnfFormula, RunReport
from .solver import MemeticPsoSolver, verify_report

logger = logging.getLogger(__name__)


class ReportFormat(str, Enum):
    TABLE = "table"
    CSV = "csv"
    JSON = "json"


@dataclass(frozen=True)
class SuiteInstance:
    """A named benchmark formula, or the reason it could not be loaded."""

    name: str
    formula: Optional[CnfFormula] = None
    error: Optional[str] = None


@dataclass(frozen=True)
class InstanceResult:
    """All runs on one instance plus the aggregates reported per instance."""

    name: str
    variable_count: int
    clause_count: int
    runs: tuple[RunReport, ...] = ()
    error: Optional[str] = None

    @property
    def successes(self) -> int:
        return sum(1 for run in self.runs if run.is_satisfied)

    @property
    def success_rate(self) -> float:
        if not self.runs:
            return 0.0
        return self.successes / len(self.runs)

    @property
    def mean_wall_time_of_successes(self) -> Optional[float]:
        times = [run.wall_time for run in self.runs if run.is_satisfied]
        if not times:
            return None
        return sum(times) / len(times)

    @property
    def best_false_clause_count(self) -> Optional[int]:
        if not self.runs:
            return None
        return min(run.false_clause_count for run in self.runs)

    def to_dict(self, include_traces: bool = False) -> dict[str, Any]:
        return {
            "name": self.name,
            "variable_count": self.variable_count,
            "clause_count": self.clause_count,
            "error": self.error,
            "successes": self.successes,
            "success_rate": self.success_rate,
            "mean_wall_time_of_successes": self.mean_wall_time_of_successes,
            "best_false_clause_count": self.best_false_clause_count,
            "runs": [run.to_dict(include_trace=include_traces) for run in self.runs],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> InstanceResult:
        return cls(
            name=str(data["name"]),
            variable_count=int(data["variable_count"]),
            clause_count=int(data["clause_count"]),
            runs=tuple(RunReport.from_dict(run) for run in data.get("runs", [])),
            error=data.get("error"),
        )


@dataclass(frozen=True)
class SuiteReport:
    """Results of a benchmark suite, ordered by (instance, run index)."""

    instances: tuple[InstanceResult, ...]
    runs_per_instance: int
    base_seed: int

    def to_dict(self, include_traces: bool = False) -> dict[str, Any]:
        return {
            "runs_per_instance": self.runs_per_instance,
            "base_seed": self.base_seed,
            "instances": [result.to_dict(include_traces) for result in self.instances],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> SuiteReport:
        return cls(
            instances=tuple(InstanceResult.from_dict(item) for item in data["instances"]),
            runs_per_instance=int(data["runs_per_instance"]),
            base_seed=int(data["base_seed"]),
        )


def load_instances(paths: Iterable[Union[str, Path]]) -> list[SuiteInstance]:
    """Read DIMACS files; directories contribute their ``*.cnf`` files in name order.

    Instances are named by their path as given (directory entries joined to
    the directory argument); a path listed again gets a ``#k`` suffix.
    Files that cannot be read or parsed become instances carrying an error.
    """
    instances = []
    seen: dict[str, int] = {}
    for entry in paths:
        entry = Path(entry)
        files = sorted(entry.glob("*.cnf")) if entry.is_dir() else [entry]
        for file_path in files:
            name = str(file_path)
            seen[name] = seen.get(name, 0) + 1
            if seen[name] > 1:
                name = f"{name}#{seen[name]}"
            try:
                formula = read_dimacs_file(file_path)
            except (OSError, ValueError) as e:
                logger.warning(f"Skipping {file_path}: {e}")
                instances.append(SuiteInstance(name=name, error=str(e)))
            else:
                instances.append(SuiteInstance(name=name, formula=formula))
    return instances


def _solve_job(job: tuple[int, int, CnfFormula, SolverConfig]) -> tuple[int, int, RunReport]:
    instance_index, run_index, formula, config = job
    return instance_index, run_index, MemeticPsoSolver(config).solve(formula)


def run_suite(
    instances: Sequence[Union[SuiteInstance, tuple[str, CnfFormula]]],
    cfg: SolverConfig,
    runs_per_instance: int,
    base_seed: int,
    workers: int = 1,
) -> SuiteReport:
    """Solve every instance ``runs_per_instance`` times with seeds ``base_seed + k``.

    Args:
        instances: Named formulas; entries carrying an error are reported, not run
        cfg: Solver configuration (its random_seed is replaced per run)
        runs_per_instance: Runs per instance, at least 1
        base_seed: Seed of run 0; run k uses base_seed + k
        workers: Processes used to execute runs concurrently

    Returns:
        SuiteReport folded in (instance, run index) order

    Raises:
        ValueError: If runs_per_instance is below 1
        SoundnessError: If a run report fails re-verification

    """
    if runs_per_instance < 1:
        raise ConfigurationError(f"runs_per_instance must be at least 1, got {runs_per_instance}")

    normalized = [
        item if isinstance(item, SuiteInstance) else SuiteInstance(name=item[0], formula=item[1])
        for item in instances
    ]

    jobs = [
        (index, run, item.formula, replace(cfg, random_seed=base_seed + run))
        for index, item in enumerate(normalized)
        if item.formula is not None
        for run in range(runs_per_instance)
    ]
    logger.info(f"Running {len(jobs)} solves over {len(normalized)} instances")

    collected: dict[tuple[int, int], RunReport] = {}
    progress = tqdm(total=len(jobs), desc="Benchmark runs", leave=False)
    try:
        if workers > 1 and len(jobs) > 1:
            with mp.Pool(processes=workers) as pool:
                for index, run, report in pool.imap_unordered(_solve_job, jobs):
                    collected[(index, run)] = report
                    progress.update(1)
        else:
            for job in jobs:
                index, run, report = _solve_job(job)
                collected[(index, run)] = report
                progress.update(1)
    finally:
        progress.close()

    results = []
    for index, item in enumerate(normalized):
        if item.formula is None:
            results.append(InstanceResult(name=item.name, variable_count=0, clause_count=0, error=item.error))
            continue
        runs = tuple(collected[(index, run)] for run in range(runs_per_instance))
        for report in runs:
            if not verify_report(item.formula, report):
                raise SoundnessError(f"Run with seed {report.seed} on {item.name} failed verification")
        result = InstanceResult(
            name=item.name,
            variable_count=item.formula.variable_count,
            clause_count=item.formula.clause_count,
            runs=runs,
        )
        logger.info(
            f"{item.name}: success rate {result.success_rate:.0%}, "
            f"best false clauses {result.best_false_clause_count}",
        )
        results.append(result)

    return SuiteReport(instances=tuple(results), runs_per_instance=runs_per_instance, base_seed=base_seed)


def format_seconds(seconds: float) -> str:
    """Seconds rounded to 3 decimals without trailing zeros (27.190 -> 27.19)."""
    text = f"{seconds:.3f}".rstrip("0").rstrip(".")
    return text or "0"


def format_percent(successes: int, total: int) -> str:
    """Success percentage floored to one decimal; "100%" only when every run succeeded.

    Any success shows as at least 0.1%.
    """
    tenths = successes * 1000 // total
    if successes and not tenths:
        tenths = 1
    if tenths % 10 == 0:
        return f"{tenths // 10}%"
    return f"{tenths // 10}.{tenths % 10}%"


def result_cell(result: InstanceResult) -> str:
    """Benchmark cell: ``<rate%> <mean seconds>`` with successes, else ``(<k> clauses)``."""
    if result.error is not None:
        return f"error: {result.error}"
    mean_time = result.mean_wall_time_of_successes
    if mean_time is not None:
        return f"{format_percent(result.successes, len(result.runs))} {format_seconds(mean_time)}"
    count = result.best_false_clause_count
    return f"({count} clause)" if count == 1 else f"({count} clauses)"


TABLE_HEADER = f"{'Benchmark':<32} {'Vars':>6} {'Clauses':>8} {'Runs':>5}  Result"


def _render_table(report: SuiteReport) -> str:
    lines = [TABLE_HEADER, "-" * len(TABLE_HEADER)]
    for result in report.instances:
        lines.append(
            f"{result.name:<32} {result.variable_count:>6} {result.clause_count:>8} "
            f"{len(result.runs):>5}  {result_cell(result)}",
        )
    return "\n".join(lines) + "\n"


CSV_FIELDS = [
    "instance",
    "variables",
    "clauses",
    "run",
    "seed",
    "status",
    "best_fitness",
    "false_clause_count",
    "iterations_used",
    "wall_time",
    "success_rate",
    "mean_wall_time_of_successes",
    "best_false_clause_count",
    "error",
]


def _render_csv(report: SuiteReport, include_traces: bool) -> str:
    buffer = io.StringIO()
    fieldnames = CSV_FIELDS + (["fitness_trace"] if include_traces else [])
    writer = csv.DictWriter(buffer, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    for result in report.instances:
        shared = {
            "instance": result.name,
            "variables": result.variable_count,
            "clauses": result.clause_count,
            "success_rate": result.success_rate,
            "mean_wall_time_of_successes": result.mean_wall_time_of_successes,
            "best_false_clause_count": result.best_false_clause_count,
            "error": result.error,
        }
        if not result.runs:
            writer.writerow(shared)
            continue
        for index, run in enumerate(result.runs):
            row = dict(
                shared,
                run=index,
                seed=run.seed,
                status=run.status.value,
                best_fitness=run.best_fitness,
                false_clause_count=run.false_clause_count,
                iterations_used=run.iterations_used,
                wall_time=run.wall_time,
            )
            if include_traces:
                row["fitness_trace"] = " ".join(str(fitness) for _, fitness in run.fitness_trace)
            writer.writerow(row)
    return buffer.getvalue()


def render_report(
    report: SuiteReport,
    fmt: Union[ReportFormat, str] = ReportFormat.TABLE,
    include_traces: bool = False,
) -> str:
    """Render a suite report as a text table, CSV (one row per run) or JSON."""
    fmt = ReportFormat(fmt)
    if fmt is ReportFormat.TABLE:
        return _render_table(report)
    if fmt is ReportFormat.CSV:
        return _render_csv(report, include_traces)
    return json.dumps(report.to_dict(include_traces), indent=2) + "\n"
