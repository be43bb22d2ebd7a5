"""Execute a run configuration: checks in parallel, rows in config order."""

from __future__ import annotations

import json
import logging
from concurrent.futures import ThreadPoolExecutor

from pydantic import BaseModel, ConfigDict, Field
from sqlalchemy.orm import Session

from convex_radon.cli.writers import ReportRow
from convex_radon.core.clock import Stopwatch
from convex_radon.core.settings import get_settings
from convex_radon.geometry.radon import Partition
from convex_radon.geometry.sampling import RngStream
from convex_radon.harness.registry import CheckContext, run_check
from convex_radon.models.run import ExperimentRun, ReportRecord, RunStatus
from convex_radon.schemas.config import CheckSpec, RunConfig
from convex_radon.schemas.report import InequalityReport, Verdict

logger = logging.getLogger(__name__)


class RunResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    config: RunConfig = Field(..., description="Configuration with CLI overrides applied.")
    seed: int = Field(..., description="Root seed actually used.")
    rows: list[ReportRow] = Field(default_factory=list, description="Report rows in config order.")

    @property
    def violations(self) -> int:
        return sum(row.report.verdict is Verdict.VIOLATED for row in self.rows)


def apply_overrides(
    config: RunConfig,
    *,
    seed: int | None = None,
    samples: int | None = None,
    workers: int | None = None,
    fmt: str | None = None,
    output: str | None = None,
    record_timing: bool | None = None,
) -> RunConfig:
    """CLI flags win over the file; unset flags keep the file's values."""
    updates = {
        "seed": seed,
        "samples": samples,
        "workers": workers,
        "format": fmt,
        "output": output,
        "record_timing": record_timing,
    }
    return config.model_copy(update={key: value for key, value in updates.items() if value is not None})


def check_label(spec: CheckSpec, position: int) -> str:
    return spec.id or f"{spec.check}[{position}]"


Outcome = tuple[str, float, list[InequalityReport]]


def _run_entry(position: int, spec: CheckSpec, config: RunConfig, seed: int) -> Outcome:
    settings = get_settings()
    root = RngStream(seed=spec.seed) if spec.seed is not None else RngStream(seed=seed).child(position)
    ctx = CheckContext(
        rng=root,
        samples=config.samples or settings.default_samples,
        partition=Partition(chunks=config.chunks, workers=config.workers),
    )
    watch = Stopwatch()
    reports = run_check(spec, ctx)
    elapsed = watch.elapsed()
    logger.info("%s: %d rows in %.2fs", check_label(spec, position), len(reports), elapsed)
    return check_label(spec, position), elapsed, reports


def execute(config: RunConfig) -> RunResult:
    """Run every suite entry; entries may finish in any order, rows never move."""
    seed = config.seed if config.seed is not None else get_settings().default_seed
    logger.info("run '%s': %d checks, seed %d, %d workers", config.name, len(config.suite), seed, config.workers)

    def task(item: tuple[int, CheckSpec]) -> Outcome:
        position, spec = item
        return _run_entry(position, spec, config, seed)

    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        results = list(pool.map(task, enumerate(config.suite)))

    rows: list[ReportRow] = []
    for label, elapsed, reports in results:
        for report in reports:
            stamped = report.model_copy(update={"seed": seed, "seconds": elapsed if config.record_timing else 0.0})
            rows.append(
                ReportRow(
                    position=len(rows),
                    check_id=f"{label}:{report.theorem_id}",
                    report=stamped,
                    wall_seconds=elapsed,
                )
            )
    result = RunResult(config=config, seed=seed, rows=rows)
    logger.info("run '%s' finished: %d rows, %d violated", config.name, len(rows), result.violations)
    return result


def start_run(db: Session, config: RunConfig) -> ExperimentRun:
    """Record a PENDING run before the checks start."""
    seed = config.seed if config.seed is not None else get_settings().default_seed
    run = ExperimentRun(
        config_digest=config.digest(),
        suite_name=config.name,
        seed=seed,
        chunks=config.chunks,
        workers=config.workers,
        status=RunStatus.PENDING.value,
    )
    db.add(run)
    db.commit()
    db.refresh(run)
    return run


def finish_run(db: Session, run: ExperimentRun, result: RunResult) -> ExperimentRun:
    """Store the rows and mark the run FINISHED."""
    for row in result.rows:
        report = row.report
        db.add(
            ReportRecord(
                run_id=run.id,
                position=row.position,
                check_id=row.check_id,
                theorem_id=report.theorem_id,
                body_k=row.body_k,
                body_l=row.body_l,
                n=report.n,
                k=report.k,
                p=report.p,
                lhs=report.lhs.value,
                lhs_se=report.lhs.std_error,
                rhs=report.rhs.value,
                rhs_se=report.rhs.std_error,
                margin=report.margin,
                verdict=report.verdict.value,
                constants=json.dumps([constant.model_dump(mode="json") for constant in report.constants_used]),
                notes=json.dumps(list(report.notes)),
                seconds=row.wall_seconds,
            )
        )
    run.status = RunStatus.FINISHED.value
    run.violations = result.violations
    db.commit()
    db.refresh(run)
    logger.info("stored run %d (%d rows)", run.id, len(result.rows))
    return run


def fail_run(db: Session, run: ExperimentRun, error: Exception) -> ExperimentRun:
    db.rollback()
    run.status = RunStatus.FAILED.value
    run.error = f"{type(error).__name__}: {error}"
    db.commit()
    db.refresh(run)
    return run
