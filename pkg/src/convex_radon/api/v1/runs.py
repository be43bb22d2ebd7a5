from __future__ import annotations

from fastapi import APIRouter, Depends, HTTPException, Query, status
from sqlalchemy import select
from sqlalchemy.orm import Session

from convex_radon.db.deps import get_db
from convex_radon.models.run import ExperimentRun, ReportRecord
from convex_radon.schemas.run import ReportRead, RunRead

router = APIRouter()


def _get_run(db: Session, run_id: int) -> ExperimentRun:
    run = db.get(ExperimentRun, run_id)
    if run is None:
        raise HTTPException(
            status_code=status.HTTP_404_NOT_FOUND,
            detail=f"Run {run_id} does not exist.",
        )
    return run


@router.get("", response_model=list[RunRead])
def list_runs(
    limit: int = Query(50, ge=1, le=500, description="Most recent runs to return."),
    db: Session = Depends(get_db),
) -> list[RunRead]:
    """Stored runs, newest first."""
    runs = db.scalars(select(ExperimentRun).order_by(ExperimentRun.id.desc()).limit(limit)).all()
    return [RunRead.model_validate(run) for run in runs]


@router.get("/{run_id}", response_model=RunRead)
def get_run(run_id: int, db: Session = Depends(get_db)) -> RunRead:
    """One run; 404 if it does not exist."""
    return RunRead.model_validate(_get_run(db, run_id))


@router.get("/{run_id}/reports", response_model=list[ReportRead])
def list_reports(
    run_id: int,
    verdict: str | None = Query(None, description="Only rows with this verdict.", examples=["violated"]),
    db: Session = Depends(get_db),
) -> list[ReportRead]:
    """
    Report rows of a run in config order.

    - Fails with 404 if the run does not exist.
    """
    _get_run(db, run_id)
    query = select(ReportRecord).where(ReportRecord.run_id == run_id)
    if verdict is not None:
        query = query.where(ReportRecord.verdict == verdict)
    rows = db.scalars(query.order_by(ReportRecord.position)).all()
    return [ReportRead.model_validate(row) for row in rows]
