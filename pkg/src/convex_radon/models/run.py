from __future__ import annotations

from datetime import datetime
from enum import Enum

from sqlalchemy import DateTime, Float, ForeignKey, Integer, String, Text, UniqueConstraint
from sqlalchemy.orm import Mapped, mapped_column, relationship

from convex_radon.core.clock import create_timestamp
from convex_radon.db.base import Base


class RunStatus(str, Enum):
    PENDING = "PENDING"
    FINISHED = "FINISHED"
    FAILED = "FAILED"


class ExperimentRun(Base):
    """
    One execution of a run configuration.

    Two runs with the same config digest and seed produce the same report rows
    (apart from the recorded wall time).
    """

    __tablename__ = "experiment_runs"

    id: Mapped[int] = mapped_column(Integer, primary_key=True, index=True)
    config_digest: Mapped[str] = mapped_column(String(64), nullable=False, index=True)  # sha256 hex
    suite_name: Mapped[str] = mapped_column(String(128), nullable=False)
    seed: Mapped[int] = mapped_column(Integer, nullable=False)
    chunks: Mapped[int] = mapped_column(Integer, nullable=False, default=1)
    workers: Mapped[int] = mapped_column(Integer, nullable=False, default=1)
    status: Mapped[str] = mapped_column(String(16), nullable=False, default=RunStatus.PENDING.value, index=True)
    violations: Mapped[int] = mapped_column(Integer, nullable=False, default=0)
    error: Mapped[str | None] = mapped_column(Text, nullable=True)
    created_at: Mapped[datetime] = mapped_column(DateTime(timezone=True), nullable=False, default=create_timestamp)
    updated_at: Mapped[datetime] = mapped_column(
        DateTime(timezone=True),
        nullable=False,
        default=create_timestamp,
        onupdate=create_timestamp,
    )

    # Relationships
    reports: Mapped[list["ReportRecord"]] = relationship(
        back_populates="run",
        cascade="all, delete-orphan",
        order_by="ReportRecord.position",
    )


class ReportRecord(Base):
    """One report row of a run, stored in config order."""

    __tablename__ = "report_records"

    id: Mapped[int] = mapped_column(Integer, primary_key=True, index=True)
    run_id: Mapped[int] = mapped_column(
        ForeignKey("experiment_runs.id", ondelete="CASCADE", onupdate="CASCADE"),
        nullable=False,
        index=True,
    )
    position: Mapped[int] = mapped_column(Integer, nullable=False)
    check_id: Mapped[str] = mapped_column(String(128), nullable=False)
    theorem_id: Mapped[str] = mapped_column(String(64), nullable=False, index=True)
    body_k: Mapped[str | None] = mapped_column(String(255), nullable=True)
    body_l: Mapped[str | None] = mapped_column(String(255), nullable=True)
    n: Mapped[int | None] = mapped_column(Integer, nullable=True)
    k: Mapped[int | None] = mapped_column(Integer, nullable=True)
    p: Mapped[float | None] = mapped_column(Float, nullable=True)
    lhs: Mapped[float] = mapped_column(Float, nullable=False)
    lhs_se: Mapped[float] = mapped_column(Float, nullable=False, default=0.0)
    rhs: Mapped[float] = mapped_column(Float, nullable=False)
    rhs_se: Mapped[float] = mapped_column(Float, nullable=False, default=0.0)
    margin: Mapped[float | None] = mapped_column(Float, nullable=True)
    verdict: Mapped[str] = mapped_column(String(24), nullable=False, index=True)
    # JSON arrays
    constants: Mapped[str] = mapped_column(Text, nullable=False, default="[]")
    notes: Mapped[str] = mapped_column(Text, nullable=False, default="[]")
    seconds: Mapped[float] = mapped_column(Float, nullable=False, default=0.0)

    # Relationships
    run: Mapped[ExperimentRun] = relationship(back_populates="reports")

    __table_args__ = (UniqueConstraint("run_id", "position", name="uq_report_records_run_position"),)
