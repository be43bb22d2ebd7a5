"""CSV and JSON encodings of report rows; both carry every float at 17 significant digits."""

from __future__ import annotations

import csv
import io
import json
import logging
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from convex_radon.core.errors import ConfigError
from convex_radon.schemas.report import InequalityReport

logger = logging.getLogger(__name__)

COLUMNS = (
    "check_id",
    "body_k",
    "body_l",
    "n",
    "k",
    "p",
    "lhs",
    "lhs_se",
    "rhs",
    "rhs_se",
    "margin_se_units",
    "constants",
    "verdict",
    "seconds",
    "seed",
)


class ReportRow(BaseModel):
    """A report placed in the run: its suite position, row label and measured wall time."""

    model_config = ConfigDict(frozen=True)

    position: int = Field(..., description="Row index in config order.", ge=0)
    check_id: str = Field(
        ...,
        description="Suite entry label and inequality.",
        examples=["quotient_holder[0]:quotient-holder"],
    )
    report: InequalityReport = Field(..., description="The checked instance.")
    wall_seconds: float = Field(0.0, description="Measured wall time of the suite entry.", ge=0)

    @property
    def body_k(self) -> str | None:
        bodies = self.report.bodies
        return bodies.get("K") or bodies.get("g")

    @property
    def body_l(self) -> str | None:
        bodies = self.report.bodies
        return bodies.get("L") or bodies.get("D")


def format_float(value: float | None) -> str:
    return "" if value is None else format(float(value), ".17g")


def _format_constants(report: InequalityReport) -> str:
    return "; ".join(
        f"{constant.symbol}={format_float(constant.value) or 'symbolic'} [{constant.provenance}]"
        for constant in report.constants_used
    )


def csv_record(row: ReportRow) -> dict[str, str]:
    report = row.report
    return {
        "check_id": row.check_id,
        "body_k": row.body_k or "",
        "body_l": row.body_l or "",
        "n": "" if report.n is None else str(report.n),
        "k": "" if report.k is None else str(report.k),
        "p": format_float(report.p),
        "lhs": format_float(report.lhs.value),
        "lhs_se": format_float(report.lhs.std_error),
        "rhs": format_float(report.rhs.value),
        "rhs_se": format_float(report.rhs.std_error),
        "margin_se_units": format_float(report.margin),
        "constants": _format_constants(report),
        "verdict": report.verdict.value,
        "seconds": format_float(report.seconds),
        "seed": "" if report.seed is None else str(report.seed),
    }


def json_record(row: ReportRow) -> dict[str, Any]:
    """The CSV columns as typed JSON values, plus theorem id, relation, constants and notes."""
    report = row.report
    return {
        "check_id": row.check_id,
        "theorem_id": report.theorem_id,
        "body_k": row.body_k,
        "body_l": row.body_l,
        "n": report.n,
        "k": report.k,
        "p": report.p,
        "lhs": report.lhs.value,
        "lhs_se": report.lhs.std_error,
        "rhs": report.rhs.value,
        "rhs_se": report.rhs.std_error,
        "margin_se_units": report.margin,
        "relation": report.relation.value,
        "constants": [constant.model_dump(mode="json") for constant in report.constants_used],
        "notes": list(report.notes),
        "verdict": report.verdict.value,
        "seconds": report.seconds,
        "seed": report.seed,
    }


def render_csv(rows: list[ReportRow]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(csv_record(row))
    return buffer.getvalue()


def render_json(rows: list[ReportRow]) -> str:
    # json writes floats with repr, which round-trips like %.17g
    return json.dumps([json_record(row) for row in rows], indent=2) + "\n"


def render(rows: list[ReportRow], fmt: str) -> str:
    match fmt:
        case "csv":
            return render_csv(rows)
        case "json":
            return render_json(rows)
        case _:
            raise ConfigError(f"format: unknown report format '{fmt}'")


def write_report(rows: list[ReportRow], fmt: str, path: str | Path) -> Path:
    """Write the encoded rows to ``path``, creating parent directories."""
    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(render(rows, fmt), encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"output: cannot write {target}: {exc}") from exc
    logger.info("wrote %d rows to %s", len(rows), target)
    return target
