import json

import pytest
from sqlalchemy import select

from convex_radon.cli.runner import apply_overrides, execute, fail_run, finish_run, start_run
from convex_radon.models.run import ExperimentRun, ReportRecord, RunStatus
from convex_radon.schemas.config import parse_run_config


@pytest.fixture
def config():
    return parse_run_config(
        {
            "name": "store",
            "seed": 11,
            "samples": 1000,
            "suite": ["constants", "quotient_holder: K=cube(3), L=ball(3), k=1, net_size=2"],
        }
    )


def test_overrides_keep_unset_fields(config):
    updated = apply_overrides(config, samples=500, fmt="json", record_timing=None)
    assert updated.samples == 500
    assert updated.format == "json"
    assert updated.seed == 11
    assert updated.record_timing is False


def test_rows_follow_the_suite_order(config):
    result = execute(config)
    assert result.seed == 11
    assert [row.position for row in result.rows] == list(range(6))
    assert result.rows[0].check_id == "constants[0]:gamma-upper"
    assert result.rows[-1].check_id == "quotient_holder[1]:quotient-holder"
    assert all(row.report.seconds == 0.0 and row.report.seed == 11 for row in result.rows)
    assert result.violations == 0


def test_timing_is_written_when_requested(config):
    result = execute(apply_overrides(config, record_timing=True))
    assert all(row.report.seconds == row.wall_seconds for row in result.rows)


def test_stored_run_round_trip(session, config):
    run = start_run(session, config)
    assert run.status == RunStatus.PENDING.value
    assert run.config_digest == config.digest()

    finish_run(session, run, execute(config))
    stored = session.get(ExperimentRun, run.id)
    assert stored.status == RunStatus.FINISHED.value
    assert [record.position for record in stored.reports] == list(range(6))
    holder = session.scalars(select(ReportRecord).where(ReportRecord.theorem_id == "quotient-holder")).one()
    assert holder.verdict == "holds-with-bound"
    assert json.loads(holder.constants)[0]["symbol"] == "d_ovr(K,BP_k)"


def test_failed_run_keeps_the_error(session, config):
    run = start_run(session, config)
    fail_run(session, run, RuntimeError("boom"))
    assert session.get(ExperimentRun, run.id).error == "RuntimeError: boom"
    assert run.status == RunStatus.FAILED.value
