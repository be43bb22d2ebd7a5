import numpy as np
import pytest

from convex_radon.geometry.catalog import make_catalog_body
from convex_radon.harness.bundled import check_blaschke, check_constants, check_sections, check_volumes
from convex_radon.schemas.report import Relation, Verdict


def test_closed_form_constants():
    reports = check_constants(gamma_max_dim=16, c_max_dim=40)
    assert [report.theorem_id for report in reports] == [
        "gamma-upper",
        "gamma-lower",
        "c(n,1)",
        "dpp-ratio-upper",
        "dpp-ratio-lower",
    ]
    assert all(report.verdict is Verdict.HOLDS for report in reports)
    assert all(report.lhs.std_error == 0.0 for report in reports)


def test_polar_volume_of_the_ball_is_exact(rng):
    (report,) = check_volumes([make_catalog_body("ball(4,2)")], 1_000, rng)
    assert report.relation is Relation.IDENTITY
    assert report.verdict is Verdict.HOLDS
    assert report.rhs.value == pytest.approx(np.pi**2 / 2 * 16)


def test_polar_volume_of_the_cube(rng):
    (report,) = check_volumes([make_catalog_body("cube(3)")], 40_000, rng)
    assert report.rhs.value == 8.0
    assert abs(report.lhs.value - 8.0) <= 5 * report.lhs.std_error


def test_ball_sections_are_reproduced_exactly(rng):
    ball = make_catalog_body("ball(3,2)")
    reports = check_sections(ball, 1, 3, 500, rng, extra=[np.ones(3) / np.sqrt(3)])
    assert len(reports) == 4
    assert all(report.verdict is Verdict.HOLDS for report in reports)
    assert all(report.rhs.value == pytest.approx(4 * np.pi) for report in reports)


def test_cube_sections_against_the_oracle(rng):
    reports = check_sections(make_catalog_body("cube(3)"), 2, 3, 20_000, rng)
    for report in reports:
        assert report.k == 2
        assert abs(report.lhs.value - report.rhs.value) <= 5 * report.lhs.std_error + 1e-9


def test_blaschke_petkantschin_for_the_ball(rng):
    (report,) = check_blaschke([make_catalog_body("ball(3)")], 1, 40_000, rng)
    assert report.theorem_id == "blaschke-petkantschin"
    se = np.hypot(report.lhs.std_error, report.rhs.std_error)
    assert abs(report.lhs.value - report.rhs.value) <= 5 * se + 1e-9
