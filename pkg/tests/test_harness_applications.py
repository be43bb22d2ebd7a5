import math

import pytest

from convex_radon.geometry.catalog import make_catalog_body, make_density
from convex_radon.harness.applications import check_applications, isotropic_position
from convex_radon.schemas.report import Verdict

UNIT = make_density("constant(1)", 3)


def test_section_based_applications_hold_for_the_ball(rng):
    ball = make_catalog_body("ball(3)")
    reports = check_applications(
        ["comparison", "slicing", "mean-value", "proportional"], ball, ball, UNIT, UNIT, 2, 2_000, rng, net_size=3
    )
    ids = ["comparison", "slicing", "slicing", "mean-value", "proportional"]
    assert [report.theorem_id for report in reports] == ids
    assert [report.k for report in reports] == [2, 1, 2, 2, 2]
    assert all(report.verdict is Verdict.HOLDS for report in reports)


def test_slicing_for_a_gaussian_on_the_cube(rng):
    cube = make_catalog_body("cube(3)")
    gaussian = make_density("gaussian(1)", 3)
    reports = check_applications(["slicing"], cube, cube, gaussian, UNIT, 1, 2_000, rng, net_size=4)
    assert len(reports) == 1
    assert reports[0].verdict is not Verdict.VIOLATED


def test_minimal_projection_of_the_cube(rng):
    cube = make_catalog_body("cube(3)")
    reports = check_applications(["min-projection"], cube, cube, UNIT, UNIT, 1, 1_000, rng, net_size=4)
    assert [report.theorem_id for report in reports] == ["min-projection", "c(n,1)", "john-distance"]
    assert all(report.passed for report in reports)
    assert reports[0].lhs.value == pytest.approx(4.0)
    assert reports[2].lhs.value == pytest.approx((8 / (4 * math.pi / 3)) ** (1 / 3), rel=1e-3)


def test_unknown_applications_are_rejected(rng):
    ball = make_catalog_body("ball(3)")
    with pytest.raises(ValueError, match="unknown applications"):
        check_applications(["hyperplane"], ball, ball, UNIT, UNIT, 1, 100, rng)


@pytest.mark.slow
def test_isotropic_constant_of_the_cube(rng):
    position = isotropic_position(make_catalog_body("cube(3)"), 50_000, rng)
    assert position.constant.value == pytest.approx(1 / math.sqrt(12), rel=0.02)
    assert position.body.volume() == pytest.approx(1.0, rel=0.02)
    assert position.condition < 1.1


@pytest.mark.slow
def test_isotropy_reports_for_the_cube(rng):
    cube = make_catalog_body("cube(3)")
    reports = check_applications(["isotropy"], cube, cube, UNIT, UNIT, 1, 20_000, rng)
    assert [report.theorem_id for report in reports] == ["isotropy-spread", "hensley-upper", "hensley-lower", "milman"]
    assert all(report.verdict is not Verdict.VIOLATED for report in reports[1:])
