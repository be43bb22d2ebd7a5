import pytest

from convex_radon.geometry.catalog import make_catalog_body
from convex_radon.geometry.sampling import RngStream
from convex_radon.harness.nets import SubspaceNet, direction_net
from convex_radon.harness.projections import brunn_suite, check_main_proj, check_proj_section_mixed
from convex_radon.schemas.report import Verdict


def test_main_proj_for_the_cube_adds_projection_dominance(rng):
    cube = make_catalog_body("cube(3)")
    reports = check_main_proj(cube, cube, 1.0, direction_net(3, 8, rng.child(0)), 1_000, rng.child(1))
    assert [report.theorem_id for report in reports] == ["main-proj", "projection-dominance"]
    assert all(report.verdict is Verdict.HOLDS for report in reports)
    assert reports[0].constants_used[0].provenance.startswith("exact")


def test_main_proj_for_the_ball_at_p_two(rng):
    ball = make_catalog_body("ball(3)")
    reports = check_main_proj(ball, ball, 2.0, direction_net(3, 4, rng.child(0)), 1_000, rng.child(1))
    assert len(reports) == 1
    assert reports[0].verdict is Verdict.HOLDS
    assert reports[0].p == 2.0


def test_main_proj_rejects_mixed_dimensions(rng):
    with pytest.raises(ValueError, match="different dimensions"):
        check_main_proj(
            make_catalog_body("cube(3)"), make_catalog_body("cube(4)"), 1.0, direction_net(3, 0, rng), 100, rng
        )


def test_projection_section_mixed_for_the_ball(rng):
    ball = make_catalog_body("ball(3)")
    net = SubspaceNet(n=3, m=2, random_count=3, rng=RngStream(seed=5))
    report = check_proj_section_mixed(ball, ball, 1, net, 1_000, rng)
    assert report.lhs.value == 1.0
    assert report.rhs.value == pytest.approx(1.0)
    assert report.verdict is Verdict.HOLDS


def test_projection_section_mixed_for_the_cube_against_the_ball(rng):
    net = SubspaceNet(n=3, m=2, random_count=8, rng=RngStream(seed=5))
    report = check_proj_section_mixed(make_catalog_body("cube(3)"), make_catalog_body("ball(3)"), 1, net, 1_000, rng)
    assert report.verdict is Verdict.HOLDS
    assert report.bodies == {"K": "cube(3,1)", "D": "ball(3,1)"}


def test_brunn_suite_on_random_polytopes():
    reports = brunn_suite(5, RngStream(seed=8))
    ids = [report.theorem_id for report in reports]
    assert len(reports) == 19
    assert ids.count("lutwak") == 3
    assert ids.count("p-mixed-volume-identity") == 3
    assert ids.count("lutwak-equality") == 3
    assert ids.count("cauchy-shadow") == 6
    for report in reports:
        if report.theorem_id == "cauchy-shadow":
            assert abs(report.lhs.value - report.rhs.value) <= 5 * report.lhs.std_error + 1e-9
        else:
            assert report.verdict is not Verdict.VIOLATED, report.theorem_id


def test_projection_dominance_uses_the_distance_to_the_first_power(rng):
    octahedron = make_catalog_body("lp_ball(3,1)")
    inner = octahedron.scaled(0.5)
    reports = check_main_proj(inner, octahedron, 1.0, direction_net(3, 8, rng.child(0)), 1_000, rng.child(1))
    distance = reports[0].constants_used[0].value
    dominance = reports[1]
    assert distance > 1.0
    assert dominance.constants_used[0].symbol == "d_vr(L,Pi)"
    assert dominance.constants_used[0].value == pytest.approx(distance)
    assert dominance.rhs.value == pytest.approx(octahedron.volume() * distance)
    assert dominance.lhs.value == pytest.approx(octahedron.volume() / 8)
    assert dominance.verdict in {Verdict.HOLDS, Verdict.HOLDS_WITH_BOUND}


def test_brunn_suite_reports_the_lutwak_equality_case():
    reports = [r for r in brunn_suite(4, RngStream(seed=3)) if r.theorem_id == "lutwak-equality"]
    assert [report.p for report in reports] == [1.5, 2.0, 3.0]
    for report in reports:
        assert report.verdict is Verdict.HOLDS
        assert report.lhs.value == pytest.approx(report.rhs.value, rel=1e-9)
