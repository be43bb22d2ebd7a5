import pytest

from convex_radon.core.errors import ConfigError
from convex_radon.geometry.radon import Partition
from convex_radon.geometry.sampling import RngStream
from convex_radon.harness.registry import REGISTRY, CheckContext, hull_trials, run_check
from convex_radon.schemas.config import CHECKERS, CheckSpec
from convex_radon.schemas.report import Verdict


def _ctx(samples: int = 2_000) -> CheckContext:
    return CheckContext(rng=RngStream(seed=21), samples=samples, partition=Partition())


def test_every_checker_id_is_registered():
    assert set(REGISTRY) == set(CHECKERS)


def test_hull_trial_counts():
    assert hull_trials(2) == 10_000
    assert hull_trials(4) == 10_000
    assert hull_trials(5) == 1_000


def test_holder_check_from_shorthand():
    spec = CheckSpec.model_validate("quotient_holder: K=ball(3), L=ball(3), k=1, net_size=2")
    (report,) = run_check(spec, _ctx())
    assert report.theorem_id == "quotient-holder"
    assert report.verdict is Verdict.HOLDS


def test_missing_bodies_are_reported_by_field():
    with pytest.raises(ConfigError, match="field 'K' is required"):
        run_check(CheckSpec(check="grinberg", k=1), _ctx())
    with pytest.raises(ConfigError, match="field 'bodies' is required"):
        run_check(CheckSpec(check="volumes"), _ctx())
    with pytest.raises(ConfigError, match="field 'k' is required"):
        run_check(CheckSpec.model_validate("quotient_holder: K=ball(3), L=ball(3)"), _ctx())


def test_unknown_application_is_a_config_error():
    spec = CheckSpec.model_validate("applications: K=ball(3), k=1, selection=[hyperplane]")
    with pytest.raises(ConfigError, match="field 'selection'"):
        run_check(spec, _ctx())


def test_section_lemmas_hull_envelopes_only():
    spec = CheckSpec.model_validate("section_lemmas: m=[2], hull_trials=20")
    reports = run_check(spec, _ctx())
    assert [report.theorem_id for report in reports] == ["barany-furedi"] * 3 + ["ovr-convex-hull"]


def test_gaussian_dpp_defaults_its_support():
    spec = CheckSpec.model_validate("section_lemmas: K=ball(3)@vol=1, g=gaussian(1), k=1, trials=3")
    reports = run_check(spec, _ctx())
    assert [report.theorem_id for report in reports] == ["grinberg", "dpp"]
    assert reports[1].bodies["D"] == "ball(3,6)"


def test_constants_and_main_proj():
    assert len(run_check(CheckSpec(check="constants"), _ctx())) == 5
    reports = run_check(CheckSpec.model_validate("main_proj: K=cube(3), L=cube(3), p=1, net_size=2"), _ctx())
    assert [report.theorem_id for report in reports] == ["main-proj", "projection-dominance"]


def test_sections_check_adds_the_diagonal():
    reports = run_check(CheckSpec.model_validate("sections: K=ball(3), k=1, trials=2"), _ctx())
    assert len(reports) == 3
