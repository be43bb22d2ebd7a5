import math

import numpy as np
import pytest
from pydantic import ValidationError

from convex_radon.schemas.bounds import BoundKind, DistanceBound
from convex_radon.schemas.estimate import Estimate, as_estimate, pooled_std_error
from convex_radon.schemas.report import ConstantUsed, InequalityReport, Relation, Verdict


def test_from_samples_uses_the_unbiased_variance():
    estimate = Estimate.from_samples([1.0, 2.0, 3.0, 4.0])
    assert estimate.value == pytest.approx(2.5)
    assert estimate.std_error == pytest.approx(np.std([1, 2, 3, 4], ddof=1) / 2.0)
    assert estimate.samples == 4


def test_from_samples_rejects_empty_input():
    with pytest.raises(ValueError):
        Estimate.from_samples([])


def test_exact_estimates_have_no_error():
    estimate = as_estimate(3.0)
    assert estimate == Estimate.exact(3.0)
    assert estimate.std_error == 0.0
    assert estimate.relative_error == 0.0


def test_negative_standard_error_is_rejected():
    with pytest.raises(ValidationError):
        Estimate(value=1.0, std_error=-0.1)


def test_product_and_quotient_propagate_relative_errors():
    a = Estimate(value=2.0, std_error=0.02, samples=100)
    b = Estimate(value=4.0, std_error=0.08, samples=100)
    product = a * b
    assert product.value == pytest.approx(8.0)
    assert product.std_error == pytest.approx(8.0 * math.hypot(0.01, 0.02))
    quotient = a / b
    assert quotient.value == pytest.approx(0.5)
    assert quotient.std_error == pytest.approx(0.5 * math.hypot(0.01, 0.02))
    assert (a * 3.0).std_error == pytest.approx(0.06)
    assert (2.0 / a).value == pytest.approx(1.0)


def test_power_scales_the_relative_error():
    a = Estimate(value=4.0, std_error=0.04, samples=10)
    root = a**0.5
    assert root.value == pytest.approx(2.0)
    assert root.relative_error == pytest.approx(0.5 * 0.01)


def test_division_by_zero_estimate():
    with pytest.raises(ZeroDivisionError):
        Estimate.exact(1.0) / Estimate.exact(0.0)


def test_pooling_prefers_exact_members():
    noisy = Estimate(value=1.1, std_error=0.1, samples=10)
    assert Estimate.pool([noisy, Estimate.exact(1.0)]).value == 1.0
    pooled = Estimate.pool([noisy, Estimate(value=0.9, std_error=0.1, samples=10)])
    assert pooled.value == pytest.approx(1.0)
    assert pooled.std_error == pytest.approx(0.1 / math.sqrt(2.0))
    assert pooled.samples == 20


def test_pooled_std_error_ignores_plain_floats():
    assert pooled_std_error(Estimate(value=1.0, std_error=0.3), 2.0, Estimate(value=0.0, std_error=0.4)) == 0.5


def test_within():
    estimate = Estimate(value=1.0, std_error=0.01)
    assert estimate.within(1.02)
    assert not estimate.within(1.05)


def test_verdict_holds_for_clear_margins():
    report = InequalityReport.compare("demo", Estimate(value=1.0, std_error=0.01), 2.0)
    assert report.verdict is Verdict.HOLDS
    assert report.margin == pytest.approx(100.0)
    assert report.passed


def test_verdict_violated_beyond_the_tolerance():
    report = InequalityReport.compare("demo", Estimate(value=2.0, std_error=0.01), 1.0)
    assert report.verdict is Verdict.VIOLATED
    assert not report.passed


def test_statistical_tie_is_inconclusive():
    report = InequalityReport.compare("demo", Estimate(value=1.01, std_error=0.01), 1.0)
    assert report.verdict is Verdict.INCONCLUSIVE


def test_exact_equality_holds():
    report = InequalityReport.compare("demo", 1.0, 1.0 + 1e-12)
    assert report.verdict is Verdict.HOLDS
    assert report.margin is None


def test_identity_relation():
    close = InequalityReport.compare(
        "demo", Estimate(value=1.0, std_error=0.01), 1.02, relation=Relation.IDENTITY
    )
    assert close.verdict is Verdict.HOLDS
    far = InequalityReport.compare("demo", Estimate(value=1.0, std_error=0.01), 1.1, relation=Relation.IDENTITY)
    assert far.verdict is Verdict.VIOLATED


def test_substituted_bounds_downgrade_holds():
    report = InequalityReport.compare("demo", 1.0, 2.0, bounds_substituted=True)
    assert report.verdict is Verdict.HOLDS_WITH_BOUND
    assert report.passed


def test_non_finite_sides_are_inconclusive():
    report = InequalityReport.compare("demo", 1.0, math.inf)
    assert report.verdict is Verdict.INCONCLUSIVE


def test_distance_bounds():
    exact = DistanceBound.exact_one("ellipsoid")
    assert exact.is_exact
    assert exact.numeric() == 1.0
    with pytest.raises(ValidationError, match=">= 1"):
        DistanceBound(kind=BoundKind.LOEWNER_ELLIPSOID, value=0.5, provenance="bad")
    with pytest.raises(ValidationError, match="numeric value"):
        DistanceBound(kind=BoundKind.USER_SUPPLIED, value=None, provenance="bad")
    formula = DistanceBound(kind=BoundKind.REGISTERED_FORMULA, value=None, provenance="f", symbolic="C*n")
    with pytest.raises(ValueError, match="no numeric value"):
        formula.numeric()


def test_constant_from_bound_carries_the_symbolic_form():
    bound = DistanceBound(kind=BoundKind.REGISTERED_FORMULA, value=None, provenance="general", symbolic="C*sqrt(n/k)")
    constant = ConstantUsed.from_bound("d_ovr", bound)
    assert constant.value is None
    assert constant.provenance == "registered-formula: general [C*sqrt(n/k)]"
