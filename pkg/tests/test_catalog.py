import math

import numpy as np
import pytest
from pydantic import ValidationError

from convex_radon.core.errors import InvalidBodyError, NormalizationError
from convex_radon.geometry.bodies import Ellipsoid, LpBall
from convex_radon.geometry.catalog import is_intersection_body, make_catalog_body, make_density
from convex_radon.geometry.constants import omega
from convex_radon.geometry.densities import (
    BodyIndicator,
    ConstantDensity,
    Density,
    GaussianDensity,
    RadialPower,
    check_sup_normalized,
    sampled_sup,
)
from convex_radon.geometry.polytope import ConvexPolytope
from convex_radon.schemas.catalog import BodySpec, DensitySpec, format_number


@pytest.mark.parametrize(
    ("text", "label"),
    [
        ("ball(3)", "ball(3,1)"),
        ("cube(4,0.5)", "cube(4,0.5)"),
        ("lp_ball(3,1.5)@vol=1", "lp_ball(3,1.5)@vol=1"),
        ("lp_ball(3,inf)", "lp_ball(3,inf)"),
        ("random_polytope(3,10,7)@scale=2", "random_polytope(3,10,7)@scale=2"),
        ("ellipsoid([[1,0],[0,4]])", "ellipsoid([[1,0],[0,4]])"),
    ],
)
def test_shorthand_labels_are_canonical(text, label):
    spec = BodySpec.model_validate(text)
    assert spec.label == label
    assert BodySpec.model_validate(spec.label) == spec


def test_body_spec_dimension():
    assert BodySpec.model_validate("ellipsoid([[1,0],[0,4]])").dim == 2
    assert BodySpec.model_validate("simplex(5)").dim == 5


@pytest.mark.parametrize(
    "text",
    ["sphere(3)", "lp_ball(3)", "cube(3,1)@vol=1@scale=2", "cube(3,1)@size=2", "ball(3,1,2)", "cube(3,-1)"],
)
def test_invalid_body_descriptors(text):
    with pytest.raises(ValidationError):
        BodySpec.model_validate(text)


def test_format_number():
    assert format_number(3.0) == "3"
    assert format_number(1.5) == "1.5"
    assert format_number(math.inf) == "inf"


def test_catalog_bodies():
    ball = make_catalog_body("ball(3)")
    assert isinstance(ball, Ellipsoid)
    assert ball.tag == "ball(3,1)"
    assert ball.volume() == pytest.approx(omega(3))
    cross = make_catalog_body("lp_ball(3,1)")
    assert isinstance(cross, ConvexPolytope)
    assert cross.volume() == pytest.approx(4.0 / 3.0)
    assert isinstance(make_catalog_body("lp_ball(3,2)"), Ellipsoid)
    assert isinstance(make_catalog_body("lp_ball(3,1.5)"), LpBall)
    assert make_catalog_body("lp_ball(3,inf)").volume() == pytest.approx(8.0)


def test_catalog_bodies_are_cached_by_label():
    assert make_catalog_body("cube(3,1)") is make_catalog_body(BodySpec.model_validate("cube(3)"))


def test_volume_normalization():
    body = make_catalog_body("cube(3,1)@vol=1")
    assert body.volume() == pytest.approx(1.0)
    assert body.tag == "cube(3,1)@vol=1"
    assert make_catalog_body("ball(2,1)@scale=2").volume() == pytest.approx(4.0 * math.pi)


def test_invalid_descriptor_raises_invalid_body():
    with pytest.raises(InvalidBodyError):
        make_catalog_body("sphere(3)")
    with pytest.raises(InvalidBodyError):
        make_catalog_body("ellipsoid([[1,0],[0,-1]])")


def test_distance_registry():
    assert make_catalog_body("ball(4)").dovr_bounds(2)[0].is_exact
    assert make_catalog_body("lp_ball(4,1.5)").dovr_bounds(1)[0].is_exact
    assert is_intersection_body(BodySpec.model_validate("lp_ball(3,2)"))
    assert not is_intersection_body(BodySpec.model_validate("cube(3)"))
    cube_bounds = make_catalog_body("cube(3)").dovr_bounds(1)
    assert {bound.kind.value for bound in cube_bounds} == {"registered-formula", "loewner-ellipsoid"}
    assert make_catalog_body("simplex(3)").dovr_bounds(1) == ()


def test_density_descriptors():
    assert make_density("gaussian(2)", 3) == GaussianDensity(scale=2.0)
    assert make_density("constant(2)", 3) == ConstantDensity(value=2.0)
    indicator = make_density("indicator(ball(3,1))", 3)
    assert isinstance(indicator, BodyIndicator)
    assert indicator([0.5, 0.0, 0.0]) == 1.0
    assert indicator([1.5, 0.0, 0.0]) == 0.0
    assert DensitySpec.model_validate("coordinate_power(1,3)").label == "coordinate_power(1,3)"


@pytest.mark.parametrize("text", ["half_space(1,0)", "coordinate_power(3,2)", "indicator(ball(2,1))", "wave(1)"])
def test_density_descriptors_checked_against_the_dimension(text):
    with pytest.raises(InvalidBodyError):
        make_density(text, 3)


def test_density_oracles():
    points = np.array([[1.0, 0.0], [0.0, 2.0]])
    assert np.allclose(GaussianDensity(scale=1.0)(points), np.exp([-1.0, -4.0]))
    assert np.allclose(RadialPower(exponent=2.0)(points), [1.0, 4.0])
    assert sampled_sup(RadialPower(exponent=1.0), points) == pytest.approx(2.0)
    assert sampled_sup(GaussianDensity(scale=1.0), points) == 1.0


class Bump(Density):
    """1 + |x|^2: equals 1 at the origin and exceeds it elsewhere."""

    def _eval(self, points):
        return 1.0 + np.einsum("ij,ij->i", points, points)


def test_sup_normalization():
    points = np.array([[1.0, 0.0], [0.0, 2.0]])
    check_sup_normalized(GaussianDensity(scale=3.0), points)
    with pytest.raises(NormalizationError, match="exceeds 1"):
        check_sup_normalized(Bump(), points)
    with pytest.raises(NormalizationError, match="g\\(0\\)"):
        check_sup_normalized(RadialPower(exponent=1.0), points)
    with pytest.raises(NormalizationError, match="g\\(0\\)"):
        check_sup_normalized(ConstantDensity(value=2.0), points)
