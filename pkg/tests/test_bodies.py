import math

import numpy as np
import pytest
from pydantic import ValidationError

from convex_radon.core.errors import NotConvexError, SingularMapError
from convex_radon.geometry.bodies import Ellipsoid, LinearImage, LpBall, lp_ball_volume
from convex_radon.geometry.constants import omega
from convex_radon.geometry.subspace import Subspace

DIAGONAL = np.ones(3) / math.sqrt(3.0)


def test_ball_oracles():
    ball = Ellipsoid.ball(3, 2.0)
    assert ball.tag == "ball(3,2)"
    assert ball.radial([1.0, 0.0, 0.0]) == pytest.approx(2.0)
    assert ball.support(DIAGONAL) == pytest.approx(2.0)
    assert ball.minkowski_norm([1.0, 0.0, 0.0]) == pytest.approx(0.5)
    assert ball.volume() == pytest.approx(omega(3) * 8.0)
    assert ball.is_ball


def test_radial_is_vectorized():
    ball = Ellipsoid.ball(3)
    thetas = np.vstack([np.eye(3), [DIAGONAL]])
    assert ball.radial(thetas).shape == (4,)
    assert np.allclose(ball.radial(thetas), 1.0)


def test_wrong_dimension_is_rejected():
    with pytest.raises(ValueError, match="R\\^3"):
        Ellipsoid.ball(3).radial([1.0, 0.0])


def test_contains_and_boundary_points():
    ball = Ellipsoid.ball(2)
    assert ball.contains([0.5, 0.5])
    assert not ball.contains([1.0, 0.5])
    boundary = ball.boundary_points(np.eye(2))
    assert np.allclose(np.linalg.norm(boundary, axis=1), 1.0)
    assert ball.minkowski_norm([0.0, 0.0]) == 0.0


def test_axis_aligned_ellipsoid_sections_and_projections():
    # radii 1, 1/2, 1/3
    ellipsoid = Ellipsoid.from_shape(np.diag([1.0, 4.0, 9.0]))
    assert ellipsoid.volume() == pytest.approx(4.0 * math.pi / 3.0 / 6.0)
    plane = Subspace.orthogonal_to([0.0, 0.0, 1.0])
    assert ellipsoid.section_volume(plane) == pytest.approx(math.pi / 2.0)
    assert ellipsoid.projection_volume([0.0, 0.0, 1.0]) == pytest.approx(math.pi / 2.0)
    assert ellipsoid.support([1.0, 0.0, 0.0]) == pytest.approx(1.0)
    assert ellipsoid.radial([0.0, 1.0, 0.0]) == pytest.approx(0.5)


def test_ellipsoid_polar_inverts_the_shape():
    ellipsoid = Ellipsoid.from_shape(np.diag([1.0, 4.0]))
    polar = ellipsoid.polar()
    assert np.allclose(polar.shape, np.diag([1.0, 0.25]))
    assert ellipsoid.volume() * polar.volume() == pytest.approx(math.pi**2)


def test_ellipsoid_rejects_bad_shapes():
    with pytest.raises(ValidationError, match="positive definite"):
        Ellipsoid.from_shape(np.diag([1.0, -1.0]))
    with pytest.raises(ValidationError, match="symmetric"):
        Ellipsoid.from_shape([[1.0, 0.5], [0.0, 1.0]])


def test_ellipsoid_linear_image_stays_an_ellipsoid():
    image = Ellipsoid.ball(2).linear_image(np.diag([2.0, 3.0]))
    assert isinstance(image, Ellipsoid)
    assert image.volume() == pytest.approx(6.0 * math.pi)
    assert image.radial([0.0, 1.0]) == pytest.approx(3.0)


def test_singular_map_is_rejected():
    with pytest.raises(SingularMapError):
        Ellipsoid.ball(2).linear_image(np.array([[1.0, 2.0], [2.0, 4.0]]))


def test_p_projection_support_of_the_ball_is_rotation_invariant():
    ball = Ellipsoid.ball(3)
    values = ball.p_projection_support(np.vstack([np.eye(3), [DIAGONAL]]), 1.0)
    assert np.allclose(values, values[0])


def test_lp_ball_volumes():
    assert lp_ball_volume(2, 1.0) == pytest.approx(2.0)
    assert lp_ball_volume(3, 2.0) == pytest.approx(omega(3))
    assert lp_ball_volume(4, math.inf) == 16.0
    assert LpBall.unit(3, 1.5).volume() == pytest.approx(lp_ball_volume(3, 1.5))


def test_lp_ball_oracles_and_polar():
    body = LpBall.unit(2, 1.0)
    assert body.radial(np.array([1.0, 1.0]) / math.sqrt(2.0)) == pytest.approx(1.0 / math.sqrt(2.0))
    assert body.support(np.array([1.0, 1.0]) / math.sqrt(2.0)) == pytest.approx(1.0 / math.sqrt(2.0))
    polar = LpBall.unit(3, 3.0).polar()
    assert polar.p == pytest.approx(1.5)


def test_lp_ball_with_p_below_one_is_not_convex():
    body = LpBall.unit(3, 0.5)
    assert not body.is_convex
    with pytest.raises(NotConvexError):
        body.support([1.0, 0.0, 0.0])
    with pytest.raises(NotConvexError):
        body.polar()


def test_lp_ball_rejects_non_positive_exponent():
    with pytest.raises(ValidationError):
        LpBall(dim=3, tag="lp_ball(3,0)", p=0.0)


def test_lp_ball_scaling_updates_the_volume():
    body = LpBall.unit(3, 1.5).scaled(2.0)
    assert body.volume() == pytest.approx(8.0 * lp_ball_volume(3, 1.5))
    assert body.radial([1.0, 0.0, 0.0]) == pytest.approx(2.0)


def test_linear_image_of_a_star_body():
    body = LpBall.unit(3, 0.5)
    image = body.linear_image(np.diag([2.0, 1.0, 1.0]))
    assert isinstance(image, LinearImage)
    assert image.radial([1.0, 0.0, 0.0]) == pytest.approx(2.0)
    assert image.volume() == pytest.approx(2.0 * body.volume())
    # composition collapses into one map
    twice = image.linear_image(np.diag([1.0, 3.0, 1.0]))
    assert isinstance(twice.base, LpBall)
    assert twice.radial([0.0, 1.0, 0.0]) == pytest.approx(3.0)


def test_bounding_radius_covers_the_body():
    body = Ellipsoid.from_shape(np.diag([1.0, 0.25]))
    assert 2.0 <= body.bounding_radius() <= 2.0 * 1.05 + 1e-12
