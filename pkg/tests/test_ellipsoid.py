import math

import numpy as np
import pytest

from convex_radon.core.errors import CertificationError, NotConvexError, NotSymmetricError
from convex_radon.geometry.bodies import Ellipsoid, LpBall
from convex_radon.geometry.constants import omega
from convex_radon.geometry.ellipsoid import (
    deterministic_directions,
    dovr_bp_bound,
    dvr_projection_bound,
    enclosing_shape,
    inscribed_ellipsoid,
    general_dovr_bound,
    loewner,
    ovr,
)
from convex_radon.geometry.polytope import cross_polytope, cube, regular_simplex
from convex_radon.schemas.bounds import BoundKind

CUBE_OVR = (omega(3) * 3.0 * math.sqrt(3.0) / 8.0) ** (1.0 / 3.0)


def test_deterministic_directions_are_unit_vectors():
    directions = deterministic_directions(3)
    assert directions.shape == (18, 3)
    assert np.allclose(np.linalg.norm(directions, axis=1), 1.0)


def test_loewner_ellipsoid_of_the_cube_is_the_circumscribed_ball():
    ellipsoid = loewner(cube(3))
    assert np.allclose(ellipsoid.shape, np.eye(3) / 3.0, atol=1e-4)


def test_loewner_ellipsoid_of_the_cross_polytope_is_the_unit_ball():
    ellipsoid = loewner(cross_polytope(3))
    assert np.allclose(ellipsoid.shape, np.eye(3), atol=1e-4)


def test_loewner_of_an_ellipsoid_is_itself():
    body = Ellipsoid.from_shape(np.diag([1.0, 2.0, 3.0]))
    assert loewner(body) is body


def test_loewner_requires_symmetric_convex_bodies():
    with pytest.raises(NotSymmetricError):
        loewner(regular_simplex(3))
    with pytest.raises(NotConvexError):
        loewner(LpBall.unit(3, 0.5))


def test_enclosing_shape_needs_a_spanning_cloud():
    cloud = np.array([[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, -1.0, 0.0]])
    with pytest.raises(CertificationError):
        enclosing_shape(cloud)


def test_outer_volume_ratio_of_the_cube():
    bound = ovr(cube(3))
    assert bound.kind is BoundKind.LOEWNER_ELLIPSOID
    assert bound.value == pytest.approx(CUBE_OVR, rel=1e-4)


def test_inscribed_ellipsoid_of_the_cube_is_the_unit_ball():
    inner = inscribed_ellipsoid(cube(3))
    assert np.allclose(inner.shape, np.eye(3), atol=1e-4)


def test_projection_body_distance_bounds():
    assert dvr_projection_bound(Ellipsoid.ball(3), 2.0).is_exact
    assert dvr_projection_bound(cube(3), 1.0).is_exact
    john = dvr_projection_bound(cube(3), 2.0)
    assert john.kind is BoundKind.JOHN_ELLIPSOID
    assert john.value == pytest.approx((8.0 / omega(3)) ** (1.0 / 3.0), rel=1e-4)
    assert john.value <= math.sqrt(3.0)
    with pytest.raises(ValueError):
        dvr_projection_bound(cube(3), 0.5)


def test_general_dovr_bound_is_symbolic():
    bound = general_dovr_bound(4, 2)
    assert bound.value is None
    assert bound.symbolic.startswith("C*sqrt(n/k)")


def test_dovr_bound_falls_back_to_the_outer_volume_ratio():
    bound = dovr_bp_bound(cube(3), 1)
    assert bound.value == pytest.approx(CUBE_OVR, rel=1e-4)


def test_dovr_bound_of_a_non_symmetric_body_needs_a_user_bound():
    with pytest.raises(NotSymmetricError):
        dovr_bp_bound(regular_simplex(3), 1)
