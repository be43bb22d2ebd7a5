import math

import numpy as np
import pytest

from convex_radon.core.errors import DimensionCapError, InvalidBodyError
from convex_radon.geometry.polytope import (
    cross_polytope,
    cube,
    from_vertices,
    projection_volume_subspace,
    random_symmetric_polytope,
    regular_simplex,
)
from convex_radon.geometry.subspace import Subspace

DIAGONAL = np.ones(3) / math.sqrt(3.0)


def test_cube_volume_and_surface():
    body = cube(3)
    assert body.volume() == pytest.approx(8.0)
    assert body.surface_area == pytest.approx(24.0)
    assert body.is_zonotope
    assert body.is_symmetric


def test_cube_oracles():
    body = cube(3)
    assert body.radial([1.0, 0.0, 0.0]) == pytest.approx(1.0)
    assert body.radial(DIAGONAL) == pytest.approx(math.sqrt(3.0))
    assert body.support(DIAGONAL) == pytest.approx(math.sqrt(3.0))
    assert body.minkowski_norm([0.5, -0.25, 0.0]) == pytest.approx(0.5)


def test_cube_sections():
    body = cube(3)
    assert body.section_volume(Subspace.orthogonal_to([1.0, 0.0, 0.0])) == pytest.approx(4.0)
    # the diagonal section is a regular hexagon with side sqrt(2)
    assert body.section_volume(Subspace.orthogonal_to(DIAGONAL)) == pytest.approx(3.0 * math.sqrt(3.0))
    assert body.section_volume(Subspace.span([DIAGONAL])) == pytest.approx(2.0 * math.sqrt(3.0))


def test_cube_projections_by_the_cauchy_formula():
    body = cube(3)
    assert body.projection_volume([1.0, 0.0, 0.0]) == pytest.approx(4.0)
    assert body.projection_volume(DIAGONAL) == pytest.approx(4.0 * math.sqrt(3.0))
    plane = Subspace.orthogonal_to(DIAGONAL)
    assert projection_volume_subspace(body, plane) == pytest.approx(4.0 * math.sqrt(3.0))


def test_cross_polytope():
    body = cross_polytope(3)
    assert body.tag == "lp_ball(3,1)"
    assert body.volume() == pytest.approx(4.0 / 3.0)
    assert body.section_volume(Subspace.orthogonal_to([0.0, 0.0, 1.0])) == pytest.approx(2.0)
    assert not body.is_zonotope


def test_hull_of_cube_vertices_merges_coplanar_facets():
    vertices = np.array(np.meshgrid([-1.0, 1.0], [-1.0, 1.0], [-1.0, 1.0])).reshape(3, -1).T
    body = from_vertices(vertices, tag="hull")
    assert len(body.normals) == 6
    assert body.volume() == pytest.approx(8.0)
    assert body.surface_area == pytest.approx(24.0)


def test_polar_of_the_cube_is_the_cross_polytope():
    polar = cube(3).polar()
    assert polar.volume() == pytest.approx(4.0 / 3.0)
    assert polar.radial([1.0, 0.0, 0.0]) == pytest.approx(1.0)


def test_regular_simplex_is_not_symmetric():
    body = regular_simplex(3)
    # edge sqrt(2): volume a^3 / (6 sqrt 2)
    assert body.volume() == pytest.approx(1.0 / 3.0)
    assert not body.is_symmetric


def test_linear_image_keeps_both_representations_consistent():
    image = cube(3).linear_image(np.diag([2.0, 1.0, 0.5]))
    assert image.volume() == pytest.approx(8.0)
    assert image.radial([1.0, 0.0, 0.0]) == pytest.approx(2.0)
    assert image.projection_volume([0.0, 0.0, 1.0]) == pytest.approx(8.0)


def test_random_symmetric_polytope(rng):
    body = random_symmetric_polytope(3, 12, rng)
    assert body.is_symmetric
    assert 0.0 < body.volume() < 4.0 * math.pi / 3.0
    with pytest.raises(InvalidBodyError):
        random_symmetric_polytope(3, 2, rng)


def test_origin_outside_the_hull_is_rejected():
    with pytest.raises(InvalidBodyError, match="interior"):
        from_vertices(np.array([[1.0, 1.0], [2.0, 1.0], [1.0, 2.0]]), tag="offset triangle")


def test_triangulation_dimension_is_capped():
    with pytest.raises(DimensionCapError):
        from_vertices(np.vstack([np.eye(7), -np.eye(7)]), tag="too big")


def test_cube_rejects_non_positive_width():
    with pytest.raises(InvalidBodyError):
        cube(3, 0.0)
