import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from convex_radon.core.errors import UnsupportedBodyError
from convex_radon.geometry.bodies import Ellipsoid, LpBall
from convex_radon.geometry.brunn import (
    firey_difference_quotient,
    mixed_volume_v1,
    p_mixed_volume,
    p_projection_support,
    p_surface_measure,
    projection_volume,
    projection_volume_subspace,
    shadow_area,
    surface_measure,
    wulff_volume,
)
from convex_radon.geometry.polytope import cube, random_symmetric_polytope, regular_simplex
from convex_radon.geometry.sampling import RngStream
from convex_radon.geometry.subspace import Subspace


def test_surface_measure_of_the_cube():
    measure = surface_measure(cube(3))
    assert measure.total_mass == pytest.approx(24.0)
    assert np.allclose(measure.masses @ measure.normals, 0.0)


def test_surface_measure_of_a_star_body_is_unsupported():
    with pytest.raises(UnsupportedBodyError):
        surface_measure(LpBall.unit(3, 1.5))
    with pytest.raises(UnsupportedBodyError):
        surface_measure(Ellipsoid.ball(3)).total_mass


def test_p_surface_measure_reweights_by_the_support():
    body = cube(3, 2.0)
    measure = p_surface_measure(body, 2.0)
    assert np.allclose(measure.masses, body.areas / 2.0)


@pytest.mark.parametrize("p", [1.0, 1.5, 3.0])
def test_mixed_volume_of_a_body_with_itself_is_its_volume(p):
    body = regular_simplex(3)
    assert p_mixed_volume(body, body, p) == pytest.approx(body.volume())


def test_first_mixed_volume_of_cube_and_ball():
    assert mixed_volume_v1(cube(3), Ellipsoid.ball(3)) == pytest.approx(8.0)


def test_projection_volumes():
    assert projection_volume(cube(3), [0.0, 1.0, 0.0]) == pytest.approx(4.0)
    assert projection_volume(Ellipsoid.ball(3), [0.0, 1.0, 0.0]) == pytest.approx(math.pi)
    with pytest.raises(ValueError, match="unit norm"):
        projection_volume(cube(3), [1.0, 1.0, 0.0])
    with pytest.raises(UnsupportedBodyError):
        projection_volume(LpBall.unit(3, 1.5), [1.0, 0.0, 0.0])


def test_projection_onto_subspaces():
    line = Subspace.coordinate(3, [0])
    assert projection_volume_subspace(cube(3), line) == pytest.approx(2.0)
    ellipsoid = Ellipsoid.from_shape(np.diag([1.0, 4.0, 9.0]))
    assert projection_volume_subspace(ellipsoid, Subspace.coordinate(3, [0, 1])) == pytest.approx(math.pi / 2.0)


def test_p_projection_support_matches_cauchy_at_p_one():
    body = cube(3)
    assert 3.0 * p_projection_support(body, [1.0, 0.0, 0.0], 1.0) == pytest.approx(4.0)
    ball = Ellipsoid.ball(3)
    assert 3.0 * p_projection_support(ball, [0.0, 0.0, 1.0], 1.0) == pytest.approx(math.pi)


def test_p_projection_support_rejects_small_p_and_star_bodies():
    with pytest.raises(ValueError):
        p_projection_support(cube(3), [1.0, 0.0, 0.0], 0.5)
    with pytest.raises(UnsupportedBodyError):
        p_projection_support(LpBall.unit(3, 1.5), [1.0, 0.0, 0.0], 2.0)


def test_wulff_volume_of_cube_facets():
    body = cube(3)
    assert wulff_volume(body.normals, body.offsets) == pytest.approx(8.0)


def test_firey_quotient_tends_to_the_p_mixed_volume():
    body, ball = cube(3), Ellipsoid.ball(3)
    quotient = firey_difference_quotient(body, ball, 2.0)
    assert quotient == pytest.approx(p_mixed_volume(body, ball, 2.0), rel=1e-4)


def test_shadow_area_agrees_with_cauchy(rng):
    estimate = shadow_area(cube(3), [1.0, 0.0, 0.0], rng, resolution=0.02)
    assert estimate.within(4.0, n_se=4.0)


def test_shadow_area_of_an_ellipsoid(rng):
    ellipsoid = Ellipsoid.from_shape(np.diag([1.0, 4.0, 9.0]))
    estimate = shadow_area(ellipsoid, [0.0, 0.0, 1.0], rng, resolution=0.01)
    assert estimate.within(math.pi / 2.0, n_se=4.0)


def _pair(seed: int, sizes: tuple[int, int]):
    stream = RngStream(seed=seed)
    return (
        random_symmetric_polytope(3, sizes[0], stream.child(0)),
        random_symmetric_polytope(3, sizes[1], stream.child(1)),
    )


pairs = st.tuples(st.integers(0, 2**31), st.tuples(st.integers(4, 12), st.integers(4, 12)))


@given(pairs)
def test_minkowski_inequality_on_random_polytopes(data):
    K, L = _pair(*data)
    assert mixed_volume_v1(K, L) ** 3 >= K.volume() ** 2 * L.volume() * (1 - 1e-9)


@given(pairs, st.sampled_from([1.5, 2.0, 3.0]))
def test_lutwak_inequality_on_random_polytopes(data, p):
    K, L = _pair(*data)
    assert p_mixed_volume(K, L, p) ** 3 >= K.volume() ** (3 - p) * L.volume() ** p * (1 - 1e-9)


@given(pairs, st.floats(0.25, 4.0))
def test_first_mixed_volume_is_homogeneous_in_the_second_body(data, t):
    K, L = _pair(*data)
    assert mixed_volume_v1(K, L.scaled(t)) == pytest.approx(t * mixed_volume_v1(K, L), rel=1e-9)


@given(pairs, st.sampled_from([1.0, 2.0, 3.0]))
def test_p_projection_support_is_subadditive(data, p):
    K, _ = _pair(*data)
    gen = RngStream(seed=data[0]).child(2).generator()
    xi, eta = gen.standard_normal((2, 3))
    h = p_projection_support(K, np.array([xi, eta, xi + eta]), p)
    assert h[2] <= (h[0] + h[1]) * (1 + 1e-9)
