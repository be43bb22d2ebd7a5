import numpy as np
import pytest
from pydantic import ValidationError

from convex_radon.geometry.sampling import RngStream, sample_grassmann, sample_rotation, sample_sphere, sample_subsphere
from convex_radon.geometry.simplices import batch_simplex_volumes, simplex_volume
from convex_radon.geometry.subspace import Subspace, as_direction


def test_as_direction_rejects_non_unit_vectors():
    assert np.allclose(as_direction([0.0, 1.0, 0.0]), [0.0, 1.0, 0.0])
    with pytest.raises(ValueError, match="unit norm"):
        as_direction([1.0, 1.0, 0.0])


def test_orthogonal_complement_of_a_direction():
    plane = Subspace.orthogonal_to([1.0, 0.0, 0.0])
    assert plane.dim == 2
    assert plane.codim == 1
    assert np.allclose(plane.basis[0], 0.0)
    complement = plane.complement_basis()
    assert complement.shape == (3, 1)
    assert abs(abs(complement[0, 0]) - 1.0) < 1e-12


def test_non_orthonormal_basis_is_rejected():
    with pytest.raises(ValidationError):
        Subspace(ambient_dim=3, basis=[[1.0, 1.0], [0.0, 1.0], [0.0, 0.0]])


def test_full_space_is_not_a_grassmannian_point():
    with pytest.raises(ValidationError):
        Subspace(ambient_dim=2, basis=np.eye(2))


def test_span_of_dependent_vectors_is_rejected():
    with pytest.raises(ValueError, match="dependent"):
        Subspace.span([[1.0, 0.0, 0.0], [2.0, 0.0, 0.0]])


def test_coordinates_and_lift_are_inverse_on_the_subspace():
    plane = Subspace.coordinate(4, [0, 2])
    coords = np.array([[1.0, -2.0], [0.5, 3.0]])
    assert np.allclose(plane.coordinates(plane.lift(coords)), coords)


def test_streams_are_reproducible_and_children_differ():
    root = RngStream(seed=7)
    first = sample_sphere(3, root.child(0), 5)
    again = sample_sphere(3, RngStream(seed=7).child(0), 5)
    other = sample_sphere(3, root.child(1), 5)
    assert np.array_equal(first, again)
    assert not np.allclose(first, other)


def test_sphere_samples_are_unit_and_centered(rng):
    points = sample_sphere(4, rng, 20_000)
    assert np.allclose(np.linalg.norm(points, axis=1), 1.0)
    assert np.all(np.abs(points.mean(axis=0)) < 0.03)
    # E[x_i^2] = 1/n
    assert np.allclose((points**2).mean(axis=0), 0.25, atol=0.01)


def test_single_sphere_point_is_a_vector(rng):
    assert sample_sphere(3, rng).shape == (3,)


def test_subsphere_points_stay_in_the_subspace(rng):
    plane = Subspace.orthogonal_to([0.0, 0.0, 1.0])
    points = sample_subsphere(plane, rng, 100)
    assert np.allclose(points[:, 2], 0.0)
    assert np.allclose(np.linalg.norm(points, axis=1), 1.0)


def test_grassmann_sample_has_requested_dimension(rng):
    subspace = sample_grassmann(5, 2, rng)
    assert subspace.dim == 2
    assert subspace.ambient_dim == 5
    with pytest.raises(ValueError):
        sample_grassmann(3, 3, rng)


def test_rotation_is_orthogonal(rng):
    q = sample_rotation(4, rng)
    assert np.allclose(q @ q.T, np.eye(4))


def test_simplex_volumes():
    assert simplex_volume([[1.0, 0.0], [0.0, 1.0]]) == pytest.approx(0.5)
    assert simplex_volume([[1.0, 0.0, 0.0], [1.0, 1.0, 0.0], [1.0, 1.0, 1.0]]) == pytest.approx(1.0 / 6.0)
    # a triangle in R^3 measured as a 2-dimensional simplex
    assert simplex_volume([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]) == pytest.approx(0.5)
    assert simplex_volume([[1.0, 0.0], [2.0, 0.0]]) == 0.0
    with pytest.raises(ValueError):
        simplex_volume(np.eye(3)[:, :2])


def test_batch_simplex_volumes_match_the_single_version(rng):
    stack = rng.generator().standard_normal((10, 2, 4))
    expected = [simplex_volume(item) for item in stack]
    assert np.allclose(batch_simplex_volumes(stack), expected)
