"""
Convex polytopes with exact facet data.

Facets come either from closed forms (cube, cross-polytope) or from a qhull
triangulation of the vertex hull, in which case each facet's area is the sum of
its (n-1)-simplices. Triangulation is capped at n <= 6.
"""

from __future__ import annotations

import itertools
import logging
import math
from functools import cached_property
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import Field, field_validator, model_validator
from scipy.spatial import ConvexHull, HalfspaceIntersection, QhullError, cKDTree

from convex_radon.core.errors import DimensionCapError, InvalidBodyError
from convex_radon.geometry.bodies import StarBody, _invertible, _rows, _unrow
from convex_radon.geometry.sampling import Randomness, as_generator, sample_sphere
from convex_radon.geometry.simplices import batch_simplex_volumes
from convex_radon.geometry.subspace import Subspace

logger = logging.getLogger(__name__)

MAX_TRIANGULATION_DIM = 6
MAX_PROJECTION_DIM = 4
SUPPORT_TOL = 1e-10
CLOSURE_TOL = 1e-8
FACET_DECIMALS = 9


def _frozen(value: Any, ndim: int) -> np.ndarray:
    array = np.array(value, dtype=float)
    if array.ndim != ndim:
        raise ValueError(f"expected a {ndim}-d array, got shape {array.shape}")
    array.setflags(write=False)
    return array


class ConvexPolytope(StarBody):
    """A convex polytope with the origin in its interior, stored in both V- and H-representation."""

    vertices: np.ndarray = Field(..., description="Vertex coordinates, one row per vertex.")
    normals: np.ndarray = Field(..., description="Outer unit facet normals, one row per facet.")
    offsets: np.ndarray = Field(..., description="Facet offsets h_K(u_F) = max <v, u_F>, all positive.")
    areas: np.ndarray = Field(..., description="Facet (n-1)-dimensional areas.")
    is_zonotope: bool = Field(False, description="True when the polytope is a Minkowski sum of segments.")

    @field_validator("vertices", "normals", mode="before")
    @classmethod
    def _as_rows(cls, value: Any) -> np.ndarray:
        return _frozen(value, 2)

    @field_validator("offsets", "areas", mode="before")
    @classmethod
    def _as_vector(cls, value: Any) -> np.ndarray:
        return _frozen(value, 1)

    @model_validator(mode="after")
    def _check_facets(self) -> ConvexPolytope:
        if self.vertices.shape[1] != self.dim or self.normals.shape[1] != self.dim:
            raise ValueError("vertex / normal coordinates do not match the dimension")
        if not len(self.normals) == len(self.offsets) == len(self.areas):
            raise ValueError("normals, offsets and areas must have one entry per facet")
        if np.any(self.offsets <= 0.0):
            raise ValueError("origin must be interior: every facet offset must be positive")
        if np.any(self.areas <= 0.0):
            raise ValueError("degenerate facet with non-positive area")
        support = np.max(self.normals @ self.vertices.T, axis=1)
        if np.max(np.abs(support - self.offsets) / np.maximum(1.0, self.offsets)) > SUPPORT_TOL:
            raise ValueError("facet offsets disagree with the vertex support function")
        closure = np.abs(self.areas @ self.normals)
        if np.max(closure) > CLOSURE_TOL * max(1.0, float(self.areas.sum())):
            raise ValueError(f"surface area measure is not closed: |sum a_F u_F| = {np.max(closure):.3e}")
        return self

    # Oracles

    @property
    def is_convex(self) -> bool:
        return True

    @cached_property
    def _symmetric(self) -> bool:
        distances, _ = cKDTree(self.vertices).query(-self.vertices)
        return bool(np.max(distances) <= 1e-9 * max(1.0, float(np.max(np.abs(self.vertices)))))

    @property
    def is_symmetric(self) -> bool:
        return self._symmetric

    def _radial(self, thetas: NDArray[np.float64]) -> NDArray[np.float64]:
        dots = thetas @ self.normals.T
        with np.errstate(divide="ignore"):
            ratios = np.where(dots > 0.0, self.offsets / np.where(dots > 0.0, dots, 1.0), np.inf)
        return np.min(ratios, axis=1)

    def _support(self, xis: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.max(xis @ self.vertices.T, axis=1)

    def minkowski_norm(self, points: ArrayLike) -> Any:
        rows, single = _rows(points, self.dim)
        gauge = np.max(rows @ (self.normals / self.offsets[:, None]).T, axis=1)
        return _unrow(np.maximum(gauge, 0.0), single)

    def volume(self) -> float:
        """|K| = (1/n) sum_F h_K(u_F) |F|."""
        return float(self.offsets @ self.areas) / self.dim

    @property
    def surface_area(self) -> float:
        return float(self.areas.sum())

    # Sections and projections

    def section_volume(self, subspace: Subspace) -> float:
        """Exact |P cap H| from the H-representation restricted to H."""
        return section_volume(self, subspace)

    def projection_volume(self, xi: ArrayLike) -> float:
        """Cauchy formula: |P | xi^perp| = (1/2) sum_F |F| |<u_F, xi>|."""
        direction = np.asarray(xi, dtype=float)
        return 0.5 * float(self.areas @ np.abs(self.normals @ direction))

    # Transformations

    def linear_image(self, matrix: ArrayLike) -> ConvexPolytope:
        transform = _invertible(matrix, self.dim)
        inverse = np.linalg.inv(transform)
        det = abs(float(np.linalg.det(transform)))
        mapped = self.normals @ inverse
        lengths = np.linalg.norm(mapped, axis=1)
        return ConvexPolytope(
            dim=self.dim,
            tag=f"T*{self.tag}",
            vertices=self.vertices @ transform.T,
            normals=mapped / lengths[:, None],
            offsets=self.offsets / lengths,
            areas=det * lengths * self.areas,
            is_zonotope=self.is_zonotope,
            closed_form_volume=det * self.volume(),
            dovr_registry=self.dovr_registry,
        )

    def scaled(self, factor: float) -> ConvexPolytope:
        return self.linear_image(factor * np.eye(self.dim))

    def polar(self) -> ConvexPolytope:
        """P° = conv(u_F / h_F)."""
        return from_vertices(self.normals / self.offsets[:, None], tag=f"polar({self.tag})")


def from_vertices(points: ArrayLike, tag: str, is_zonotope: bool = False) -> ConvexPolytope:
    """Build a polytope from a point cloud whose hull contains the origin in its interior."""
    cloud = np.asarray(points, dtype=float)
    n = cloud.shape[1]
    if n > MAX_TRIANGULATION_DIM:
        raise DimensionCapError(f"facet triangulation supports n <= {MAX_TRIANGULATION_DIM}, got {n}")
    if n < 2:
        raise DimensionCapError("polytopes need n >= 2")
    try:
        hull = ConvexHull(cloud)
    except QhullError as exc:
        raise InvalidBodyError(f"degenerate point cloud for {tag}: {exc}") from exc

    # qhull triangulates facets; coplanar simplices share (rounded) hyperplane equations
    keys = np.round(hull.equations, FACET_DECIMALS)
    _, group, _ = np.unique(keys, axis=0, return_inverse=True, return_counts=True)
    group = group.ravel()
    corners = cloud[hull.simplices]
    edges = corners[:, 1:, :] - corners[:, :1, :]
    simplex_areas = batch_simplex_volumes(edges)

    count = int(group.max()) + 1
    normals = np.zeros((count, n))
    offsets = np.zeros(count)
    areas = np.zeros(count)
    np.add.at(areas, group, simplex_areas)
    np.add.at(normals, group, hull.equations[:, :n])
    np.add.at(offsets, group, -hull.equations[:, n])
    sizes = np.bincount(group, minlength=count)
    normals /= np.linalg.norm(normals, axis=1, keepdims=True)
    offsets /= sizes

    vertices = cloud[hull.vertices]
    # offsets recomputed from vertices so the support/facet invariant holds to rounding
    offsets = np.max(normals @ vertices.T, axis=1)
    if np.any(offsets <= 0.0):
        raise InvalidBodyError(f"origin is not interior to {tag}")
    logger.debug("polytope %s: %d vertices, %d facets", tag, len(vertices), count)
    return ConvexPolytope(
        dim=n,
        tag=tag,
        vertices=vertices,
        normals=normals,
        offsets=offsets,
        areas=areas,
        is_zonotope=is_zonotope,
        closed_form_volume=float(offsets @ areas) / n,
    )


def cube(n: int, a: float = 1.0, tag: str | None = None) -> ConvexPolytope:
    """[-a, a]^n with closed-form facets."""
    if a <= 0:
        raise InvalidBodyError(f"cube half-width must be positive, got {a}")
    eye = np.eye(n)
    vertices = a * np.array(list(itertools.product((-1.0, 1.0), repeat=n)))
    return ConvexPolytope(
        dim=n,
        tag=tag or f"cube({n},{a:g})",
        vertices=vertices,
        normals=np.vstack([eye, -eye]),
        offsets=np.full(2 * n, a),
        areas=np.full(2 * n, (2.0 * a) ** (n - 1)),
        is_zonotope=True,
        closed_form_volume=(2.0 * a) ** n,
    )


def cross_polytope(n: int, a: float = 1.0, tag: str | None = None) -> ConvexPolytope:
    """a * B_1^n. Facets are regular (n-1)-simplices with edge a*sqrt(2)."""
    if a <= 0:
        raise InvalidBodyError(f"cross-polytope radius must be positive, got {a}")
    eye = np.eye(n)
    signs = np.array(list(itertools.product((-1.0, 1.0), repeat=n)))
    facet_area = a ** (n - 1) * math.sqrt(n) / math.factorial(n - 1)
    return ConvexPolytope(
        dim=n,
        tag=tag or f"lp_ball({n},1)",
        vertices=a * np.vstack([eye, -eye]),
        normals=signs / math.sqrt(n),
        offsets=np.full(len(signs), a / math.sqrt(n)),
        areas=np.full(len(signs), facet_area),
        closed_form_volume=(2.0 * a) ** n / math.factorial(n),
    )


def regular_simplex(n: int, tag: str | None = None) -> ConvexPolytope:
    """Regular simplex with edge sqrt(2), translated so its centroid is the origin."""
    corners = np.eye(n + 1) - 1.0 / (n + 1)
    plane = Subspace.orthogonal_to(np.ones(n + 1))
    return from_vertices(plane.coordinates(corners), tag=tag or f"simplex({n})")


def random_symmetric_polytope(n: int, count: int, rng: Randomness, tag: str | None = None) -> ConvexPolytope:
    """conv(+-x_1, ..., +-x_count) for uniform x_i on the sphere."""
    if count < n:
        raise InvalidBodyError(f"need at least n={n} sphere points for a full-dimensional polytope, got {count}")
    points = sample_sphere(n, as_generator(rng), count)
    return from_vertices(np.vstack([points, -points]), tag=tag or f"random_polytope({n},{count})")


def section_volume(polytope: ConvexPolytope, subspace: Subspace) -> float:
    """|P cap H| by half-space intersection in H-coordinates."""
    m = subspace.dim
    restricted = polytope.normals @ subspace.basis
    lengths = np.linalg.norm(restricted, axis=1)
    keep = lengths > 1e-14
    restricted, offsets = restricted[keep], polytope.offsets[keep]
    if m == 1:
        slopes = restricted[:, 0]
        upper = np.min(offsets[slopes > 0] / slopes[slopes > 0])
        lower = np.max(offsets[slopes < 0] / slopes[slopes < 0])
        return float(upper - lower)
    halfspaces = np.hstack([restricted, -offsets[:, None]])
    try:
        intersection = HalfspaceIntersection(halfspaces, np.zeros(m))
        return float(ConvexHull(intersection.intersections).volume)
    except QhullError as exc:
        raise InvalidBodyError(f"degenerate section of {polytope.tag}: {exc}") from exc


def projection_volume_subspace(polytope: ConvexPolytope, subspace: Subspace) -> float:
    """|P | H|: volume of the convex hull of the projected vertices, dim H <= 4."""
    m = subspace.dim
    if m > MAX_PROJECTION_DIM:
        raise DimensionCapError(f"hull projection supports dim H <= {MAX_PROJECTION_DIM}, got {m}")
    projected = subspace.coordinates(polytope.vertices)
    if m == 1:
        return float(np.ptp(projected[:, 0]))
    try:
        return float(ConvexHull(projected).volume)
    except QhullError as exc:
        raise InvalidBodyError(f"degenerate projection of {polytope.tag}: {exc}") from exc
