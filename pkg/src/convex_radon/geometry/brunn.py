"""
Surface area measures, projections and mixed volumes of polytopes and ellipsoids.

Polytopes have atomic surface measures (facet areas at facet normals), so every
functional here is a finite sum. Ellipsoids are handled in closed form.
"""

from __future__ import annotations

import logging
import math
from typing import Any, Literal

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from scipy.spatial import ConvexHull, HalfspaceIntersection, QhullError

from convex_radon.core.errors import InvalidBodyError, NormalizationError, UnsupportedBodyError
from convex_radon.geometry.bodies import Ellipsoid, StarBody, _rows, _unrow
from convex_radon.geometry.constants import log_omega
from convex_radon.geometry.polytope import CLOSURE_TOL, ConvexPolytope
from convex_radon.geometry.polytope import projection_volume_subspace as _polytope_projection
from convex_radon.geometry.sampling import Randomness, as_generator
from convex_radon.geometry.subspace import Subspace, as_direction
from convex_radon.schemas.estimate import Estimate

logger = logging.getLogger(__name__)

VOLUME_IDENTITY_TOL = 1e-8
NORMALIZATION_TOL = 1e-10
SHADOW_RESOLUTION = 0.01
FIREY_EPSILON = 1e-5


def _frozen(value: Any) -> np.ndarray:
    array = np.array(value, dtype=float)
    array.setflags(write=False)
    return array


class SurfaceMeasure(BaseModel):
    """
    S(K, .): atoms (u_F, |F|) for a polytope, or the closed-form measure of an ellipsoid.

    For atomic measures the closure condition sum m_F u_F = 0 is enforced.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kind: Literal["atomic", "ellipsoid"] = Field("atomic", description="Atomic (polytope) or closed form.")
    dim: int = Field(..., description="Ambient dimension n.", ge=2)
    normals: np.ndarray = Field(..., description="Atom locations u_F on the sphere, one row each.")
    masses: np.ndarray = Field(..., description="Atom masses m_F > 0.")
    shape: np.ndarray | None = Field(None, description="Shape matrix when kind is 'ellipsoid'.")

    @field_validator("normals", "masses", mode="before")
    @classmethod
    def _as_array(cls, value: Any) -> np.ndarray:
        return _frozen(value)

    @model_validator(mode="after")
    def _check_atoms(self) -> SurfaceMeasure:
        if self.kind == "ellipsoid":
            if self.shape is None:
                raise ValueError("ellipsoid surface measure needs its shape matrix")
            return self
        if len(self.normals) != len(self.masses):
            raise ValueError("one mass per atom")
        if np.any(self.masses <= 0.0):
            raise ValueError("atom masses must be positive")
        closure = float(np.max(np.abs(self.masses @ self.normals)))
        if closure > CLOSURE_TOL * max(1.0, float(self.masses.sum())):
            raise ValueError(f"surface measure is not closed: |sum m u| = {closure:.3e}")
        return self

    @property
    def total_mass(self) -> float:
        if self.kind == "ellipsoid":
            raise UnsupportedBodyError("the ellipsoid surface area has no elementary closed form")
        return float(self.masses.sum())

    def integrate(self, values: NDArray[np.float64]) -> float:
        """Sum of values(u_F) m_F over the atoms."""
        if self.kind != "atomic":
            raise UnsupportedBodyError("only atomic surface measures are summed directly")
        return float(values @ self.masses)


class PSurfaceMeasure(BaseModel):
    """S_p(K, .) = h_K^(1-p) S(K, .), atom by atom."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    p: float = Field(..., description="Exponent p >= 1.", examples=[2.0], ge=1.0)
    base: SurfaceMeasure = Field(..., description="The surface area measure S(K, .).")
    offsets: np.ndarray = Field(..., description="h_K(u_F) at each atom.")
    masses: np.ndarray = Field(..., description="m_F h_K(u_F)^(1-p).")

    @field_validator("offsets", "masses", mode="before")
    @classmethod
    def _as_array(cls, value: Any) -> np.ndarray:
        return _frozen(value)

    @model_validator(mode="after")
    def _check_density(self) -> PSurfaceMeasure:
        ratio = self.masses / self.base.masses
        expected = self.offsets ** (1.0 - self.p)
        if np.max(np.abs(ratio - expected) / expected) > 1e-12:
            raise ValueError("p-surface masses do not have Radon-Nikodym derivative h^(1-p)")
        return self

    @property
    def normals(self) -> np.ndarray:
        return self.base.normals


def surface_measure(body: StarBody) -> SurfaceMeasure:
    """S(K, .) with the volume identity (1/n) sum h_K(u_F) m_F = |K| checked."""
    if isinstance(body, Ellipsoid):
        empty = np.zeros((0, body.dim))
        return SurfaceMeasure(kind="ellipsoid", dim=body.dim, normals=empty, masses=np.zeros(0), shape=body.shape)
    if not isinstance(body, ConvexPolytope):
        raise UnsupportedBodyError(f"{body.tag} has no atomic or closed-form surface measure")
    try:
        measure = SurfaceMeasure(dim=body.dim, normals=body.normals, masses=body.areas)
    except ValueError as exc:
        raise InvalidBodyError(f"degenerate facets in {body.tag}: {exc}") from exc
    volume = float(body.offsets @ body.areas) / body.dim
    reference = body.closed_form_volume or volume
    if abs(volume - reference) > VOLUME_IDENTITY_TOL * max(1.0, reference):
        raise InvalidBodyError(f"{body.tag}: facet volume {volume!r} disagrees with {reference!r}")
    return measure


def p_surface_measure(body: ConvexPolytope, p: float) -> PSurfaceMeasure:
    _check_p(p)
    base = surface_measure(body)
    return PSurfaceMeasure(p=p, base=base, offsets=body.offsets, masses=base.masses * body.offsets ** (1.0 - p))


def projection_volume(body: StarBody, xi: ArrayLike) -> float:
    """|K | xi^perp| = h_{Pi K}(xi): Cauchy's formula for polytopes, closed form for ellipsoids."""
    direction = as_direction(xi)
    if isinstance(body, ConvexPolytope | Ellipsoid):
        return body.projection_volume(direction)
    raise UnsupportedBodyError(f"no projection formula for {body.tag}")


def projection_volume_subspace(body: StarBody, subspace: Subspace) -> float:
    """|K | H|, the (n-k)-volume of the orthogonal projection onto H."""
    if isinstance(body, ConvexPolytope):
        return _polytope_projection(body, subspace)
    if isinstance(body, Ellipsoid):
        # K | H is the ellipsoid in H with support sqrt(xi^T A^-1 xi), xi in H
        restricted = subspace.restrict(body.inverse)
        return math.exp(log_omega(subspace.dim) + 0.5 * float(np.linalg.slogdet(restricted)[1]))
    raise UnsupportedBodyError(f"no projection formula for {body.tag}")


def mixed_volume_v1(body: ConvexPolytope, other: StarBody) -> float:
    """V_1(K, L) = (1/n) sum h_L(u_F) |F|."""
    measure = surface_measure(body)
    return measure.integrate(np.asarray(other.support(measure.normals))) / body.dim


def p_mixed_volume(body: ConvexPolytope, other: StarBody, p: float) -> float:
    """V_p(K, L) = (1/n) sum h_L(u_F)^p h_K(u_F)^(1-p) |F|."""
    measure = p_surface_measure(body, p)
    support = np.asarray(other.support(measure.normals))
    return float(support**p @ measure.masses) / body.dim


def p_projection_support(body: StarBody, xis: ArrayLike, p: float) -> Any:
    """
    h_{Pi_p K}(xi) = [(1/(2n)) sum |<u_F, xi>|^p h_K(u_F)^(1-p) |F|]^(1/p).

    At p = 1 the value times n must equal the Cauchy projection |K | xi^perp|; this pins the
    two normalizations together and is checked on every call.
    """
    _check_p(p)
    if isinstance(body, Ellipsoid):
        return body.p_projection_support(xis, p)
    if not isinstance(body, ConvexPolytope):
        raise UnsupportedBodyError(f"no p-projection body formula for {body.tag}")
    rows, single = _rows(xis, body.dim)
    measure = p_surface_measure(body, p)
    moments = np.abs(rows @ measure.normals.T) ** p @ measure.masses
    values = (moments / (2.0 * body.dim)) ** (1.0 / p)
    if p == 1.0:
        cauchy = 0.5 * np.abs(rows @ body.normals.T) @ body.areas
        drift = np.max(np.abs(body.dim * values - cauchy) / np.maximum(1.0, cauchy))
        if drift > NORMALIZATION_TOL:
            raise NormalizationError(f"n h_(Pi_1 K) differs from h_(Pi K) by {drift:.3e}")
    return _unrow(values, single)


def wulff_volume(normals: NDArray[np.float64], offsets: NDArray[np.float64]) -> float:
    """Volume of {x : <u_i, x> <= h_i for all i}, a bounded polytope around the origin."""
    halfspaces = np.hstack([normals, -offsets[:, None]])
    try:
        intersection = HalfspaceIntersection(halfspaces, np.zeros(normals.shape[1]))
        return float(ConvexHull(intersection.intersections).volume)
    except QhullError as exc:
        raise InvalidBodyError(f"degenerate Wulff shape: {exc}") from exc


def firey_difference_quotient(
    body: ConvexPolytope,
    other: StarBody,
    p: float,
    epsilon: float = FIREY_EPSILON,
) -> float:
    """
    (p/n)(|K +_p eps L| - |K|)/eps, with the Firey sum taken on K's facet normals.

    Support of the sum is (h_K^p + eps h_L^p)^(1/p); as eps -> 0 the quotient tends to V_p(K, L).
    """
    _check_p(p)
    offsets = body.offsets
    support = np.asarray(other.support(body.normals))
    widened = (offsets**p + epsilon * support**p) ** (1.0 / p)
    grown = wulff_volume(body.normals, widened)
    return p / body.dim * (grown - body.volume()) / epsilon


def _meets_line(body: StarBody, points: NDArray[np.float64], direction: NDArray[np.float64]) -> NDArray[np.bool_]:
    """Whether each line x + t*direction meets K, i.e. x lies in the shadow of K along direction."""
    if isinstance(body, Ellipsoid):
        a_dir = body.shape @ direction
        quad = np.einsum("ij,jk,ik->i", points, body.shape, points)
        return quad - (points @ a_dir) ** 2 / float(direction @ a_dir) <= 1.0
    if isinstance(body, ConvexPolytope):
        slopes = body.normals @ direction
        slack = body.offsets[None, :] - points @ body.normals.T
        with np.errstate(divide="ignore", invalid="ignore"):
            bounds = slack / slopes[None, :]
        upper = np.min(np.where(slopes > 0.0, bounds, np.inf), axis=1)
        lower = np.max(np.where(slopes < 0.0, bounds, -np.inf), axis=1)
        flat = np.all(np.where(slopes == 0.0, slack >= 0.0, True), axis=1)
        return (lower <= upper) & flat
    raise UnsupportedBodyError(f"no line-membership oracle for {body.tag}")


def shadow_area(
    body: StarBody,
    xi: ArrayLike,
    rng: Randomness,
    resolution: float = SHADOW_RESOLUTION,
    samples: int = 200_000,
) -> Estimate:
    """
    Monte Carlo |K | xi^perp| independent of the surface measure.

    The shadow's bounding box in xi^perp is covered by a grid of cell size ``resolution`` with one
    jittered point per cell (for 2-d shadows), or by ``samples`` uniform points otherwise; a point
    counts when its line along xi meets K. The binomial standard error is an upper bound for the
    stratified design.
    """
    direction = as_direction(xi)
    gen = as_generator(rng)
    plane = Subspace.orthogonal_to(direction)
    m = plane.dim
    half = body.bounding_radius()
    if m <= 2:
        cells = int(math.ceil(2.0 * half / resolution))
        step = 2.0 * half / cells
        axes = [np.arange(cells) * step - half for _ in range(m)]
        corners = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, m)
        coords = corners + step * gen.random(corners.shape)
    else:
        coords = gen.uniform(-half, half, size=(samples, m))
    hits = _meets_line(body, plane.lift(coords), direction)
    fraction = float(np.mean(hits))
    box = (2.0 * half) ** m
    std_error = box * math.sqrt(fraction * (1.0 - fraction) / len(hits))
    return Estimate(value=box * fraction, std_error=std_error, samples=len(hits))


def _check_p(p: float) -> None:
    if p < 1.0:
        raise ValueError(f"p-mixed quantities need p >= 1, got {p}")
