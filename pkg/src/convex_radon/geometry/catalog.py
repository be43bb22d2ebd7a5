"""Concrete bodies and densities named by catalog descriptors."""

from __future__ import annotations

import logging
import math
from functools import lru_cache
from typing import Any

import numpy as np
from pydantic import ValidationError

from convex_radon.core.errors import ConvexRadonError, InvalidBodyError
from convex_radon.geometry.bodies import ALL_CODIMS, Ellipsoid, LpBall, StarBody
from convex_radon.geometry.densities import (
    BodyIndicator,
    ConstantDensity,
    CoordinatePower,
    Density,
    GaussianDensity,
    HalfSpaceIndicator,
    RadialPower,
)
from convex_radon.geometry.ellipsoid import general_dovr_bound, ovr
from convex_radon.geometry.polytope import cross_polytope, cube, random_symmetric_polytope, regular_simplex
from convex_radon.geometry.sampling import RngStream
from convex_radon.schemas.bounds import DistanceBound
from convex_radon.schemas.catalog import BodySpec, DensitySpec

logger = logging.getLogger(__name__)

CATALOG: dict[str, str] = {
    "ball(n,r)": "Euclidean ball of radius r",
    "cube(n,a)": "[-a, a]^n, a zonotope",
    "lp_ball(n,p)": "unit l_p ball, p in (0, inf]; p = 1 is the cross-polytope, p = inf the cube",
    "simplex(n)": "regular simplex centered at its centroid (not symmetric)",
    "ellipsoid(A)": "{x : x^T A x <= 1} for an SPD matrix A",
    "random_polytope(n,count,seed)": "conv(+-x_i) of count uniform sphere points",
}
BODY_SUFFIXES = "@vol=V rescales to volume V; @scale=s dilates by s"


def body_spec(spec: BodySpec | str | dict[str, Any]) -> BodySpec:
    if isinstance(spec, BodySpec):
        return spec
    try:
        return BodySpec.model_validate(spec)
    except (ValidationError, ValueError) as exc:
        raise InvalidBodyError(f"invalid body descriptor {spec!r}: {exc}") from exc


def make_catalog_body(spec: BodySpec | str | dict[str, Any]) -> StarBody:
    """Build the body a descriptor names, with its closed-form volume and distance registry."""
    return _build(body_spec(spec).label)


@lru_cache(maxsize=256)
def _build(label: str) -> StarBody:
    spec = BodySpec.model_validate(label)
    try:
        body = _base_body(spec)
        body = _normalize(body, spec)
    except ValidationError as exc:
        raise InvalidBodyError(f"invalid body {label}: {exc}") from exc
    except ConvexRadonError:
        raise
    except ValueError as exc:
        raise InvalidBodyError(f"invalid body {label}: {exc}") from exc
    body = body.relabel(label)
    registry = _registry(spec, body)
    logger.debug("built %s (volume %s, %d registry keys)", label, body.volume(), len(registry))
    return body.with_registry(registry)


def _base_body(spec: BodySpec) -> StarBody:
    n = spec.dim
    match spec.kind:
        case "ball":
            return Ellipsoid.ball(n, spec.r)
        case "cube":
            return cube(n, spec.a)
        case "lp_ball":
            p = float(spec.p or 0.0)
            if p == 1.0:
                return cross_polytope(n)
            if math.isinf(p):
                return cube(n)
            if p == 2.0:
                return Ellipsoid.ball(n)
            return LpBall.unit(n, p)
        case "simplex":
            return regular_simplex(n)
        case "ellipsoid":
            return Ellipsoid.from_shape(np.asarray(spec.matrix, dtype=float))
        case _:
            return random_symmetric_polytope(n, int(spec.count or 0), RngStream(seed=int(spec.seed or 0)))


def _normalize(body: StarBody, spec: BodySpec) -> StarBody:
    if spec.scale is not None:
        return body.scaled(spec.scale)
    if spec.volume is not None:
        volume = body.volume()
        if volume is None:
            raise InvalidBodyError(f"{spec.label}: no closed-form volume to normalize against")
        return body.scaled((spec.volume / volume) ** (1.0 / body.dim))
    return body


def is_intersection_body(spec: BodySpec) -> bool:
    """Balls, ellipsoids and l_p balls with p <= 2 are intersection bodies."""
    return spec.kind in ("ball", "ellipsoid") or (spec.kind == "lp_ball" and float(spec.p or 0.0) <= 2.0)


def _registry(spec: BodySpec, body: StarBody) -> dict[int, tuple[DistanceBound, ...]]:
    if is_intersection_body(spec):
        provenance = "intersection body" if spec.kind == "lp_ball" else "ellipsoids are intersection bodies"
        return {ALL_CODIMS: (DistanceBound.exact_one(provenance),)}
    if not (body.is_convex and body.is_symmetric) or body.dim < 2:
        return {}
    registry: dict[int, tuple[DistanceBound, ...]] = {ALL_CODIMS: (ovr(body),)}
    for k in range(1, body.dim):
        registry[k] = (general_dovr_bound(body.dim, k),)
    return registry


def make_density(spec: DensitySpec | str | dict[str, Any], dim: int) -> Density:
    """Density oracle for a descriptor, checked against the ambient dimension."""
    try:
        density_spec = spec if isinstance(spec, DensitySpec) else DensitySpec.model_validate(spec)
    except (ValidationError, ValueError) as exc:
        raise InvalidBodyError(f"invalid density descriptor {spec!r}: {exc}") from exc
    match density_spec.kind:
        case "constant":
            return ConstantDensity(value=density_spec.value)
        case "gaussian":
            return GaussianDensity(scale=density_spec.scale)
        case "half_space":
            normal = tuple(density_spec.normal or ())
            if len(normal) != dim:
                raise InvalidBodyError(f"half-space normal has {len(normal)} coordinates, expected {dim}")
            return HalfSpaceIndicator(normal=normal, value=density_spec.value)
        case "radial_power":
            return RadialPower(exponent=density_spec.exponent)
        case "coordinate_power":
            if density_spec.axis >= dim:
                raise InvalidBodyError(f"axis {density_spec.axis} out of range for n={dim}")
            return CoordinatePower(axis=density_spec.axis, exponent=density_spec.exponent)
        case _:
            assert density_spec.body is not None
            body = make_catalog_body(density_spec.body)
            if body.dim != dim:
                raise InvalidBodyError(f"indicator body lives in R^{body.dim}, expected R^{dim}")
            return BodyIndicator(body=body)
