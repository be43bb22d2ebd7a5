"""
Origin-symmetric Loewner ellipsoids and the distance bounds built on them.

The enclosing ellipsoid of a symmetric point cloud is found by Khachiyan's
multiplicative-weights ascent with Todd-Yildirim away steps. For a weight
vector u with M(u) = sum u_i x_i x_i^T and g_i = x_i^T M^-1 x_i, the ellipsoid
{x : x^T M^-1 x <= max g} contains the cloud and has volume at most
(max g / n)^(n/2) times the optimum.
"""

from __future__ import annotations

import itertools
import logging
import math

import numpy as np
from numpy.typing import NDArray

from convex_radon.core.errors import CertificationError, DimensionCapError, NotConvexError, NotSymmetricError
from convex_radon.geometry.bodies import Ellipsoid, LpBall, StarBody
from convex_radon.geometry.constants import general_dovr_formula
from convex_radon.geometry.polytope import ConvexPolytope
from convex_radon.geometry.radon import polar_volume
from convex_radon.geometry.sampling import RngStream, sample_sphere
from convex_radon.schemas.bounds import BoundKind, DistanceBound

logger = logging.getLogger(__name__)

MAX_LOEWNER_DIM = 10
DEFAULT_TOL = 1e-6
CLOUD_DIRECTIONS = 4096
CERTIFICATION_DIRECTIONS = 100_000
CONTAINMENT_SLACK = 1e-8
MAX_REPAIR = 1e-2
REFACTOR_EVERY = 500
MAX_ITERATIONS = 200_000
VOLUME_SAMPLES = 100_000


def deterministic_directions(n: int) -> NDArray[np.float64]:
    """The 2n^2 unit vectors +-e_i and (+-e_i +- e_j)/sqrt(2)."""
    eye = np.eye(n)
    rows = [eye, -eye]
    for i, j in itertools.combinations(range(n), 2):
        for si, sj in ((1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)):
            rows.append(((si * eye[i] + sj * eye[j]) / math.sqrt(2.0))[None, :])
    return np.vstack(rows)


def _cloud_directions(n: int, random_count: int, seed: int) -> NDArray[np.float64]:
    return np.vstack([deterministic_directions(n), sample_sphere(n, RngStream(seed=seed), random_count)])


def symmetric_cloud(body: StarBody, directions: int = CLOUD_DIRECTIONS, seed: int = 0) -> NDArray[np.float64]:
    """Points whose symmetric hull approximates K: polytope vertices, else boundary points on a net."""
    if isinstance(body, ConvexPolytope):
        points = body.vertices
    else:
        points = body.boundary_points(_cloud_directions(body.dim, directions, seed))
    return np.vstack([points, -points])


def enclosing_shape(cloud: NDArray[np.float64], tol: float = DEFAULT_TOL) -> NDArray[np.float64]:
    """
    Shape matrix A of a near-minimal centered ellipsoid {x^T A x <= 1} containing ``cloud``.

    Stops once the volume is within a factor (1 + tol) of the optimum.
    """
    count, n = cloud.shape
    if np.linalg.matrix_rank(cloud) < n:
        raise CertificationError("point cloud does not span R^n; no bounded enclosing ellipsoid")
    target = (1.0 + tol) ** (2.0 / n) - 1.0
    weights = np.full(count, 1.0 / count)

    def refactor() -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        inverse = np.linalg.inv((cloud * weights[:, None]).T @ cloud)
        return inverse, np.einsum("ij,jk,ik->i", cloud, inverse, cloud)

    inverse, g = refactor()
    for iteration in range(1, MAX_ITERATIONS + 1):
        j = int(np.argmax(g))
        if g[j] <= n * (1.0 + target):
            break
        support = np.flatnonzero(weights > 0.0)
        k = int(support[np.argmin(g[support])])
        if g[j] - n >= n - g[k]:
            index, step = j, (g[j] - n) / (n * (g[j] - 1.0))
        else:
            index = k
            floor = -weights[k] / (1.0 - weights[k])
            step = floor if g[k] <= 1.0 else max((g[k] - n) / (n * (g[k] - 1.0)), floor)
        b = inverse @ cloud[index]
        denom = 1.0 - step + step * g[index]
        inverse = (inverse - step * np.outer(b, b) / denom) / (1.0 - step)
        g = (g - step * (cloud @ b) ** 2 / denom) / (1.0 - step)
        weights *= 1.0 - step
        weights[index] += step
        weights[weights < 1e-15] = 0.0
        if iteration % REFACTOR_EVERY == 0:
            inverse, g = refactor()
    else:
        logger.warning("loewner iteration cap reached with gap %.3e", float(np.max(g)) / n - 1.0)
        inverse, g = refactor()
    shape = inverse / float(np.max(g))
    return 0.5 * (shape + shape.T)


def _require_symmetric_convex(body: StarBody) -> None:
    if body.dim > MAX_LOEWNER_DIM:
        raise DimensionCapError(f"Loewner ellipsoids are supported for n <= {MAX_LOEWNER_DIM}, got {body.dim}")
    if not body.is_convex:
        raise NotConvexError(f"{body.tag} is not convex")
    if not body.is_symmetric:
        raise NotSymmetricError(f"{body.tag} is not origin-symmetric")


def certify(body: StarBody, ellipsoid: Ellipsoid, seed: int = 1) -> float:
    """Worst ratio h_K / h_E over a certification net; <= 1 + slack means containment holds there."""
    net = _cloud_directions(body.dim, CERTIFICATION_DIRECTIONS, seed)
    return float(np.max(np.asarray(body.support(net)) / np.asarray(ellipsoid.support(net))))


def loewner(body: StarBody, tol: float = DEFAULT_TOL, seed: int = 0) -> Ellipsoid:
    """Minimum-volume origin-symmetric ellipsoid containing K, within a factor (1 + tol) in volume."""
    _require_symmetric_convex(body)
    if isinstance(body, Ellipsoid):
        return body
    shape = enclosing_shape(symmetric_cloud(body, seed=seed), tol)
    ellipsoid = Ellipsoid.from_shape(shape, tag=f"loewner({body.tag})")
    worst = certify(body, ellipsoid, seed=seed + 1)
    if worst > 1.0 + CONTAINMENT_SLACK:
        if worst > 1.0 + MAX_REPAIR:
            raise CertificationError(f"containment of {body.tag} fails by a factor {worst:.6f} on the net")
        logger.warning("loewner(%s): rescaling by %.3e to restore containment", body.tag, worst)
        ellipsoid = Ellipsoid.from_shape(shape / worst**2, tag=ellipsoid.tag)
    return ellipsoid


def body_volume(body: StarBody, seed: int = 0) -> float:
    volume = body.volume()
    if volume is not None:
        return volume
    return polar_volume(body, VOLUME_SAMPLES, RngStream(seed=seed)).value


def ovr(body: StarBody, tol: float = DEFAULT_TOL, seed: int = 0) -> DistanceBound:
    """Outer volume ratio (|E|/|K|)^(1/n) with E the Loewner ellipsoid."""
    ellipsoid = loewner(body, tol, seed)
    ratio = (ellipsoid.volume() / body_volume(body, seed)) ** (1.0 / body.dim)
    return DistanceBound(
        kind=BoundKind.LOEWNER_ELLIPSOID,
        value=max(1.0, ratio),
        provenance=f"Loewner ellipsoid, tol {tol:g}",
    )


def general_dovr_bound(n: int, k: int) -> DistanceBound:
    """The general symmetric-convex bound C sqrt(n/k) log^(3/2)(en/k); C is unresolved, so no value."""
    return DistanceBound(
        kind=BoundKind.REGISTERED_FORMULA,
        value=None,
        provenance="bound for every origin-symmetric convex body, absolute constant unspecified",
        symbolic=f"C*sqrt(n/k)*log(e*n/k)^1.5 = C*{general_dovr_formula(n, k):.6g}",
    )


def dovr_bp_bound(body: StarBody, k: int) -> DistanceBound:
    """Smallest available numeric upper bound on d_ovr(K, BP_k^n)."""
    registered = body.dovr_bounds(k)
    exact = [bound for bound in registered if bound.is_exact]
    if exact:
        return exact[0]
    numeric = [bound for bound in registered if bound.value is not None]
    if not body.is_symmetric:
        user = [bound for bound in numeric if bound.kind is BoundKind.USER_SUPPLIED]
        if user:
            return min(user, key=lambda bound: bound.numeric())
        raise NotSymmetricError(f"{body.tag} is not origin-symmetric; supply an explicit distance bound")
    if numeric:
        return min(numeric, key=lambda bound: bound.numeric())
    return ovr(body)


def dvr_projection_bound(body: StarBody, p: float, tol: float = DEFAULT_TOL) -> DistanceBound:
    """Upper bound on d_vr(L, Pi_{p,n}): exact for registered p-projection bodies, else the John ellipsoid."""
    if p < 1.0:
        raise ValueError(f"p-projection bodies need p >= 1, got {p}")
    if isinstance(body, Ellipsoid) or (isinstance(body, LpBall) and body.p == 2.0):
        return DistanceBound.exact_one("ellipsoids are p-projection bodies for every p >= 1")
    if p == 1.0 and isinstance(body, ConvexPolytope) and body.is_zonotope:
        return DistanceBound.exact_one("zonotopes are projection bodies")
    return john_bound(body, tol)


def inscribed_ellipsoid(body: StarBody, tol: float = DEFAULT_TOL) -> Ellipsoid:
    """Largest origin-symmetric ellipsoid in K, as the polar of the Loewner ellipsoid of K°."""
    _require_symmetric_convex(body)
    polar = getattr(body, "polar", None)
    if polar is None:
        raise NotConvexError(f"{body.tag} has no polar body")
    return loewner(polar(), tol).polar()


def john_bound(body: StarBody, tol: float = DEFAULT_TOL) -> DistanceBound:
    """(|L| / |E_inner|)^(1/n); at most sqrt(n) by John's theorem."""
    inner = inscribed_ellipsoid(body, tol)
    ratio = (body_volume(body) / inner.volume()) ** (1.0 / body.dim)
    return DistanceBound(
        kind=BoundKind.JOHN_ELLIPSOID,
        value=max(1.0, ratio),
        provenance="inscribed ellipsoid as polar of the polar body's Loewner ellipsoid",
    )
