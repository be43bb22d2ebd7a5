"""
Monte Carlo integration over bodies, sections and subspheres.

Every estimator takes a sample budget and a random stream. When the stream is an
``RngStream`` the budget is split into ``partition.chunks`` pieces, each drawn
from its own child stream and possibly on its own thread; the chunk Estimates
are pooled in chunk order, so the result depends only on (seed, samples,
partition) and never on scheduling.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field

from convex_radon.core.errors import SamplingError
from convex_radon.geometry.bodies import StarBody
from convex_radon.geometry.constants import p_const, sphere_area
from convex_radon.geometry.densities import Density
from convex_radon.geometry.sampling import (
    Randomness,
    RngStream,
    as_generator,
    sample_grassmann,
    sample_sphere,
)
from convex_radon.geometry.simplices import batch_simplex_volumes, simplex_volume
from convex_radon.geometry.subspace import Subspace
from convex_radon.schemas.estimate import Estimate
from convex_radon.schemas.report import ConstantUsed, InequalityReport, Relation

logger = logging.getLogger(__name__)

__all__ = [
    "DEFAULT_RADIAL_NODES",
    "Partition",
    "blaschke_check",
    "body_integral",
    "integrate_body",
    "integrate_section",
    "polar_volume",
    "sample_grassmann",
    "sample_sphere",
    "section_integral",
    "simplex_volume",
    "spherical_radon",
    "split_stream",
    "uniform_in_body",
    "uniform_in_section",
]

DEFAULT_RADIAL_NODES = 32
DIRECTION_BLOCK = 4096

Kernel = Callable[[int, np.random.Generator], NDArray[np.float64]]


class Partition(BaseModel):
    """How a sample budget is cut into independently seeded chunks."""

    model_config = ConfigDict(frozen=True)

    chunks: int = Field(1, description="Number of child streams the budget is split into.", examples=[8], ge=1)
    workers: int = Field(1, description="Threads used to evaluate chunks; never changes results.", examples=[4], ge=1)


def split_stream(rng: Randomness, index: int) -> Randomness:
    """Independent sub-stream for a sub-task; a bare Generator is shared sequentially."""
    return rng.child(index) if isinstance(rng, RngStream) else rng


def run_partitioned(kernel: Kernel, samples: int, rng: Randomness, partition: Partition | None = None) -> Estimate:
    """Evaluate ``kernel`` (count, generator) -> per-sample values over the partition and pool."""
    if samples < 1:
        raise ValueError(f"sample budget must be positive, got {samples}")
    plan = partition or Partition()
    chunks = min(plan.chunks, max(1, samples // 2))
    if not isinstance(rng, RngStream) or chunks == 1:
        return Estimate.from_samples(kernel(samples, as_generator(rng)))

    sizes = [len(piece) for piece in np.array_split(np.arange(samples), chunks)]

    def run_chunk(index: int) -> Estimate:
        return Estimate.from_samples(kernel(sizes[index], rng.child(index).generator()))

    with ThreadPoolExecutor(max_workers=plan.workers) as pool:
        estimates = list(pool.map(run_chunk, range(chunks)))
    logger.debug("pooled %d chunks (%d samples, %d workers)", chunks, samples, plan.workers)
    return Estimate.pool(estimates)


def _checked_radial(body: StarBody, thetas: NDArray[np.float64]) -> NDArray[np.float64]:
    radii = np.asarray(body.radial(thetas))
    if not np.all(np.isfinite(radii)) or np.any(radii <= 0.0):
        raise SamplingError(f"radial function of {body.tag} is not finite and positive on the sampled directions")
    return radii


def _radial_integrals(
    body: StarBody,
    density: Density | None,
    thetas: NDArray[np.float64],
    power: int,
    nodes: int,
) -> NDArray[np.float64]:
    """Integral of r^(power-1) f(r theta) over [0, rho(theta)] for each row theta."""
    radii = _checked_radial(body, thetas)
    if density is None or density.is_constant:
        height = 1.0 if density is None else float(density(np.zeros(body.dim)))
        return height * radii**power / power

    x, w = np.polynomial.legendre.leggauss(nodes)
    out = np.empty(len(thetas))
    for start in range(0, len(thetas), DIRECTION_BLOCK):
        block = slice(start, start + DIRECTION_BLOCK)
        rho = radii[block, None]
        r = 0.5 * rho * (x + 1.0)
        points = r[..., None] * thetas[block, None, :]
        values = density(points.reshape(-1, body.dim)).reshape(r.shape)
        out[block] = np.sum(0.5 * rho * w * r ** (power - 1) * values, axis=1)
    return out


def polar_volume(
    body: StarBody,
    samples: int,
    rng: Randomness,
    partition: Partition | None = None,
) -> Estimate:
    """|K| = (1/n) integral over S^(n-1) of rho_K^n, with antithetic directions +-theta."""
    n = body.dim
    scale = sphere_area(n) / n

    def kernel(count: int, gen: np.random.Generator) -> NDArray[np.float64]:
        thetas = sample_sphere(n, gen, count)
        plus = _checked_radial(body, thetas)
        minus = _checked_radial(body, -thetas)
        return 0.5 * scale * (plus**n + minus**n)

    return run_partitioned(kernel, samples, rng, partition)


def integrate_body(
    body: StarBody,
    density: Density,
    samples: int,
    radial_nodes: int = DEFAULT_RADIAL_NODES,
    rng: Randomness | None = None,
    partition: Partition | None = None,
) -> Estimate:
    """Integral of f over K in polar coordinates; inner radial integral by Gauss-Legendre."""
    n = body.dim
    area = sphere_area(n)

    def kernel(count: int, gen: np.random.Generator) -> NDArray[np.float64]:
        thetas = sample_sphere(n, gen, count)
        plus = _radial_integrals(body, density, thetas, n, radial_nodes)
        minus = _radial_integrals(body, density, -thetas, n, radial_nodes)
        return 0.5 * area * (plus + minus)

    return run_partitioned(kernel, samples, _require(rng), partition)


def integrate_section(
    body: StarBody,
    density: Density,
    subspace: Subspace,
    samples: int,
    radial_nodes: int = DEFAULT_RADIAL_NODES,
    rng: Randomness | None = None,
    partition: Partition | None = None,
) -> Estimate:
    """Integral of f over K cap H: directions uniform on S^(n-1) cap H, weight |S^(m-1)|."""
    _check_ambient(body, subspace)
    m = subspace.dim
    area = sphere_area(m)

    def kernel(count: int, gen: np.random.Generator) -> NDArray[np.float64]:
        thetas = subspace.lift(sample_sphere(m, gen, count))
        plus = _radial_integrals(body, density, thetas, m, radial_nodes)
        minus = _radial_integrals(body, density, -thetas, m, radial_nodes)
        return 0.5 * area * (plus + minus)

    return run_partitioned(kernel, samples, _require(rng), partition)


def spherical_radon(
    function: Callable[[NDArray[np.float64]], NDArray[np.float64]],
    subspace: Subspace,
    samples: int,
    rng: Randomness,
    partition: Partition | None = None,
) -> Estimate:
    """R_m g(H): integral of g over the unit subsphere S^(n-1) cap H."""
    m = subspace.dim
    area = sphere_area(m)

    def kernel(count: int, gen: np.random.Generator) -> NDArray[np.float64]:
        thetas = subspace.lift(sample_sphere(m, gen, count))
        return 0.5 * area * (np.asarray(function(thetas)) + np.asarray(function(-thetas)))

    return run_partitioned(kernel, samples, rng, partition)


def body_integral(
    body: StarBody,
    density: Density,
    samples: int,
    rng: Randomness,
    partition: Partition | None = None,
) -> Estimate:
    """Integral of f over K, exact when f is constant and |K| has a closed form."""
    volume = body.volume()
    if density.is_constant and volume is not None:
        return Estimate.exact(float(density(np.zeros(body.dim))) * volume)
    return integrate_body(body, density, samples, rng=rng, partition=partition)


def section_integral(
    body: StarBody,
    density: Density,
    subspace: Subspace,
    samples: int,
    rng: Randomness,
    partition: Partition | None = None,
) -> Estimate:
    """Integral of f over K cap H, exact when f is constant and the section has a closed form."""
    if density.is_constant:
        exact = body.section_volume(subspace)
        if exact is not None:
            return Estimate.exact(float(density(np.zeros(body.dim))) * exact)
    return integrate_section(body, density, subspace, samples, rng=rng, partition=partition)


def uniform_in_section(
    body: StarBody,
    subspace: Subspace | None,
    count: int,
    rng: Randomness,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """
    Polar sampler in K cap H (H = None means all of R^n).

    Returns points and their inverse densities 1/q(x) = |S^(m-1)| rho(theta)^m / m;
    given theta, r = rho(theta) U^(1/m) makes x uniform on the segment's share of the section.
    """
    gen = as_generator(rng)
    m = body.dim if subspace is None else subspace.dim
    thetas = sample_sphere(m, gen, count)
    if subspace is not None:
        _check_ambient(body, subspace)
        thetas = subspace.lift(thetas)
    radii = _checked_radial(body, thetas)
    r = radii * gen.random(count) ** (1.0 / m)
    return thetas * r[:, None], sphere_area(m) * radii**m / m


def uniform_in_body(body: StarBody, count: int, rng: Randomness) -> NDArray[np.float64]:
    """Exactly uniform points in K: polar sampling, then resampling by the section weights."""
    gen = as_generator(rng)
    points, weights = uniform_in_section(body, None, count, gen)
    if np.ptp(weights) <= 1e-12 * float(np.max(weights)):
        return points
    # the polar sampler overweights directions with small rho; accept in proportion to rho^n
    n = body.dim
    ceiling = max(float(np.max(weights)), sphere_area(n) * body.bounding_radius() ** n / n)
    keep = gen.random(count) * ceiling <= weights
    accepted = points[keep]
    if len(accepted) < max(1, int(1e-4 * count)):
        raise SamplingError(f"uniform sampling in {body.tag} accepted {len(accepted)} of {count} draws")
    while len(accepted) < count:
        extra = uniform_in_body(body, count - len(accepted), gen)
        accepted = np.vstack([accepted, extra])
    return accepted[:count]


def blaschke_check(
    body: StarBody,
    s: int,
    samples: int,
    rng: Randomness,
    partition: Partition | None = None,
) -> InequalityReport:
    """
    Both sides of the Blaschke-Petkantschin formula for F = product of indicators of K.

    Left: |K|^s from the polar formula. Right: p(n,s) E_H[ integral over (K cap H)^s of
    |conv(0, x_1..x_s)|^(n-s) ], with H Haar and the x_i from the polar sampler in H.
    """
    n = body.dim
    if not 1 <= s <= n - 1:
        raise ValueError(f"Blaschke-Petkantschin needs 1 <= s <= n-1, got n={n}, s={s}")
    constant = p_const(n, s)
    area = sphere_area(s)

    def kernel(count: int, gen: np.random.Generator) -> NDArray[np.float64]:
        q, r = np.linalg.qr(gen.standard_normal((count, n, s)))
        signs = np.sign(np.diagonal(r, axis1=1, axis2=2))
        signs[signs == 0.0] = 1.0
        bases = q * signs[:, None, :]
        coords = gen.standard_normal((count, s, s))
        coords /= np.linalg.norm(coords, axis=2, keepdims=True)
        thetas = np.einsum("bij,bkj->bki", bases, coords)
        radii = _checked_radial(body, thetas.reshape(-1, n)).reshape(count, s)
        points = thetas * (radii * gen.random((count, s)) ** (1.0 / s))[..., None]
        weights = np.prod(area * radii**s / s, axis=1)
        return constant * weights * batch_simplex_volumes(points) ** (n - s)

    lhs = polar_volume(body, samples, split_stream(rng, 0), partition) ** s
    rhs = run_partitioned(kernel, samples, split_stream(rng, 1), partition)
    report = InequalityReport.compare(
        "blaschke-petkantschin",
        lhs,
        rhs,
        relation=Relation.IDENTITY,
        constants_used=[ConstantUsed(symbol="p(n,s)", value=constant, provenance="closed form")],
        bodies={"K": body.tag},
        n=n,
        k=n - s,
        notes=[f"relative gap {abs(lhs.value - rhs.value) / abs(lhs.value):.3e}"],
    )
    logger.info("blaschke %s s=%d: %s", body.tag, s, report.verdict.value)
    return report


def _require(rng: Randomness | None) -> Randomness:
    if rng is None:
        raise ValueError("a random stream is required")
    return rng


def _check_ambient(body: StarBody, subspace: Subspace) -> None:
    if subspace.ambient_dim != body.dim:
        raise ValueError(f"subspace lives in R^{subspace.ambient_dim}, body in R^{body.dim}")
