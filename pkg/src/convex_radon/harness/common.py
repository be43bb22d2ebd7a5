from __future__ import annotations

import numpy as np
from numpy.typing import NDArray

from convex_radon.core.errors import DroppedSubspace
from convex_radon.geometry.bodies import StarBody
from convex_radon.geometry.densities import ConstantDensity, Density, check_sup_normalized
from convex_radon.geometry.radon import Partition, polar_volume, section_integral, uniform_in_section
from convex_radon.geometry.sampling import RngStream
from convex_radon.geometry.subspace import Subspace
from convex_radon.schemas.estimate import Estimate

UNIT = ConstantDensity(value=1.0)
PROBE_POINTS = 4096
BUDGET_PROVENANCE = "regression budget, not a proved constant"


def volume(body: StarBody, samples: int, rng: RngStream, partition: Partition | None = None) -> Estimate:
    """|K|, exact when a closed form is registered."""
    exact = body.volume()
    if exact is not None:
        return Estimate.exact(exact)
    return polar_volume(body, samples, rng, partition)


def probe_points(body: StarBody, rng: RngStream, count: int = PROBE_POINTS) -> NDArray[np.float64]:
    points, _ = uniform_in_section(body, None, count, rng)
    return points


def require_normalized(density: Density, body: StarBody, rng: RngStream) -> None:
    """g(0) = sup g = 1, checked at the origin and on points of the body."""
    check_sup_normalized(density, probe_points(body, rng))


def section_ratio(
    numerator: tuple[StarBody, Density],
    denominator: tuple[StarBody, Density],
    subspace: Subspace,
    samples: int,
    stream: RngStream,
    partition: Partition | None = None,
) -> Estimate:
    """
    Integral over K cap H of f divided by the integral over L cap H of g.

    Both integrals share one stream, so identical inputs give a ratio of exactly 1.
    """
    bottom = section_integral(*denominator, subspace, samples, stream, partition)
    if bottom.value <= 0.0:
        raise DroppedSubspace(f"denominator section integral vanishes ({bottom.value!r})")
    if same_body(numerator[0], denominator[0]) and same_density(numerator[1], denominator[1]):
        return Estimate.exact(1.0)
    top = section_integral(*numerator, subspace, samples, stream, partition)
    if top == bottom:
        return Estimate.exact(1.0)
    return top / bottom


def same_body(a: StarBody, b: StarBody) -> bool:
    """Catalog bodies are identified by their canonical label."""
    return a is b or (type(a) is type(b) and a.dim == b.dim and a.tag == b.tag)


def same_density(a: Density, b: Density) -> bool:
    return a is b or (type(a) is type(b) and a.label == b.label)
