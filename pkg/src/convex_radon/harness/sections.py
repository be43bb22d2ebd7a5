"""
Averages of section volumes over the Grassmannian.

Grinberg's inequality compares E_H |K cap H|^n with the volume-one ball, the
Dann-Paouris-Pivovarov inequality does the same for section integrals of a
bounded density, and the Barany-Furedi envelope bounds the volume radius of
hulls of points in an ellipsoid.
"""

from __future__ import annotations

import logging
import math

import numpy as np
from numpy.typing import NDArray
from scipy.spatial import ConvexHull, QhullError

from convex_radon.core.errors import NormalizationError
from convex_radon.geometry.bodies import Ellipsoid, StarBody
from convex_radon.geometry.constants import gamma_nk, log_omega
from convex_radon.geometry.densities import Density, sampled_sup
from convex_radon.geometry.radon import Partition, body_integral, section_integral, uniform_in_section
from convex_radon.geometry.sampling import RngStream, as_generator, sample_grassmann, sample_rotation
from convex_radon.geometry.simplices import batch_simplex_volumes
from convex_radon.geometry.subspace import Subspace
from convex_radon.harness.common import BUDGET_PROVENANCE, UNIT, volume
from convex_radon.schemas.estimate import Estimate
from convex_radon.schemas.report import ConstantUsed, InequalityReport

logger = logging.getLogger(__name__)

DEFAULT_C_BUDGET = 10.0
VOLUME_ONE_TOL = 1e-6
SUP_PROBES = 2048


def _check_codim(n: int, k: int) -> None:
    if not 0 < k < n:
        raise ValueError(f"k must satisfy 0 < k < n, got n={n}, k={k}")


def _sections(
    body: StarBody, density: Density, k: int, trials: int, samples: int, rng: RngStream
) -> list[tuple[Subspace, Estimate]]:
    """Section integrals over ``trials`` Haar subspaces; subspace i is drawn from rng.child(i)."""
    n = body.dim
    out = []
    for index in range(trials):
        stream = rng.child(index)
        subspace = sample_grassmann(n, n - k, stream.child(0))
        out.append((subspace, section_integral(body, density, subspace, samples, stream.child(1))))
    return out


def _average(values: NDArray[np.float64]) -> Estimate:
    if len(values) < 2 or float(np.ptp(values)) <= 1e-12 * float(np.max(np.abs(values))):
        return Estimate(value=float(np.mean(values)), std_error=0.0, samples=len(values))
    return Estimate.from_samples(values)


def grinberg_check(
    K: StarBody,
    k: int,
    trials: int,
    samples: int,
    rng: RngStream,
    n_se: float = 3.0,
) -> InequalityReport:
    """
    E_H |K cap H|^n <= E_H |B cap H|^n for |K| = 1, B the volume-one ball.

    Every section of B has volume 1 / gamma_{n,k}, so the paired differences
    against B reduce to a shift of the K-sample by gamma_{n,k}^-n.
    """
    n = K.dim
    _check_codim(n, k)
    vol = volume(K, samples, rng.child(0))
    if not vol.within(1.0, n_se=n_se, floor=VOLUME_ONE_TOL):
        raise NormalizationError(f"Grinberg's inequality needs |K| = 1, got {vol.value:.9g} for {K.tag}")
    sections = _sections(K, UNIT, k, trials, samples, rng.child(1))
    powers = np.array([section.value for _, section in sections]) ** n
    ball = gamma_nk(n, k) ** (-n)
    lhs = _average(powers)

    report = InequalityReport.compare(
        "grinberg",
        lhs,
        ball,
        n_se=n_se,
        constants_used=[ConstantUsed(symbol="gamma_{n,k}^-n", value=ball, provenance="volume-one ball sections")],
        notes=[f"paired difference {lhs.value - ball:.6g} over {trials} Haar subspaces"],
        bodies={"K": K.tag},
        n=n,
        k=k,
    )
    logger.info("grinberg %s k=%d: %s", K.tag, k, report.verdict.value)
    return report


def dpp_check(
    g: Density,
    support: StarBody,
    k: int,
    trials: int,
    samples: int,
    rng: RngStream,
    partition: Partition | None = None,
    n_se: float = 3.0,
) -> InequalityReport:
    """
    E_H [ ||g|_H||_inf^-k (int_H g)^n ] <= gamma_{n,k}^-n (int g)^(n-k), g supported in ``support``.

    The indicator of a ball is the equality case.
    """
    n = support.dim
    _check_codim(n, k)
    total = body_integral(support, g, samples, rng.child(0), partition)
    values = []
    for index, (subspace, section) in enumerate(_sections(support, g, k, trials, samples, rng.child(1))):
        points, _ = uniform_in_section(support, subspace, SUP_PROBES, rng.child(2).child(index))
        peak = sampled_sup(g, points)
        if peak <= 0.0:
            raise NormalizationError(f"{g.label} vanishes on a section of {support.tag}")
        values.append(peak ** (-k) * section.value**n)
    lhs = _average(np.array(values))
    constant = gamma_nk(n, k) ** (-n)
    rhs = total ** (n - k) * constant

    report = InequalityReport.compare(
        "dpp",
        lhs,
        rhs,
        n_se=n_se,
        constants_used=[ConstantUsed(symbol="gamma_{n,k}^-n", value=constant, provenance="closed form")],
        notes=[f"{trials} Haar subspaces; sup of g on each section from {SUP_PROBES} probes or its closed form"],
        bodies={"D": support.tag, "g": g.label},
        n=n,
        k=k,
    )
    logger.info("dpp %s on %s k=%d: %s", g.label, support.tag, k, report.verdict.value)
    return report


def _random_ellipsoid(m: int, gen: np.random.Generator) -> tuple[NDArray[np.float64], float]:
    """A linear map T with E = T B_2^m, and log |E|."""
    transform = sample_rotation(m, gen) @ np.diag(np.exp(0.5 * gen.standard_normal(m)))
    return transform, log_omega(m) + float(np.linalg.slogdet(transform)[1])


def barany_furedi_check(
    m: int,
    s: int,
    trials: int,
    rng: RngStream,
    c_budget: float = DEFAULT_C_BUDGET,
) -> InequalityReport:
    """
    max over trials of (|conv(w_1..w_s)| / |E|)^(1/m) sqrt(m) / sqrt(log(1 + s/m)) <= C_budget,
    with the w_i uniform in a random centered ellipsoid E of R^m.
    """
    if m < 2 or s < m + 1:
        raise ValueError(f"need m >= 2 and s >= m + 1, got m={m}, s={s}")
    gen = as_generator(rng)
    ball = Ellipsoid.ball(m)
    normalizer = math.sqrt(m / math.log1p(s / m))
    worst = 0.0
    degenerate = 0
    for _ in range(trials):
        transform, log_volume = _random_ellipsoid(m, gen)
        points, _ = uniform_in_section(ball, None, s, gen)
        try:
            hull = ConvexHull(points @ transform.T).volume
        except QhullError:
            degenerate += 1
            continue
        worst = max(worst, math.exp((math.log(hull) - log_volume) / m) * normalizer)

    notes = [f"s = {s} points, max over {trials - degenerate} hulls"]
    if degenerate:
        notes.append(f"{degenerate} degenerate hulls skipped")
    report = InequalityReport.compare(
        "barany-furedi",
        worst,
        c_budget,
        constants_used=[ConstantUsed(symbol="C_budget", value=c_budget, provenance=BUDGET_PROVENANCE)],
        notes=notes,
        n=m,
    )
    logger.info("barany-furedi m=%d s=%d: %.4g", m, s, worst)
    return report


def ovr_convex_hull_check(
    m: int,
    trials: int,
    rng: RngStream,
    c_budget: float = DEFAULT_C_BUDGET,
) -> InequalityReport:
    """
    The same envelope for conv(0, x_1..x_m), x_i in an m-dimensional ellipsoid section:
    (|conv(0, x_1..x_m)| / |E cap H|)^(1/m) sqrt(m) / sqrt(log(1 + (m+1)/m)).
    """
    gen = as_generator(rng)
    ball = Ellipsoid.ball(m)
    normalizer = math.sqrt(m / math.log1p((m + 1) / m))
    stats = np.empty(trials)
    for index in range(trials):
        transform, log_volume = _random_ellipsoid(m, gen)
        points, _ = uniform_in_section(ball, None, m, gen)
        simplex = float(batch_simplex_volumes((points @ transform.T)[None, :, :])[0])
        stats[index] = math.exp((math.log(simplex) - log_volume) / m) * normalizer if simplex > 0.0 else 0.0
    worst = float(np.max(stats))

    report = InequalityReport.compare(
        "ovr-convex-hull",
        worst,
        c_budget,
        constants_used=[ConstantUsed(symbol="C_1 budget", value=c_budget, provenance=BUDGET_PROVENANCE)],
        notes=[f"max over {trials} simplices; mean statistic {float(np.mean(stats)):.4g}"],
        n=m,
    )
    logger.info("ovr-convex-hull m=%d: %.4g", m, worst)
    return report


def barany_furedi_counts(m: int) -> tuple[int, ...]:
    """Point counts s in {m+1, 2m, 10m}, deduplicated."""
    return tuple(sorted({m + 1, 2 * m, 10 * m}))


def check_section_lemmas(
    K: StarBody | None,
    g: Density | None,
    support: StarBody | None,
    k: int,
    trials: int,
    samples: int,
    rng: RngStream,
    m_values: tuple[int, ...] = (),
    hull_trials: int = 1000,
    c_budget: float = DEFAULT_C_BUDGET,
    partition: Partition | None = None,
    n_se: float = 3.0,
) -> list[InequalityReport]:
    """Grinberg for K, DPP for g on ``support``, and the hull envelopes for each m, as available."""
    reports = []
    if K is not None:
        reports.append(grinberg_check(K, k, trials, samples, rng.child(0), n_se))
    if g is not None:
        if support is None:
            raise ValueError("the DPP check needs a support body for g")
        reports.append(dpp_check(g, support, k, trials, samples, rng.child(1), partition, n_se))
    for m in m_values:
        stream = rng.child(2).child(m)
        for s in barany_furedi_counts(m):
            reports.append(barany_furedi_check(m, s, hull_trials, stream.child(s), c_budget))
        reports.append(ovr_convex_hull_check(m, hull_trials, stream.child(0), c_budget))
    return reports
