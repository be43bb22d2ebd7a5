"""
Consequences of the quotient inequalities: comparison and slicing bounds, the mean
value inequality, proportional sections, minimal projections and the isotropic constant.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field

from convex_radon.core.errors import SamplingError
from convex_radon.geometry.bodies import StarBody
from convex_radon.geometry.brunn import projection_volume
from convex_radon.geometry.constants import SQRT_E, c_n1, gamma_nk, general_dovr_formula
from convex_radon.geometry.densities import Density
from convex_radon.geometry.ellipsoid import dovr_bp_bound, dvr_projection_bound, john_bound, general_dovr_bound
from convex_radon.geometry.radon import Partition, body_integral, section_integral, uniform_in_body
from convex_radon.geometry.sampling import RngStream
from convex_radon.geometry.subspace import Subspace
from convex_radon.harness.common import BUDGET_PROVENANCE, UNIT, require_normalized, section_ratio, volume
from convex_radon.harness.nets import NET_NOTE, SubspaceNet, direction_net
from convex_radon.harness.quotient import check_codim
from convex_radon.schemas.estimate import Estimate
from convex_radon.schemas.report import ConstantUsed, InequalityReport, Verdict

logger = logging.getLogger(__name__)

APPLICATIONS = ("comparison", "slicing", "mean-value", "proportional", "min-projection", "isotropy")
MAX_CONDITION = 1e6
SPREAD_LIMIT = 0.02
HENSLEY_ENVELOPE = (0.1, 2.0)
MILMAN_BUDGET = 5.0
JOHN_SLACK = 1e-6
ISOTROPY_DIRECTIONS = 16
HENSLEY_PROVENANCE = "engineering envelope; the absolute constants are not given numerically"


def _make_net(n: int, k: int, net_size: int, refine_steps: int, rng: RngStream) -> SubspaceNet:
    return SubspaceNet(n=n, m=n - k, random_count=net_size, refine_steps=refine_steps, rng=rng)


def check_comparison(
    K: StarBody,
    L: StarBody,
    f: Density,
    g: Density,
    k: int,
    net: SubspaceNet,
    samples: int,
    rng: RngStream,
    partition: Partition | None = None,
    n_se: float = 3.0,
) -> InequalityReport:
    """
    If int_{K cap H} f <= int_{L cap H} g for every H, then
    int_K f <= n/(n-k) d_ovr(K, BP_k)^k |K|^(k/n) (int_L g)^((n-k)/n).
    """
    n = check_codim(K, L, k)
    require_normalized(g, L, rng.child(0))
    bound = dovr_bp_bound(K, k)
    best = net.maximize(
        lambda subspace, stream: section_ratio((K, f), (L, g), subspace, samples, stream, partition), rng.child(3)
    )
    dominated = best.value.value <= 1.0 + n_se * best.value.std_error + 1e-9
    lhs = body_integral(K, f, samples, rng.child(1), partition)
    total = body_integral(L, g, samples, rng.child(1), partition)
    vol = volume(K, samples, rng.child(2), partition)
    factor = n / (n - k)
    rhs = vol ** (k / n) * total ** ((n - k) / n) * (factor * bound.numeric() ** k)

    report = InequalityReport.compare(
        "comparison",
        lhs,
        rhs,
        bounds_substituted=not bound.is_exact,
        n_se=n_se,
        constants_used=[
            ConstantUsed.from_bound("d_ovr(K,BP_k)", bound),
            ConstantUsed(symbol="n/(n-k)", value=factor, provenance="closed form"),
        ],
        notes=[
            NET_NOTE,
            f"largest section quotient {best.value.value:.6g}",
            "sections dominate on the net" if dominated else "sections do not dominate; not predicted",
        ],
        bodies={"K": K.tag, "L": L.tag, "f": f.label, "g": g.label},
        n=n,
        k=k,
    )
    if not dominated and report.verdict is Verdict.VIOLATED:
        report = report.model_copy(update={"verdict": Verdict.INCONCLUSIVE})
    logger.info("comparison %s / %s k=%d: %s", K.tag, L.tag, k, report.verdict.value)
    return report


def _max_section(
    K: StarBody, f: Density, net: SubspaceNet, samples: int, rng: RngStream, partition: Partition | None
) -> tuple[Estimate, int]:
    best = net.maximize(lambda subspace, stream: section_integral(K, f, subspace, samples, stream, partition), rng)
    return best.value, best.evaluated


def check_slicing(
    K: StarBody,
    f: Density,
    k: int,
    net_size: int,
    samples: int,
    rng: RngStream,
    refine_steps: int = 0,
    partition: Partition | None = None,
    n_se: float = 3.0,
) -> list[InequalityReport]:
    """
    int_K f <= 2 d_ovr(K, I_n) |K|^(1/n) max_xi int_{K cap xi^perp} f, and for k > 1
    int_K f <= n/(n-k) gamma_{n,k} d_ovr(K, BP_k)^k |K|^(k/n) max_H int_{K cap H} f.
    """
    n = K.dim
    total = body_integral(K, f, samples, rng.child(1), partition)
    vol = volume(K, samples, rng.child(2), partition)
    bodies = {"K": K.tag, "f": f.label}
    reports = []

    hyperplane = dovr_bp_bound(K, 1)
    hyperplanes = _make_net(n, 1, net_size, refine_steps, rng.child(4))
    peak, evaluated = _max_section(K, f, hyperplanes, samples, rng.child(3), partition)
    reports.append(
        InequalityReport.compare(
            "slicing",
            total,
            peak * vol ** (1.0 / n) * (2.0 * hyperplane.numeric()),
            bounds_substituted=not hyperplane.is_exact,
            n_se=n_se,
            constants_used=[ConstantUsed.from_bound("d_ovr(K,I_n)", hyperplane)],
            notes=[NET_NOTE, f"net max over {evaluated} hyperplanes"],
            bodies=bodies,
            n=n,
            k=1,
        )
    )
    if k > 1:
        bound = dovr_bp_bound(K, k)
        peak, evaluated = _max_section(
            K, f, _make_net(n, k, net_size, refine_steps, rng.child(6)), samples, rng.child(5), partition
        )
        ball_ratio = gamma_nk(n, k)
        factor = n / (n - k)
        reports.append(
            InequalityReport.compare(
                "slicing",
                total,
                peak * vol ** (k / n) * (factor * ball_ratio * bound.numeric() ** k),
                bounds_substituted=not bound.is_exact,
                n_se=n_se,
                constants_used=[
                    ConstantUsed.from_bound("d_ovr(K,BP_k)", bound),
                    ConstantUsed(symbol="|B_n|^((n-k)/n)/|B_(n-k)|", value=ball_ratio, provenance="closed form, < 1"),
                    ConstantUsed(symbol="n/(n-k)", value=factor, provenance="closed form"),
                ],
                notes=[NET_NOTE, f"net max over {evaluated} subspaces"],
                bodies=bodies,
                n=n,
                k=k,
            )
        )
    for report in reports:
        logger.info("slicing %s k=%s: %s", K.tag, report.k, report.verdict.value)
    return reports


def check_mean_value(
    K: StarBody,
    f: Density,
    k: int,
    net: SubspaceNet,
    samples: int,
    rng: RngStream,
    partition: Partition | None = None,
    n_se: float = 3.0,
) -> InequalityReport:
    """int_K f / |K| <= n/(n-k) d_ovr(K, BP_k)^k max_H int_{K cap H} f / |K cap H|."""
    n = check_codim(K, K, k)
    bound = dovr_bp_bound(K, k)
    lhs = body_integral(K, f, samples, rng.child(1), partition) / volume(K, samples, rng.child(2), partition)
    best = net.maximize(
        lambda subspace, stream: section_ratio((K, f), (K, UNIT), subspace, samples, stream, partition),
        rng.child(3),
    )
    factor = n / (n - k)
    rhs = best.value * (factor * bound.numeric() ** k)
    general = general_dovr_formula(n, k) ** k * factor * best.value.value

    report = InequalityReport.compare(
        "mean-value",
        lhs,
        rhs,
        bounds_substituted=not bound.is_exact,
        n_se=n_se,
        constants_used=[
            ConstantUsed.from_bound("d_ovr(K,BP_k)", bound),
            ConstantUsed(symbol="n/(n-k)", value=factor, provenance="closed form"),
            ConstantUsed.from_bound("d_ovr(K,BP_k) general", general_dovr_bound(n, k)),
        ],
        notes=[NET_NOTE, f"with the general bound the right side is C^k * {general:.6g}"],
        bodies={"K": K.tag, "f": f.label},
        n=n,
        k=k,
    )
    logger.info("mean-value %s k=%d: %s", K.tag, k, report.verdict.value)
    return report


def check_proportional(
    K: StarBody,
    L: StarBody,
    k: int,
    net: SubspaceNet,
    samples: int,
    rng: RngStream,
    partition: Partition | None = None,
    n_se: float = 3.0,
) -> InequalityReport:
    """
    Empirical C(lambda) = (|K| / |L|)^((n-k)/n) / max_H |K cap H| / |L cap H|, lambda = (n-k)/n.

    No value of C(lambda) is claimed, so a quotient above one is inconclusive rather than violated.
    """
    n = check_codim(K, L, k)
    lhs = (volume(K, samples, rng.child(1), partition) / volume(L, samples, rng.child(1), partition)) ** ((n - k) / n)
    best = net.maximize(
        lambda subspace, stream: section_ratio((K, UNIT), (L, UNIT), subspace, samples, stream, partition),
        rng.child(3),
    )
    fitted = lhs / best.value
    report = InequalityReport.compare(
        "proportional",
        lhs,
        best.value,
        n_se=n_se,
        constants_used=[ConstantUsed(symbol="C(lambda)", value=fitted.value, provenance="fitted on this instance")],
        notes=[NET_NOTE, f"lambda = {(n - k) / n:.6g}", "C(lambda) is reported, not asserted"],
        bodies={"K": K.tag, "L": L.tag},
        n=n,
        k=k,
    )
    if report.verdict is Verdict.VIOLATED:
        report = report.model_copy(update={"verdict": Verdict.INCONCLUSIVE})
    logger.info("proportional %s / %s k=%d: C(lambda) %.4g", K.tag, L.tag, k, fitted.value)
    return report


def check_min_projection(
    L: StarBody,
    directions: NDArray[np.float64],
    samples: int,
    rng: RngStream,
) -> list[InequalityReport]:
    """
    min_xi |L | xi^perp| <= sqrt(e) d_vr(L, Pi) |L|^((n-1)/n), with c(n,1) <= sqrt(e)
    and the inscribed-ellipsoid bound d_vr(L, Pi) <= sqrt(n).
    """
    n = L.dim
    bound = dvr_projection_bound(L, 1.0)
    shadows = np.array([projection_volume(L, xi) for xi in directions])
    vol = volume(L, samples, rng)
    bodies = {"L": L.tag}
    reports = [
        InequalityReport.compare(
            "min-projection",
            float(np.min(shadows)),
            vol ** ((n - 1) / n) * (SQRT_E * bound.numeric()),
            bounds_substituted=not bound.is_exact,
            constants_used=[
                ConstantUsed.from_bound("d_vr(L,Pi)", bound),
                ConstantUsed(symbol="sqrt(e)", value=SQRT_E, provenance="closed form"),
            ],
            notes=[f"min over {len(directions)} directions"],
            bodies=bodies,
            n=n,
            p=1.0,
        ),
        InequalityReport.compare(
            "c(n,1)",
            c_n1(n),
            SQRT_E,
            constants_used=[ConstantUsed(symbol="c(n,1)", value=c_n1(n), provenance="closed form")],
            n=n,
        ),
    ]
    john = john_bound(L)
    reports.append(
        InequalityReport.compare(
            "john-distance",
            john.numeric(),
            math.sqrt(n) * (1.0 + JOHN_SLACK),
            constants_used=[ConstantUsed.from_bound("d_vr(L,Pi) via inscribed ellipsoid", john)],
            bodies=bodies,
            n=n,
        )
    )
    for report in reports:
        logger.info("%s %s: %s", report.theorem_id, L.tag, report.verdict.value)
    return reports


class IsotropicPosition(BaseModel):
    """A volume-one linear image T K in isotropic position, with its isotropic constant."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    body: StarBody = Field(..., description="The body T K, of volume one.")
    transform: np.ndarray = Field(..., description="The map T.")
    constant: Estimate = Field(..., description="L_K, averaged over the directions.")
    directional: np.ndarray = Field(..., description="(int <x, xi>^2)^(1/2) per direction.")
    directions: np.ndarray = Field(..., description="Unit directions the constant was measured along.")
    condition: float = Field(..., description="Condition number of the estimated covariance.", ge=1.0)

    @property
    def spread(self) -> float:
        """Relative spread (max - min) / mean of the directional values."""
        return float(np.ptp(self.directional) / np.mean(self.directional))


def isotropic_position(K: StarBody, samples: int, rng: RngStream) -> IsotropicPosition:
    """
    Whiten K with the Monte Carlo covariance, rescale to volume one, and measure the second
    moments along a direction net on an independent sample.
    """
    n = K.dim
    points = uniform_in_body(K, samples, rng.child(0))
    covariance = points.T @ points / len(points)
    eigenvalues, vectors = np.linalg.eigh(covariance)
    condition = float(eigenvalues[-1] / eigenvalues[0]) if eigenvalues[0] > 0.0 else math.inf
    if condition > MAX_CONDITION:
        raise SamplingError(f"covariance of {K.tag} has condition number {condition:.3e}")
    whitening = vectors @ np.diag(eigenvalues**-0.5) @ vectors.T
    vol = volume(K, samples, rng.child(2))
    scale = (abs(float(np.linalg.det(whitening))) * vol.value) ** (-1.0 / n)
    transform = scale * whitening
    image = K.linear_image(transform).relabel(f"iso({K.tag})")

    fresh = uniform_in_body(K, samples, rng.child(1)) @ transform.T
    directions = direction_net(n, ISOTROPY_DIRECTIONS, rng.child(3))
    squares = (fresh @ directions.T) ** 2
    directional = np.sqrt(squares.mean(axis=0))
    moments = Estimate.from_samples(squares.mean(axis=1))
    constant = moments**0.5
    return IsotropicPosition(
        body=image,
        transform=transform,
        constant=constant,
        directional=directional,
        directions=directions,
        condition=max(1.0, condition),
    )


def check_isotropy(
    K: StarBody,
    samples: int,
    rng: RngStream,
    c_budget: float = MILMAN_BUDGET,
    partition: Partition | None = None,
) -> list[InequalityReport]:
    """
    Direction-independence of L_K, the envelope c_1 <= |K cap xi^perp| L_K <= c_2 and
    L_K <= C d_ovr(K, I_n).
    """
    n = K.dim
    position = isotropic_position(K, samples, rng)
    lk = position.constant
    bodies = {"K": K.tag}
    products = []
    for index, xi in enumerate(position.directions[: 2 * n]):
        plane = Subspace.orthogonal_to(xi)
        section = section_integral(position.body, UNIT, plane, samples, rng.child(4).child(index), partition)
        products.append(section.value * lk.value)
    low, high = HENSLEY_ENVELOPE
    bound = dovr_bp_bound(K, 1)
    envelope = ConstantUsed(symbol="[c1, c2]", value=high, provenance=HENSLEY_PROVENANCE)
    reports = [
        InequalityReport.compare(
            "isotropy-spread",
            position.spread,
            SPREAD_LIMIT,
            notes=[f"L_K = {lk.value:.6g} over {len(position.directions)} directions"],
            bodies=bodies,
            n=n,
        ),
        InequalityReport.compare(
            "hensley-upper",
            max(products),
            high,
            constants_used=[envelope],
            bodies=bodies,
            n=n,
        ),
        InequalityReport.compare(
            "hensley-lower",
            low,
            min(products),
            constants_used=[envelope.model_copy(update={"value": low})],
            bodies=bodies,
            n=n,
        ),
        InequalityReport.compare(
            "milman",
            lk,
            c_budget * bound.numeric(),
            bounds_substituted=not bound.is_exact,
            constants_used=[
                ConstantUsed.from_bound("d_ovr(K,I_n)", bound),
                ConstantUsed(symbol="C_budget", value=c_budget, provenance=BUDGET_PROVENANCE),
            ],
            notes=[f"isotropic constant {lk.value:.6g}"],
            bodies=bodies,
            n=n,
        ),
    ]
    for report in reports:
        logger.info("%s %s: %s", report.theorem_id, K.tag, report.verdict.value)
    return reports


def check_applications(
    selection: Iterable[str],
    K: StarBody,
    L: StarBody,
    f: Density,
    g: Density,
    k: int,
    samples: int,
    rng: RngStream,
    net_size: int = 16,
    refine_steps: int = 0,
    partition: Partition | None = None,
    c_budget: float = MILMAN_BUDGET,
    n_se: float = 3.0,
) -> list[InequalityReport]:
    """Run the selected applications on one (K, L, f, g, k) instance, in ``APPLICATIONS`` order."""
    chosen = set(selection)
    unknown = chosen - set(APPLICATIONS)
    if unknown:
        raise ValueError(f"unknown applications: {sorted(unknown)}")
    n = K.dim
    reports: list[InequalityReport] = []
    for index, name in enumerate(APPLICATIONS):
        if name not in chosen:
            continue
        stream = rng.child(index)
        net = _make_net(n, k, net_size, refine_steps, stream.child(100))
        match name:
            case "comparison":
                reports.append(check_comparison(K, L, f, g, k, net, samples, stream, partition, n_se))
            case "slicing":
                reports.extend(check_slicing(K, f, k, net_size, samples, stream, refine_steps, partition, n_se))
            case "mean-value":
                reports.append(check_mean_value(K, f, k, net, samples, stream, partition, n_se))
            case "proportional":
                reports.append(check_proportional(K, L, k, net, samples, stream, partition, n_se))
            case "min-projection":
                reports.extend(check_min_projection(L, direction_net(n, net_size, stream), samples, stream.child(1)))
            case _:
                reports.extend(check_isotropy(K, samples, stream, c_budget, partition))
    return reports
