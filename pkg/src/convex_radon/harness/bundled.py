"""Closed-form reproductions: constants, volumes, sections and Blaschke-Petkantschin."""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence

import numpy as np

from convex_radon.geometry.bodies import StarBody
from convex_radon.geometry.constants import SQRT_E, c_n1, dpp_subspace_ratio, gamma_nk
from convex_radon.geometry.radon import Partition, blaschke_check, integrate_section, polar_volume
from convex_radon.geometry.sampling import RngStream, sample_grassmann
from convex_radon.geometry.subspace import Subspace
from convex_radon.harness.common import UNIT
from convex_radon.schemas.report import ConstantUsed, InequalityReport, Relation

logger = logging.getLogger(__name__)

GAMMA_MAX_DIM = 64
C_N1_MAX_DIM = 200
DPP_DIMS = range(3, 21)
DPP_RANGE = (0.2, 5.0)
MAX_RELATIVE_SE = 0.01


def _closed_form(theorem_id: str, lhs: float, rhs: float, note: str) -> InequalityReport:
    return InequalityReport.compare(theorem_id, lhs, rhs, notes=[note])


def check_constants(gamma_max_dim: int = GAMMA_MAX_DIM, c_max_dim: int = C_N1_MAX_DIM) -> list[InequalityReport]:
    """
    e^(-k/2) < gamma_{n,k} < 1 for n <= 64, c(n,1) <= sqrt(e) for n <= 200, and
    [gamma_{n,k}^-n p(n, n-k)]^(1/(k(n-k))) / sqrt(n-k) in [0.2, 5] for 3 <= n <= 20.
    """
    gammas = [(n, k, gamma_nk(n, k)) for n in range(2, gamma_max_dim + 1) for k in range(1, n)]
    upper = max(gammas, key=lambda item: item[2])
    lower = max(gammas, key=lambda item: math.exp(-item[1] / 2) / item[2])
    c_values = [(n, c_n1(n)) for n in range(2, c_max_dim + 1)]
    c_worst = max(c_values, key=lambda item: item[1])
    ratios = [(n, k, dpp_subspace_ratio(n, k)) for n in DPP_DIMS for k in range(1, n)]
    ratio_high = max(ratios, key=lambda item: item[2])
    ratio_low = min(ratios, key=lambda item: item[2])

    reports = [
        _closed_form("gamma-upper", upper[2], 1.0, f"max over n <= {gamma_max_dim} at n={upper[0]}, k={upper[1]}"),
        _closed_form(
            "gamma-lower",
            math.exp(-lower[1] / 2),
            lower[2],
            f"tightest e^(-k/2) / gamma at n={lower[0]}, k={lower[1]}",
        ),
        _closed_form("c(n,1)", c_worst[1], SQRT_E, f"max over n <= {c_max_dim} at n={c_worst[0]}"),
        _closed_form("dpp-ratio-upper", ratio_high[2], DPP_RANGE[1], f"max at n={ratio_high[0]}, k={ratio_high[1]}"),
        _closed_form("dpp-ratio-lower", DPP_RANGE[0], ratio_low[2], f"min at n={ratio_low[0]}, k={ratio_low[1]}"),
    ]
    # strict bounds: the closed forms never touch them
    for report in reports[:2]:
        if report.lhs.value >= report.rhs.value:
            logger.warning("%s: bound attained (%r)", report.theorem_id, report.lhs.value)
    return reports


def check_volumes(
    bodies: Sequence[StarBody],
    samples: int,
    rng: RngStream,
    partition: Partition | None = None,
) -> list[InequalityReport]:
    """Polar-formula volume against the closed form, body by body."""
    reports = []
    for index, body in enumerate(bodies):
        exact = body.volume()
        if exact is None:
            raise ValueError(f"{body.tag} has no closed-form volume to reproduce")
        estimate = polar_volume(body, samples, rng.child(index), partition)
        relative = estimate.relative_error
        notes = [f"relative standard error {relative:.3e}"]
        if relative > MAX_RELATIVE_SE:
            notes.append(f"relative standard error above {MAX_RELATIVE_SE:g}")
        report = InequalityReport.compare(
            "polar-volume",
            estimate,
            exact,
            relation=Relation.IDENTITY,
            notes=notes,
            bodies={"K": body.tag},
            n=body.dim,
        )
        logger.info("polar-volume %s: %s", body.tag, report.verdict.value)
        reports.append(report)
    return reports


def check_sections(
    body: StarBody,
    k: int,
    trials: int,
    samples: int,
    rng: RngStream,
    partition: Partition | None = None,
    extra: Sequence[np.ndarray] = (),
) -> list[InequalityReport]:
    """
    Monte Carlo |K cap H| against the exact section volume on Haar subspaces, plus the
    hyperplanes orthogonal to the ``extra`` directions.
    """
    n = body.dim
    subspaces = [sample_grassmann(n, n - k, rng.child(0).child(index)) for index in range(trials)]
    subspaces.extend(Subspace.orthogonal_to(direction) for direction in extra)
    reports = []
    for index, subspace in enumerate(subspaces):
        exact = body.section_volume(subspace)
        if exact is None:
            raise ValueError(f"{body.tag} has no exact section oracle")
        estimate = integrate_section(body, UNIT, subspace, samples, rng=rng.child(1).child(index), partition=partition)
        reports.append(
            InequalityReport.compare(
                "section-volume",
                estimate,
                exact,
                relation=Relation.IDENTITY,
                constants_used=[ConstantUsed(symbol="|K cap H|", value=exact, provenance="exact section oracle")],
                bodies={"K": body.tag},
                n=n,
                k=subspace.codim,
            )
        )
    failed = sum(not report.passed for report in reports)
    logger.info("section-volume %s: %d of %d outside 3 SE", body.tag, failed, len(reports))
    return reports


def check_blaschke(
    bodies: Sequence[StarBody],
    s: int,
    samples: int,
    rng: RngStream,
    partition: Partition | None = None,
) -> list[InequalityReport]:
    return [blaschke_check(body, s, samples, rng.child(index), partition) for index, body in enumerate(bodies)]
