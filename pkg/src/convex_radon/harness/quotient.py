"""Quotient inequalities comparing K and L through their (n-k)-dimensional sections."""

from __future__ import annotations

import logging

from convex_radon.geometry.bodies import StarBody
from convex_radon.geometry.densities import Density
from convex_radon.geometry.ellipsoid import dovr_bp_bound, general_dovr_bound, ovr
from convex_radon.geometry.radon import Partition, body_integral
from convex_radon.geometry.sampling import RngStream
from convex_radon.harness.common import (
    BUDGET_PROVENANCE,
    UNIT,
    require_normalized,
    same_body,
    same_density,
    section_ratio,
    volume,
)
from convex_radon.harness.nets import NET_NOTE, NetMax, SubspaceNet
from convex_radon.schemas.estimate import Estimate
from convex_radon.schemas.report import ConstantUsed, InequalityReport

logger = logging.getLogger(__name__)

DEFAULT_C_BUDGET = 10.0


def check_codim(K: StarBody, L: StarBody, k: int) -> int:
    n = K.dim
    if L.dim != n:
        raise ValueError(f"bodies live in different dimensions: {K.tag} in R^{n}, {L.tag} in R^{L.dim}")
    if not 0 < k < n:
        raise ValueError(f"k must satisfy 0 < k < n, got n={n}, k={k}")
    return n


def _net_notes(best: NetMax) -> list[str]:
    notes = [NET_NOTE, f"net max over {best.evaluated} subspaces"]
    if best.dropped:
        notes.append(f"{best.dropped} net elements dropped (vanishing denominator)")
    return notes


def _integral_quotient(
    K: StarBody,
    L: StarBody,
    f: Density,
    g: Density,
    k: int,
    samples: int,
    rng: RngStream,
    partition: Partition | None,
) -> Estimate:
    """int_K f / [(int_L g)^((n-k)/n) |K|^(k/n)], with both integrals on one stream."""
    n = K.dim
    top = body_integral(K, f, samples, rng.child(1), partition)
    vol = volume(K, samples, rng.child(2), partition)
    if same_body(K, L) and same_density(f, g):
        return (top / vol) ** (k / n)
    bottom = body_integral(L, g, samples, rng.child(1), partition)
    return top / (bottom ** ((n - k) / n) * vol ** (k / n))


def _section_max(
    K: StarBody,
    L: StarBody,
    f: Density,
    g: Density,
    net: SubspaceNet,
    samples: int,
    rng: RngStream,
    partition: Partition | None,
) -> NetMax:
    return net.maximize(
        lambda subspace, stream: section_ratio((K, f), (L, g), subspace, samples, stream, partition),
        rng.child(3),
    )


def check_quotient_main(
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
    int_K f / [(int_L g)^((n-k)/n) |K|^(k/n)] <= n/(n-k) d_ovr(K, BP_k^n)^k max_H int_{K cap H} f / int_{L cap H} g.

    g must satisfy g(0) = sup g = 1.
    """
    n = check_codim(K, L, k)
    require_normalized(g, L, rng.child(0))
    bound = dovr_bp_bound(K, k)
    lhs = _integral_quotient(K, L, f, g, k, samples, rng, partition)
    best = _section_max(K, L, f, g, net, samples, rng, partition)
    factor = n / (n - k)
    rhs = best.value * (factor * bound.numeric() ** k)

    report = InequalityReport.compare(
        "quotient-main",
        lhs,
        rhs,
        bounds_substituted=not bound.is_exact,
        n_se=n_se,
        constants_used=[
            ConstantUsed.from_bound("d_ovr(K,BP_k)", bound),
            ConstantUsed(symbol="n/(n-k)", value=factor, provenance="closed form"),
            ConstantUsed.from_bound("d_ovr(K,BP_k) general", general_dovr_bound(n, k)),
        ],
        notes=_net_notes(best),
        bodies={"K": K.tag, "L": L.tag, "f": f.label, "g": g.label},
        n=n,
        k=k,
    )
    logger.info("quotient-main %s / %s k=%d: %s", K.tag, L.tag, k, report.verdict.value)
    return report


def check_quotient_holder(
    K: StarBody,
    L: StarBody,
    k: int,
    net: SubspaceNet,
    samples: int,
    rng: RngStream,
    partition: Partition | None = None,
    n_se: float = 3.0,
) -> InequalityReport:
    """(|K| / |L|)^((n-k)/n) <= d_ovr(K, BP_k^n)^k max_H |K cap H| / |L cap H|."""
    n = check_codim(K, L, k)
    bound = dovr_bp_bound(K, k)
    if same_body(K, L):
        lhs = Estimate.exact(1.0)
    else:
        lhs = (volume(K, samples, rng.child(1), partition) / volume(L, samples, rng.child(1), partition)) ** (
            (n - k) / n
        )
    best = _section_max(K, L, UNIT, UNIT, net, samples, rng, partition)
    rhs = best.value * bound.numeric() ** k

    report = InequalityReport.compare(
        "quotient-holder",
        lhs,
        rhs,
        bounds_substituted=not bound.is_exact,
        n_se=n_se,
        constants_used=[ConstantUsed.from_bound("d_ovr(K,BP_k)", bound)],
        notes=_net_notes(best),
        bodies={"K": K.tag, "L": L.tag},
        n=n,
        k=k,
    )
    logger.info("quotient-holder %s / %s k=%d: %s", K.tag, L.tag, k, report.verdict.value)
    return report


def check_arb_ovr(
    K: StarBody,
    L: StarBody,
    f: Density,
    g: Density,
    k: int,
    net: SubspaceNet,
    samples: int,
    rng: RngStream,
    partition: Partition | None = None,
    c_budget: float = DEFAULT_C_BUDGET,
    n_se: float = 3.0,
) -> InequalityReport:
    """
    Smallest absolute constant C with
    int_K f / [(int_L g)^((n-k)/n) |K|^(k/n)] <= (C ovr(K))^k max_H int_{K cap H} f / int_{L cap H} g.

    The report's lhs is that fitted C, its rhs the budget.
    """
    n = check_codim(K, L, k)
    require_normalized(g, L, rng.child(0))
    outer = ovr(K)
    quotient = _integral_quotient(K, L, f, g, k, samples, rng, partition)
    best = _section_max(K, L, f, g, net, samples, rng, partition)
    required = (quotient / (best.value * outer.numeric() ** k)) ** (1.0 / k)

    report = InequalityReport.compare(
        "arb-ovr",
        required,
        c_budget,
        n_se=n_se,
        constants_used=[
            ConstantUsed.from_bound("ovr(K)", outer),
            ConstantUsed(symbol="C_budget", value=c_budget, provenance=BUDGET_PROVENANCE),
        ],
        notes=[*_net_notes(best), f"quotient {quotient.value:.6g}, fitted C {required.value:.6g}"],
        bodies={"K": K.tag, "L": L.tag, "f": f.label, "g": g.label},
        n=n,
        k=k,
    )
    logger.info("arb-ovr %s / %s k=%d: C_required %.4g", K.tag, L.tag, k, required.value)
    return report
