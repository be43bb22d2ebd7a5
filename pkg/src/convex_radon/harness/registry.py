"""Checker ids of a run configuration and the harness calls behind them."""

from __future__ import annotations

import logging
from collections.abc import Callable

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from convex_radon.core.errors import ConfigError
from convex_radon.geometry.bodies import Ellipsoid, StarBody
from convex_radon.geometry.catalog import make_catalog_body, make_density
from convex_radon.geometry.densities import Density, GaussianDensity
from convex_radon.geometry.radon import Partition
from convex_radon.geometry.sampling import RngStream
from convex_radon.harness import applications, bundled, projections, quotient, sections
from convex_radon.harness.nets import SubspaceNet, direction_net
from convex_radon.schemas.config import CheckSpec
from convex_radon.schemas.report import InequalityReport

logger = logging.getLogger(__name__)

GRINBERG_TRIALS = 500
SECTION_TRIALS = 20
GAUSSIAN_SUPPORT_RADII = 6.0
NET_STREAM = 100


def hull_trials(m: int) -> int:
    """10^4 hulls up to m = 4, 10^3 above (the hull volume cost grows quickly with m)."""
    return 10_000 if m <= 4 else 1_000


class CheckContext(BaseModel):
    """Run-level inputs a checker falls back to when its spec leaves them unset."""

    model_config = ConfigDict(frozen=True)

    rng: RngStream = Field(..., description="Stream of this check.")
    samples: int = Field(..., description="Default Monte Carlo budget.", gt=0)
    partition: Partition = Field(default_factory=Partition, description="Chunking of every estimate.")


Checker = Callable[[CheckSpec, CheckContext], list[InequalityReport]]


def _body(spec: CheckSpec, role: str) -> StarBody:
    descriptor = getattr(spec, role)
    if descriptor is None:
        raise ConfigError(f"{spec.check}: field '{role}' is required")
    return make_catalog_body(descriptor)


def _codim(spec: CheckSpec) -> int:
    if spec.k is None:
        raise ConfigError(f"{spec.check}: field 'k' is required")
    return spec.k


def _densities(spec: CheckSpec, n: int) -> tuple[Density, Density]:
    return make_density(spec.f, n), make_density(spec.g, n)


def _samples(spec: CheckSpec, ctx: CheckContext) -> int:
    return spec.samples or ctx.samples


def _net(spec: CheckSpec, n: int, k: int, ctx: CheckContext) -> SubspaceNet:
    return SubspaceNet(
        n=n,
        m=n - k,
        random_count=spec.net_size,
        refine_steps=spec.refine_steps,
        rng=ctx.rng.child(NET_STREAM),
    )


def _pair(spec: CheckSpec) -> tuple[StarBody, StarBody, int]:
    K, L = _body(spec, "K"), _body(spec, "L")
    return K, L, quotient.check_codim(K, L, _codim(spec))


def run_quotient_main(spec: CheckSpec, ctx: CheckContext) -> list[InequalityReport]:
    K, L, n = _pair(spec)
    f, g = _densities(spec, n)
    net = _net(spec, n, spec.k or 0, ctx)
    return [
        quotient.check_quotient_main(
            K, L, f, g, spec.k or 0, net, _samples(spec, ctx), ctx.rng, ctx.partition, spec.n_se
        )
    ]


def run_quotient_holder(spec: CheckSpec, ctx: CheckContext) -> list[InequalityReport]:
    K, L, n = _pair(spec)
    net = _net(spec, n, spec.k or 0, ctx)
    return [
        quotient.check_quotient_holder(K, L, spec.k or 0, net, _samples(spec, ctx), ctx.rng, ctx.partition, spec.n_se)
    ]


def run_arb_ovr(spec: CheckSpec, ctx: CheckContext) -> list[InequalityReport]:
    K, L, n = _pair(spec)
    f, g = _densities(spec, n)
    net = _net(spec, n, spec.k or 0, ctx)
    return [
        quotient.check_arb_ovr(
            K,
            L,
            f,
            g,
            spec.k or 0,
            net,
            _samples(spec, ctx),
            ctx.rng,
            ctx.partition,
            spec.c_budget or quotient.DEFAULT_C_BUDGET,
            spec.n_se,
        )
    ]


def _dpp_inputs(spec: CheckSpec, n: int) -> tuple[Density | None, StarBody | None]:
    """g on D; a Gaussian g without D is cut off at radius 6 scale, where it is below e^-36."""
    g = make_density(spec.g, n)
    if spec.D is not None:
        return g, make_catalog_body(spec.D)
    if isinstance(g, GaussianDensity):
        return g, Ellipsoid.ball(n, GAUSSIAN_SUPPORT_RADII * g.scale)
    if not g.is_constant:
        raise ConfigError(f"{spec.check}: field 'D' is required for density {g.label}")
    return None, None


def run_section_lemmas(spec: CheckSpec, ctx: CheckContext) -> list[InequalityReport]:
    K = _body(spec, "K") if spec.K is not None else None
    n = spec.dim
    if n is None and spec.g.kind != "constant":
        raise ConfigError(f"{spec.check}: field 'D' is required for density g")
    g, support = _dpp_inputs(spec, n) if n is not None else (None, None)
    if K is None and g is None and not spec.m:
        raise ConfigError(f"{spec.check}: give K, g with D, or m")
    k = _codim(spec) if K is not None or g is not None else 1
    samples = _samples(spec, ctx)
    trials = spec.trials or GRINBERG_TRIALS
    budget = spec.c_budget or sections.DEFAULT_C_BUDGET
    reports = sections.check_section_lemmas(
        K, g, support, k, trials, samples, ctx.rng, c_budget=budget, partition=ctx.partition, n_se=spec.n_se
    )
    for m in spec.m:
        reports.extend(
            sections.check_section_lemmas(
                None,
                None,
                None,
                k,
                trials,
                samples,
                ctx.rng,
                m_values=(m,),
                hull_trials=spec.hull_trials or hull_trials(m),
                c_budget=budget,
            )
        )
    return reports


def run_grinberg(spec: CheckSpec, ctx: CheckContext) -> list[InequalityReport]:
    K = _body(spec, "K")
    return [
        sections.grinberg_check(
            K, _codim(spec), spec.trials or GRINBERG_TRIALS, _samples(spec, ctx), ctx.rng, spec.n_se
        )
    ]


def run_main_proj(spec: CheckSpec, ctx: CheckContext) -> list[InequalityReport]:
    K, L = _body(spec, "K"), _body(spec, "L")
    directions = direction_net(K.dim, spec.net_size, ctx.rng.child(0))
    samples = _samples(spec, ctx)
    return projections.check_main_proj(K, L, spec.p or 1.0, directions, samples, ctx.rng.child(1), spec.n_se)


def run_proj_section_mixed(spec: CheckSpec, ctx: CheckContext) -> list[InequalityReport]:
    K, D = _body(spec, "K"), _body(spec, "D")
    k = _codim(spec)
    net = _net(spec, K.dim, k, ctx)
    return [
        projections.check_proj_section_mixed(K, D, k, net, _samples(spec, ctx), ctx.rng, ctx.partition, spec.n_se)
    ]


def run_applications(spec: CheckSpec, ctx: CheckContext) -> list[InequalityReport]:
    K = _body(spec, "K")
    L = _body(spec, "L") if spec.L is not None else K
    f, g = _densities(spec, K.dim)
    try:
        return applications.check_applications(
            spec.selection or applications.APPLICATIONS,
            K,
            L,
            f,
            g,
            _codim(spec),
            _samples(spec, ctx),
            ctx.rng,
            spec.net_size,
            spec.refine_steps,
            ctx.partition,
            spec.c_budget or applications.MILMAN_BUDGET,
            spec.n_se,
        )
    except ValueError as exc:
        if "unknown applications" in str(exc):
            raise ConfigError(f"{spec.check}: field 'selection': {exc}") from exc
        raise


def run_constants(spec: CheckSpec, ctx: CheckContext) -> list[InequalityReport]:
    return bundled.check_constants()


def run_volumes(spec: CheckSpec, ctx: CheckContext) -> list[InequalityReport]:
    if not spec.bodies:
        raise ConfigError(f"{spec.check}: field 'bodies' is required")
    bodies = [make_catalog_body(descriptor) for descriptor in spec.bodies]
    return bundled.check_volumes(bodies, _samples(spec, ctx), ctx.rng, ctx.partition)


def run_sections(spec: CheckSpec, ctx: CheckContext) -> list[InequalityReport]:
    K = _body(spec, "K")
    diagonal = np.ones(K.dim) / np.sqrt(K.dim)
    return bundled.check_sections(
        K, _codim(spec), spec.trials or SECTION_TRIALS, _samples(spec, ctx), ctx.rng, ctx.partition, extra=[diagonal]
    )


def run_blaschke(spec: CheckSpec, ctx: CheckContext) -> list[InequalityReport]:
    if not spec.bodies:
        raise ConfigError(f"{spec.check}: field 'bodies' is required")
    bodies = [make_catalog_body(descriptor) for descriptor in spec.bodies]
    return bundled.check_blaschke(bodies, spec.s or 1, _samples(spec, ctx), ctx.rng, ctx.partition)


def run_brunn_suite(spec: CheckSpec, ctx: CheckContext) -> list[InequalityReport]:
    ps = (spec.p,) if spec.p is not None else projections.BRUNN_P
    return projections.brunn_suite(spec.pairs, ctx.rng, ps)


REGISTRY: dict[str, Checker] = {
    "quotient_main": run_quotient_main,
    "quotient_holder": run_quotient_holder,
    "arb_ovr": run_arb_ovr,
    "section_lemmas": run_section_lemmas,
    "grinberg": run_grinberg,
    "main_proj": run_main_proj,
    "proj_section_mixed": run_proj_section_mixed,
    "applications": run_applications,
    "constants": run_constants,
    "volumes": run_volumes,
    "sections": run_sections,
    "blaschke": run_blaschke,
    "brunn_suite": run_brunn_suite,
}


def run_check(spec: CheckSpec, ctx: CheckContext) -> list[InequalityReport]:
    """Dispatch one suite entry; the reports keep the harness order."""
    try:
        checker = REGISTRY[spec.check]
    except KeyError as exc:
        raise ConfigError(f"no checker registered for '{spec.check}'") from exc
    logger.debug("running %s with %d samples", spec.check, _samples(spec, ctx))
    return checker(spec, ctx)

