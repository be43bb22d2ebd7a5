"""Finite nets standing in for maxima over the Grassmannian and the sphere."""

from __future__ import annotations

import itertools
import logging
from collections.abc import Callable

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field

from convex_radon.core.errors import DroppedSubspace
from convex_radon.geometry.ellipsoid import deterministic_directions
from convex_radon.geometry.sampling import RngStream, sample_grassmann, sample_sphere
from convex_radon.geometry.subspace import Subspace
from convex_radon.schemas.estimate import Estimate, as_estimate

logger = logging.getLogger(__name__)

REFINE_SCALE = 0.2
NET_NOTE = "maximum over a finite net understates the supremum over all subspaces"


class NetMax(BaseModel):
    """Best objective value found on a net."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    value: Estimate = Field(..., description="Largest objective value.")
    subspace: Subspace = Field(..., description="Where it was attained.")
    evaluated: int = Field(..., description="Net elements evaluated.", ge=1)
    dropped: int = Field(0, description="Net elements discarded as unusable.", ge=0)


Objective = Callable[[Subspace, RngStream], "Estimate | float"]


class SubspaceNet(BaseModel):
    """
    Coordinate subspaces, registered extremal subspaces and M Haar-random subspaces of dimension m in R^n.

    Net element i is evaluated on stream ``rng.child(i)``, and random elements are appended after
    the deterministic ones, so a net with more random elements never has a smaller maximum.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int = Field(..., description="Ambient dimension.", examples=[4], ge=2)
    m: int = Field(..., description="Subspace dimension n - k.", examples=[3], ge=1)
    random_count: int = Field(16, description="Number M of Haar-random subspaces.", ge=0)
    refine_steps: int = Field(0, description="Local perturbation steps around the maximizer.", ge=0)
    extra: tuple[Subspace, ...] = Field((), description="Registered extremal subspaces.")
    rng: RngStream = Field(default_factory=lambda: RngStream(seed=0), description="Stream of the random part.")

    def coordinate_subspaces(self) -> list[Subspace]:
        return [Subspace.coordinate(self.n, axes) for axes in itertools.combinations(range(self.n), self.m)]

    def subspaces(self) -> list[Subspace]:
        fixed = self.coordinate_subspaces() + list(self.extra)
        random = [sample_grassmann(self.n, self.m, self.rng.child(1_000_000 + i)) for i in range(self.random_count)]
        return fixed + random

    def maximize(self, objective: Objective, stream: RngStream) -> NetMax:
        best: tuple[Estimate, Subspace] | None = None
        dropped = 0
        elements = self.subspaces()
        for index, subspace in enumerate(elements):
            try:
                value = as_estimate(objective(subspace, stream.child(index)))
            except DroppedSubspace as exc:
                dropped += 1
                logger.warning("dropped net element %d: %s", index, exc)
                continue
            if best is None or value.value > best[0].value:
                best = (value, subspace)
        if best is None:
            raise DroppedSubspace("every net element was dropped")

        evaluated = len(elements)
        gen = self.rng.child(2_000_000).generator()
        for step in range(self.refine_steps):
            scale = REFINE_SCALE / (1 + step)
            moved = best[1].basis + scale * gen.standard_normal(best[1].basis.shape)
            q, _ = np.linalg.qr(moved)
            candidate = Subspace(ambient_dim=self.n, basis=q)
            try:
                value = as_estimate(objective(candidate, stream.child(evaluated)))
            except DroppedSubspace:
                dropped += 1
                continue
            finally:
                evaluated += 1
            if value.value > best[0].value:
                best = (value, candidate)
        return NetMax(value=best[0], subspace=best[1], evaluated=evaluated, dropped=dropped)


def direction_net(n: int, random_count: int, rng: RngStream) -> NDArray[np.float64]:
    """+-e_i, (+-e_i +- e_j)/sqrt(2) and ``random_count`` uniform directions."""
    fixed = deterministic_directions(n)
    if random_count == 0:
        return fixed
    return np.vstack([fixed, sample_sphere(n, rng, random_count)])
