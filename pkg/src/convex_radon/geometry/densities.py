"""Non-negative density oracles integrated over bodies and sections."""

from __future__ import annotations

import logging
from typing import Any, Literal

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ConfigDict, Field

from convex_radon.core.errors import NormalizationError
from convex_radon.geometry.bodies import StarBody

logger = logging.getLogger(__name__)

NORMALIZATION_TOL = 1e-9


class Density(BaseModel):
    """A non-negative function on R^n evaluated row-wise."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    continuity: Literal["continuous", "bounded-measurable"] = Field(
        "continuous",
        description="Declared regularity of the density.",
    )

    def _eval(self, points: NDArray[np.float64]) -> NDArray[np.float64]:
        raise NotImplementedError

    def __call__(self, points: ArrayLike) -> Any:
        array = np.asarray(points, dtype=float)
        if array.ndim == 1:
            return float(self._eval(array[None, :])[0])
        return self._eval(array)

    @property
    def sup_norm(self) -> float | None:
        """Known supremum over R^n, when available in closed form."""
        return None

    @property
    def is_constant(self) -> bool:
        return False

    @property
    def label(self) -> str:
        return type(self).__name__


class ConstantDensity(Density):
    value: float = Field(1.0, description="Constant value of the density.", ge=0.0)

    def _eval(self, points: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.full(len(points), self.value)

    @property
    def sup_norm(self) -> float:
        return self.value

    @property
    def is_constant(self) -> bool:
        return True

    @property
    def label(self) -> str:
        return f"constant({self.value:g})"


class GaussianDensity(Density):
    """exp(-|x|^2 / scale^2); equals 1 at the origin and everywhere below it."""

    scale: float = Field(1.0, description="Length scale of the Gaussian.", gt=0.0)

    def _eval(self, points: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.exp(-np.einsum("ij,ij->i", points, points) / self.scale**2)

    @property
    def sup_norm(self) -> float:
        return 1.0

    @property
    def label(self) -> str:
        return f"gaussian({self.scale:g})"


class HalfSpaceIndicator(Density):
    """value * 1{<x, normal> >= 0}: a discontinuous density on half of a body."""

    continuity: Literal["continuous", "bounded-measurable"] = "bounded-measurable"
    normal: tuple[float, ...] = Field(..., description="Normal vector of the half-space boundary.")
    value: float = Field(1.0, description="Height of the indicator.", gt=0.0)

    def _eval(self, points: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.where(points @ np.asarray(self.normal) >= 0.0, self.value, 0.0)

    @property
    def sup_norm(self) -> float:
        return self.value

    @property
    def label(self) -> str:
        return "half_space(" + ",".join(f"{c:g}" for c in self.normal) + ")"


class RadialPower(Density):
    """|x|^exponent."""

    exponent: float = Field(2.0, description="Power of the Euclidean norm.", ge=0.0)

    def _eval(self, points: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.linalg.norm(points, axis=1) ** self.exponent

    @property
    def label(self) -> str:
        return f"radial_power({self.exponent:g})"


class CoordinatePower(Density):
    """|x_axis|^exponent."""

    axis: int = Field(0, description="Coordinate index.", ge=0)
    exponent: float = Field(2.0, description="Power of the coordinate.", ge=0.0)

    def _eval(self, points: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.abs(points[:, self.axis]) ** self.exponent

    @property
    def label(self) -> str:
        return f"coordinate_power({self.axis},{self.exponent:g})"


class BodyIndicator(Density):
    """Indicator of a star body; lets bounded Borel sets enter through a containing body."""

    continuity: Literal["continuous", "bounded-measurable"] = "bounded-measurable"
    body: StarBody = Field(..., description="The set whose indicator this is.")

    def _eval(self, points: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.asarray(self.body.contains(points), dtype=float)

    @property
    def sup_norm(self) -> float:
        return 1.0

    @property
    def label(self) -> str:
        return f"indicator({self.body.tag})"


def sampled_sup(density: Density, points: NDArray[np.float64]) -> float:
    """Closed-form sup when known, else the max over the given sample points and the origin."""
    if density.sup_norm is not None:
        return density.sup_norm
    origin = np.zeros((1, points.shape[1]))
    return float(np.max(density(np.vstack([origin, points]))))


def check_sup_normalized(density: Density, points: NDArray[np.float64]) -> None:
    """Enforce g(0) = ||g||_inf = 1, as required of the denominator density in quotient inequalities."""
    dim = points.shape[1]
    at_origin = float(density(np.zeros(dim)))
    if abs(at_origin - 1.0) > NORMALIZATION_TOL:
        raise NormalizationError(f"{density.label}: g(0) = {at_origin!r}, expected 1")
    observed = float(np.max(density(points))) if len(points) else at_origin
    bound = density.sup_norm if density.sup_norm is not None else observed
    if max(bound, observed) > 1.0 + NORMALIZATION_TOL:
        raise NormalizationError(f"{density.label}: sup g = {max(bound, observed)!r} exceeds 1")
