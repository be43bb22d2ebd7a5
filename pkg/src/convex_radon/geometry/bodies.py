"""
Star bodies given by radial functions, and the convex ones among them.

Every body is an immutable value object. Functionals are vectorized oracles:
``radial`` and ``support`` take an (m, n) array of unit rows and return an
(m,) array; single directions are accepted and give a float.
"""

from __future__ import annotations

import logging
import math
from functools import cached_property
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from scipy.special import gammaln

from convex_radon.core.errors import NotConvexError, SingularMapError, UnsupportedBodyError
from convex_radon.geometry.constants import log_omega, omega, sphere_abs_moment
from convex_radon.geometry.subspace import Subspace
from convex_radon.schemas.bounds import DistanceBound

logger = logging.getLogger(__name__)

# Registry key for bounds valid for every codimension k.
ALL_CODIMS = 0


def _rows(points: ArrayLike, dim: int) -> tuple[NDArray[np.float64], bool]:
    array = np.asarray(points, dtype=float)
    single = array.ndim == 1
    array = np.atleast_2d(array)
    if array.shape[1] != dim:
        raise ValueError(f"expected points in R^{dim}, got shape {array.shape}")
    return array, single


def _unrow(values: NDArray[np.float64], single: bool) -> Any:
    return float(values[0]) if single else values


class StarBody(BaseModel):
    """
    A star body K in R^n, determined by its radial function rho_K(theta) = ||theta||_K^-1.

    Subclasses implement ``_radial``; convex subclasses also implement ``_support``.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    dim: int = Field(..., description="Ambient dimension n.", examples=[3], ge=1)
    tag: str = Field(..., description="Catalog identifier.", examples=["ball(3,1)", "cube(3,1)"])
    closed_form_volume: float | None = Field(None, description="Exact volume when known.", gt=0)
    dovr_registry: dict[int, tuple[DistanceBound, ...]] = Field(
        default_factory=dict,
        description="Codimension k (0 = every k) -> upper bounds on d_ovr(K, BP_k^n).",
    )

    # Oracles

    def _radial(self, thetas: NDArray[np.float64]) -> NDArray[np.float64]:
        raise NotImplementedError

    def _support(self, xis: NDArray[np.float64]) -> NDArray[np.float64]:
        raise NotConvexError(f"{self.tag} has no registered convex structure")

    def radial(self, thetas: ArrayLike) -> Any:
        rows, single = _rows(thetas, self.dim)
        return _unrow(self._radial(rows), single)

    def support(self, xis: ArrayLike) -> Any:
        """Support function h_K. Positively homogeneous, so non-unit arguments are allowed."""
        if not self.is_convex:
            raise NotConvexError(f"{self.tag} has no registered convex structure")
        rows, single = _rows(xis, self.dim)
        return _unrow(self._support(rows), single)

    def minkowski_norm(self, points: ArrayLike) -> Any:
        """||x||_K = |x| / rho_K(x/|x|); zero exactly at the origin."""
        rows, single = _rows(points, self.dim)
        norms = np.linalg.norm(rows, axis=1)
        out = np.zeros(len(rows))
        nonzero = norms > 0.0
        if np.any(nonzero):
            thetas = rows[nonzero] / norms[nonzero, None]
            out[nonzero] = norms[nonzero] / self._radial(thetas)
        return _unrow(out, single)

    def contains(self, points: ArrayLike, tol: float = 0.0) -> Any:
        rows, single = _rows(points, self.dim)
        inside = np.asarray(self.minkowski_norm(rows)) <= 1.0 + tol
        return bool(inside[0]) if single else inside

    def boundary_points(self, thetas: ArrayLike) -> NDArray[np.float64]:
        rows, _ = _rows(thetas, self.dim)
        return rows * self._radial(rows)[:, None]

    # Structure

    @property
    def is_convex(self) -> bool:
        return False

    @property
    def is_symmetric(self) -> bool:
        return True

    def volume(self) -> float | None:
        return self.closed_form_volume

    def section_volume(self, subspace: Subspace) -> float | None:
        """Exact |K cap H| when the body class has a closed form, else None."""
        return None

    def dovr_bounds(self, k: int) -> tuple[DistanceBound, ...]:
        return self.dovr_registry.get(k, ()) + self.dovr_registry.get(ALL_CODIMS, ())

    def with_registry(self, registry: dict[int, tuple[DistanceBound, ...]]) -> StarBody:
        return self.model_copy(update={"dovr_registry": registry})

    def relabel(self, tag: str) -> StarBody:
        return self.model_copy(update={"tag": tag})

    def bounding_radius(self, directions: int = 4096, seed: int = 0) -> float:
        """Max of the radial function over a random net, padded by 5%; used to size samplers."""
        gen = np.random.default_rng(seed)
        thetas = gen.standard_normal((directions, self.dim))
        thetas /= np.linalg.norm(thetas, axis=1, keepdims=True)
        thetas = np.vstack([thetas, np.eye(self.dim), -np.eye(self.dim)])
        return 1.05 * float(np.max(self._radial(thetas)))

    def linear_image(self, matrix: ArrayLike) -> StarBody:
        """The body T K for an invertible T."""
        transform = _invertible(matrix, self.dim)
        return LinearImage.of(self, transform)

    def scaled(self, factor: float) -> StarBody:
        return self.linear_image(factor * np.eye(self.dim))


def _invertible(matrix: ArrayLike, dim: int) -> NDArray[np.float64]:
    transform = np.asarray(matrix, dtype=float)
    if transform.shape != (dim, dim):
        raise SingularMapError(f"linear map must be {dim}x{dim}, got {transform.shape}")
    det = float(np.linalg.det(transform))
    if not math.isfinite(det) or abs(det) < 1e-14:
        raise SingularMapError(f"linear map is singular (det = {det!r})")
    return transform


class Ellipsoid(StarBody):
    """Origin-centered ellipsoid {x : x^T A x <= 1} with A symmetric positive definite."""

    shape: np.ndarray = Field(..., description="Symmetric positive-definite n x n matrix A.")

    @field_validator("shape", mode="before")
    @classmethod
    def _as_matrix(cls, value: Any) -> np.ndarray:
        matrix = np.array(value, dtype=float)
        matrix.setflags(write=False)
        return matrix

    @model_validator(mode="after")
    def _check_shape(self) -> Ellipsoid:
        if self.shape.shape != (self.dim, self.dim):
            raise ValueError(f"shape must be {self.dim}x{self.dim}, got {self.shape.shape}")
        if np.max(np.abs(self.shape - self.shape.T)) > 1e-12 * max(1.0, float(np.max(np.abs(self.shape)))):
            raise ValueError("shape matrix is not symmetric")
        if float(np.min(np.linalg.eigvalsh(self.shape))) <= 0.0:
            raise ValueError("shape matrix is not positive definite")
        return self

    @classmethod
    def ball(cls, n: int, radius: float = 1.0, tag: str | None = None) -> Ellipsoid:
        if radius <= 0:
            raise ValueError(f"radius must be positive, got {radius}")
        return cls(
            dim=n,
            tag=tag or f"ball({n},{radius:g})",
            shape=np.eye(n) / radius**2,
            closed_form_volume=omega(n) * radius**n,
        )

    @classmethod
    def from_shape(cls, shape: ArrayLike, tag: str | None = None) -> Ellipsoid:
        matrix = np.asarray(shape, dtype=float)
        n = matrix.shape[0]
        sign, logdet = np.linalg.slogdet(matrix)
        volume = math.exp(log_omega(n) - 0.5 * logdet) if sign > 0 else None
        return cls(dim=n, tag=tag or f"ellipsoid(n={n})", shape=matrix, closed_form_volume=volume)

    @cached_property
    def inverse(self) -> NDArray[np.float64]:
        return np.linalg.inv(self.shape)

    @property
    def is_convex(self) -> bool:
        return True

    @property
    def is_ball(self) -> bool:
        return bool(np.allclose(self.shape, self.shape[0, 0] * np.eye(self.dim), rtol=1e-12, atol=0.0))

    def _radial(self, thetas: NDArray[np.float64]) -> NDArray[np.float64]:
        return 1.0 / np.sqrt(np.einsum("ij,jk,ik->i", thetas, self.shape, thetas))

    def _support(self, xis: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.sqrt(np.einsum("ij,jk,ik->i", xis, self.inverse, xis))

    def minkowski_norm(self, points: ArrayLike) -> Any:
        rows, single = _rows(points, self.dim)
        return _unrow(np.sqrt(np.einsum("ij,jk,ik->i", rows, self.shape, rows)), single)

    def volume(self) -> float:
        return math.exp(log_omega(self.dim) - 0.5 * float(np.linalg.slogdet(self.shape)[1]))

    def section_volume(self, subspace: Subspace) -> float:
        restricted = subspace.restrict(self.shape)
        return math.exp(log_omega(subspace.dim) - 0.5 * float(np.linalg.slogdet(restricted)[1]))

    def projection_volume(self, xi: ArrayLike) -> float:
        """|E | xi^perp| = omega_{n-1} sqrt(xi^T A xi) / sqrt(det A)."""
        direction = np.asarray(xi, dtype=float)
        logdet = float(np.linalg.slogdet(self.shape)[1])
        return math.exp(log_omega(self.dim - 1) - 0.5 * logdet) * math.sqrt(direction @ self.shape @ direction)

    def p_projection_support(self, xis: ArrayLike, p: float) -> Any:
        """
        h_{Pi_p E} in closed form: E = M B with M = A^(-1/2), so
        h_{Pi_p E}(xi) = det(M)^(1/p) * c_{n,p} * |M^-1 xi| with c_{n,p} from the ball.
        """
        rows, single = _rows(xis, self.dim)
        n = self.dim
        ball_const = (sphere_abs_moment(n, p) / (2.0 * n)) ** (1.0 / p)
        logdet = float(np.linalg.slogdet(self.shape)[1])
        scale = math.exp(-0.5 * logdet / p)
        lengths = np.sqrt(np.einsum("ij,jk,ik->i", rows, self.shape, rows))
        return _unrow(scale * ball_const * lengths, single)

    def polar(self) -> Ellipsoid:
        return Ellipsoid.from_shape(self.inverse, tag=f"polar({self.tag})")

    def linear_image(self, matrix: ArrayLike) -> Ellipsoid:
        transform = _invertible(matrix, self.dim)
        inv = np.linalg.inv(transform)
        shape = inv.T @ self.shape @ inv
        image = Ellipsoid.from_shape(0.5 * (shape + shape.T), tag=f"T*{self.tag}")
        return image.model_copy(update={"dovr_registry": self.dovr_registry})


class LpBall(StarBody):
    """
    radius * B_p^n = {x : ||x||_p <= radius}.

    For p < 1 the body is a star body but not convex; convex-only operations reject it.
    """

    p: float = Field(..., description="Exponent of the l_p norm; p > 0, inf allowed.", examples=[1.5, 2.0])
    radius: float = Field(1.0, description="Scaling of the unit l_p ball.", gt=0)

    @field_validator("p")
    @classmethod
    def _positive_p(cls, value: float) -> float:
        if not value > 0:
            raise ValueError(f"l_p exponent must be positive, got {value}")
        return value

    @classmethod
    def unit(cls, n: int, p: float, radius: float = 1.0, tag: str | None = None) -> LpBall:
        return cls(
            dim=n,
            p=p,
            radius=radius,
            tag=tag or f"lp_ball({n},{p:g})",
            closed_form_volume=radius**n * lp_ball_volume(n, p),
        )

    @property
    def dual_exponent(self) -> float:
        if self.p == 1.0:
            return math.inf
        if math.isinf(self.p):
            return 1.0
        return self.p / (self.p - 1.0)

    @property
    def is_convex(self) -> bool:
        return self.p >= 1.0

    def _radial(self, thetas: NDArray[np.float64]) -> NDArray[np.float64]:
        return self.radius / np.linalg.norm(thetas, ord=self.p, axis=1)

    def _support(self, xis: NDArray[np.float64]) -> NDArray[np.float64]:
        return self.radius * np.linalg.norm(xis, ord=self.dual_exponent, axis=1)

    def polar(self) -> LpBall:
        if not self.is_convex:
            raise NotConvexError(f"{self.tag} is not convex; its polar is not an l_q ball")
        return LpBall.unit(self.dim, self.dual_exponent, 1.0 / self.radius, tag=f"polar({self.tag})")

    def scaled(self, factor: float) -> LpBall:
        if factor <= 0:
            return super().scaled(factor)  # type: ignore[return-value]
        return self.model_copy(
            update={
                "radius": self.radius * factor,
                "closed_form_volume": (self.radius * factor) ** self.dim * lp_ball_volume(self.dim, self.p),
            }
        )


def lp_ball_volume(n: int, p: float) -> float:
    """|B_p^n| = 2^n Gamma(1 + 1/p)^n / Gamma(1 + n/p)."""
    if math.isinf(p):
        return 2.0**n
    return math.exp(n * math.log(2.0) + n * float(gammaln(1.0 + 1.0 / p)) - float(gammaln(1.0 + n / p)))


class LinearImage(StarBody):
    """T K for a star body K and invertible T; rho_{TK}(theta) = 1 / ||T^-1 theta||_K."""

    base: StarBody = Field(..., description="The body being mapped.")
    matrix: np.ndarray = Field(..., description="Invertible n x n matrix T.")

    @field_validator("matrix", mode="before")
    @classmethod
    def _as_matrix(cls, value: Any) -> np.ndarray:
        matrix = np.array(value, dtype=float)
        matrix.setflags(write=False)
        return matrix

    @classmethod
    def of(cls, base: StarBody, matrix: NDArray[np.float64]) -> LinearImage:
        if isinstance(base, LinearImage):
            return cls.of(base.base, matrix @ base.matrix)
        volume = base.volume()
        return cls(
            dim=base.dim,
            tag=f"T*{base.tag}",
            base=base,
            matrix=matrix,
            closed_form_volume=abs(float(np.linalg.det(matrix))) * volume if volume else None,
            dovr_registry=base.dovr_registry,
        )

    @cached_property
    def inverse(self) -> NDArray[np.float64]:
        return np.linalg.inv(self.matrix)

    @property
    def is_convex(self) -> bool:
        return self.base.is_convex

    @property
    def is_symmetric(self) -> bool:
        return self.base.is_symmetric

    def _radial(self, thetas: NDArray[np.float64]) -> NDArray[np.float64]:
        return 1.0 / np.asarray(self.base.minkowski_norm(thetas @ self.inverse.T))

    def _support(self, xis: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.asarray(self.base.support(xis @ self.matrix))

    def minkowski_norm(self, points: ArrayLike) -> Any:
        rows, single = _rows(points, self.dim)
        return _unrow(np.asarray(self.base.minkowski_norm(rows @ self.inverse.T)), single)

    def polar(self) -> StarBody:
        polar = getattr(self.base, "polar", None)
        if polar is None:
            raise UnsupportedBodyError(f"{self.base.tag} has no polar body")
        # (TK)° = T^{-T} K°
        return polar().linear_image(self.inverse.T)
