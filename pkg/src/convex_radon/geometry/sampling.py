"""Seeded, splittable random streams and the uniform laws on spheres and Grassmannians."""

from __future__ import annotations

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field

from convex_radon.geometry.subspace import Subspace


class RngStream(BaseModel):
    """
    A named random stream: same (seed, stream) gives the same draws.

    Children are derived through ``numpy.random.SeedSequence`` spawn keys, so
    sibling streams are statistically independent.
    """

    model_config = ConfigDict(frozen=True)

    seed: int = Field(..., description="Root 64-bit seed.", examples=[20240917], ge=0, lt=2**64)
    stream: tuple[int, ...] = Field((), description="Spawn-key path identifying the stream.", examples=[(0, 3)])

    def child(self, index: int) -> RngStream:
        return RngStream(seed=self.seed, stream=(*self.stream, index))

    def generator(self) -> np.random.Generator:
        return np.random.default_rng(np.random.SeedSequence(entropy=self.seed, spawn_key=self.stream))


Randomness = RngStream | np.random.Generator


def as_generator(rng: Randomness) -> np.random.Generator:
    return rng.generator() if isinstance(rng, RngStream) else rng


def sample_sphere(n: int, rng: Randomness, size: int | None = None) -> NDArray[np.float64]:
    """Uniform points on S^(n-1): normalized standard Gaussian vectors."""
    if n < 1:
        raise ValueError(f"sphere dimension needs n >= 1, got {n}")
    gen = as_generator(rng)
    count = 1 if size is None else size
    points = gen.standard_normal((count, n))
    norms = np.linalg.norm(points, axis=1, keepdims=True)
    # A zero Gaussian vector has probability zero; redraw rather than divide by it.
    while np.any(norms == 0.0):
        bad = norms[:, 0] == 0.0
        points[bad] = gen.standard_normal((int(bad.sum()), n))
        norms = np.linalg.norm(points, axis=1, keepdims=True)
    points /= norms
    return points[0] if size is None else points


def sample_subsphere(subspace: Subspace, rng: Randomness, size: int) -> NDArray[np.float64]:
    """Uniform points on S^(n-1) intersected with H, returned in ambient coordinates."""
    return subspace.lift(sample_sphere(subspace.dim, rng, size))


def sample_grassmann(n: int, m: int, rng: Randomness) -> Subspace:
    """Haar-distributed m-dimensional subspace of R^n (sign-fixed QR of a Gaussian matrix)."""
    if not 1 <= m <= n - 1:
        raise ValueError(f"Grassmannian G(n, m) needs 1 <= m <= n-1, got n={n}, m={m}")
    gen = as_generator(rng)
    q, r = np.linalg.qr(gen.standard_normal((n, m)))
    signs = np.sign(np.diag(r))
    signs[signs == 0.0] = 1.0
    return Subspace(ambient_dim=n, basis=q * signs)


def sample_rotation(n: int, rng: Randomness) -> NDArray[np.float64]:
    """Haar-distributed orthogonal matrix."""
    gen = as_generator(rng)
    q, r = np.linalg.qr(gen.standard_normal((n, n)))
    return q * np.sign(np.diag(r))
