from __future__ import annotations

from collections.abc import Sequence
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

ORTHONORMAL_TOL = 1e-10
UNIT_TOL = 1e-12


def as_direction(coords: ArrayLike) -> NDArray[np.float64]:
    """Validate a unit vector (Euclidean norm 1 within 1e-12)."""
    vector = np.asarray(coords, dtype=float).ravel()
    norm = float(np.linalg.norm(vector))
    if abs(norm - 1.0) > UNIT_TOL:
        raise ValueError(f"direction must have unit norm, got |x| = {norm!r}")
    return vector


def normalize(x: ArrayLike) -> NDArray[np.float64]:
    vector = np.asarray(x, dtype=float)
    return vector / np.linalg.norm(vector, axis=-1, keepdims=True)


class Subspace(BaseModel):
    """A point of the Grassmannian: an orthonormal basis (columns) of an m-dimensional subspace of R^n."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    ambient_dim: int = Field(..., description="Ambient dimension n.", examples=[3], ge=2)
    basis: np.ndarray = Field(..., description="n x m matrix with orthonormal columns.")

    @field_validator("basis", mode="before")
    @classmethod
    def _as_matrix(cls, value: Any) -> np.ndarray:
        basis = np.array(value, dtype=float)
        if basis.ndim == 1:
            basis = basis[:, None]
        basis.setflags(write=False)
        return basis

    @model_validator(mode="after")
    def _check_basis(self) -> Subspace:
        n, m = self.basis.shape
        if n != self.ambient_dim:
            raise ValueError(f"basis has {n} rows, ambient dimension is {self.ambient_dim}")
        if not 1 <= m <= n - 1:
            raise ValueError(f"subspace dimension must be in [1, n-1], got {m} in R^{n}")
        gram = self.basis.T @ self.basis
        if np.max(np.abs(gram - np.eye(m))) > ORTHONORMAL_TOL:
            raise ValueError("basis columns are not orthonormal")
        return self

    @property
    def dim(self) -> int:
        return int(self.basis.shape[1])

    @property
    def codim(self) -> int:
        return self.ambient_dim - self.dim

    def coordinates(self, points: ArrayLike) -> NDArray[np.float64]:
        """Coordinates of the orthogonal projection of ``points`` (rows) in this basis."""
        return np.asarray(points, dtype=float) @ self.basis

    def lift(self, coords: ArrayLike) -> NDArray[np.float64]:
        """Map H-coordinates (rows) back to R^n."""
        return np.asarray(coords, dtype=float) @ self.basis.T

    def complement_basis(self) -> NDArray[np.float64]:
        """Orthonormal basis of the orthogonal complement."""
        q, _ = np.linalg.qr(np.hstack([self.basis, np.eye(self.ambient_dim)]))
        return q[:, self.dim :]

    def restrict(self, matrix: ArrayLike) -> NDArray[np.float64]:
        """B^T A B: a quadratic form restricted to the subspace."""
        return self.basis.T @ np.asarray(matrix, dtype=float) @ self.basis

    @classmethod
    def span(cls, vectors: Sequence[ArrayLike] | ArrayLike) -> Subspace:
        """Orthonormalize the given spanning vectors (rows)."""
        matrix = np.atleast_2d(np.asarray(vectors, dtype=float))
        q, r = np.linalg.qr(matrix.T)
        rank = int(np.sum(np.abs(np.diag(r)) > 1e-12))
        if rank != matrix.shape[0]:
            raise ValueError("spanning vectors are linearly dependent")
        return cls(ambient_dim=matrix.shape[1], basis=q[:, :rank])

    @classmethod
    def orthogonal_to(cls, normals: Sequence[ArrayLike] | ArrayLike) -> Subspace:
        """The subspace perpendicular to the given vectors, e.g. xi^perp for one direction."""
        matrix = np.atleast_2d(np.asarray(normals, dtype=float))
        n = matrix.shape[1]
        _, s, vt = np.linalg.svd(matrix)
        rank = int(np.sum(s > 1e-12))
        return cls(ambient_dim=n, basis=vt[rank:].T)

    @classmethod
    def coordinate(cls, n: int, axes: Sequence[int]) -> Subspace:
        """span(e_i : i in axes)."""
        return cls(ambient_dim=n, basis=np.eye(n)[:, list(axes)])
