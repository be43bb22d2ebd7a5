from __future__ import annotations

import math

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.special import gammaln


def simplex_volume(vectors: ArrayLike) -> float:
    """
    |conv(0, x_1, ..., x_s)| as an s-dimensional measure: sqrt(det(G^T G)) / s!.

    ``vectors`` holds x_1..x_s as rows; degenerate input gives 0.
    """
    rows = np.atleast_2d(np.asarray(vectors, dtype=float))
    s, n = rows.shape
    if s > n:
        raise ValueError(f"at most n={n} vectors span a simplex in R^{n}, got {s}")
    gram = rows @ rows.T
    det = float(np.linalg.det(gram))
    if det <= 0.0:
        return 0.0
    return math.sqrt(det) / math.factorial(s)


def batch_simplex_volumes(vectors: NDArray[np.float64]) -> NDArray[np.float64]:
    """simplex_volume over a stack of shape (batch, s, n)."""
    s = vectors.shape[1]
    gram = np.einsum("bin,bjn->bij", vectors, vectors)
    det = np.clip(np.linalg.det(gram), 0.0, None)
    return np.sqrt(det) / math.exp(float(gammaln(s + 1.0)))
