"""
Numeric constants of the section/projection inequalities.

Everything is evaluated in log space so that dimensions up to a few hundred
neither overflow nor underflow.
"""

from __future__ import annotations

import math
from functools import lru_cache

from scipy.special import gammaln

SQRT_E = math.sqrt(math.e)


@lru_cache(maxsize=None)
def log_omega(n: int) -> float:
    """log of the volume of the Euclidean unit ball in R^n."""
    if n < 0:
        raise ValueError(f"dimension must be non-negative, got {n}")
    return 0.5 * n * math.log(math.pi) - float(gammaln(0.5 * n + 1.0))


def omega(n: int) -> float:
    """omega_n = pi^(n/2) / Gamma(n/2 + 1)."""
    return math.exp(log_omega(n))


def sphere_area(n: int) -> float:
    """Surface area |S^(n-1)| = n * omega_n."""
    if n < 1:
        raise ValueError(f"sphere S^(n-1) needs n >= 1, got {n}")
    return n * omega(n)


def gamma_nk(n: int, k: int) -> float:
    """gamma_{n,k} = omega_n^((n-k)/n) / omega_{n-k}."""
    _check_codim(n, k)
    return math.exp((n - k) / n * log_omega(n) - log_omega(n - k))


def log_p_const(n: int, s: int) -> float:
    if not 1 <= s <= n - 1:
        raise ValueError(f"p(n,s) needs 1 <= s <= n-1, got n={n}, s={s}")
    numerator = sum(math.log(j) + log_omega(j) for j in range(n - s + 1, n + 1))
    denominator = sum(math.log(j) + log_omega(j) for j in range(2, s + 1)) + log_omega(1)
    return (n - s) * float(gammaln(s + 1.0)) + numerator - denominator


def p_const(n: int, s: int) -> float:
    """Blaschke-Petkantschin constant p(n, s)."""
    return math.exp(log_p_const(n, s))


def c_n1(n: int) -> float:
    """c_{n,1} = |B_2^(n-1)| / |B_2^n|^((n-1)/n)."""
    if n < 2:
        raise ValueError(f"c(n,1) needs n >= 2, got {n}")
    return math.exp(log_omega(n - 1) - (n - 1) / n * log_omega(n))


def dpp_subspace_ratio(n: int, k: int) -> float:
    """[gamma_{n,k}^-n * p(n, n-k)]^(1/(k(n-k))) / sqrt(n-k); of order one uniformly in n, k."""
    _check_codim(n, k)
    log_value = -n * math.log(gamma_nk(n, k)) + log_p_const(n, n - k)
    return math.exp(log_value / (k * (n - k))) / math.sqrt(n - k)


def general_dovr_formula(n: int, k: int) -> float:
    """sqrt(n/k) * log^(3/2)(e n / k), the bound on d_ovr(K, BP_k^n) up to its absolute constant."""
    _check_codim(n, k)
    return math.sqrt(n / k) * math.log(math.e * n / k) ** 1.5


def sphere_abs_moment(n: int, p: float) -> float:
    """Integral of |x_1|^p over S^(n-1)."""
    log_value = (
        math.log(2.0)
        + 0.5 * (n - 1) * math.log(math.pi)
        + float(gammaln(0.5 * (p + 1.0)))
        - float(gammaln(0.5 * (n + p)))
    )
    return math.exp(log_value)


def _check_codim(n: int, k: int) -> None:
    if not 1 <= k <= n - 1:
        raise ValueError(f"codimension must satisfy 1 <= k <= n-1, got n={n}, k={k}")
