from __future__ import annotations

import math
from collections.abc import Iterable, Sequence

import numpy as np
from numpy.typing import ArrayLike
from pydantic import BaseModel, ConfigDict, Field


class Estimate(BaseModel):
    """
    Monte Carlo value with its standard error.

    Exact quantities are Estimates with ``std_error == 0`` and ``samples == 0``.
    Arithmetic propagates errors to first order, treating operands as independent.
    """

    model_config = ConfigDict(frozen=True)

    value: float = Field(..., description="Point estimate.", examples=[4.18879])
    std_error: float = Field(
        0.0,
        description="Sample standard deviation divided by sqrt(samples).",
        examples=[0.0031],
        ge=0.0,
    )
    samples: int = Field(0, description="Number of independent samples behind the value.", examples=[100000], ge=0)

    @classmethod
    def exact(cls, value: float) -> Estimate:
        return cls(value=float(value), std_error=0.0, samples=0)

    @classmethod
    def from_samples(cls, values: ArrayLike) -> Estimate:
        """Mean of i.i.d. draws; the standard error uses the unbiased sample variance."""
        data = np.asarray(values, dtype=float).ravel()
        if data.size == 0:
            raise ValueError("cannot build an Estimate from zero samples")
        std_error = float(data.std(ddof=1) / math.sqrt(data.size)) if data.size > 1 else 0.0
        return cls(value=float(data.mean()), std_error=std_error, samples=int(data.size))

    @classmethod
    def pool(cls, estimates: Sequence[Estimate]) -> Estimate:
        """
        Inverse-variance pooling of independent estimates of the same quantity.

        Zero-variance members are exact and take precedence over noisy ones.
        """
        if not estimates:
            raise ValueError("nothing to pool")
        total = sum(e.samples for e in estimates)
        exact = [e for e in estimates if e.std_error == 0.0]
        if exact:
            return cls(value=float(np.mean([e.value for e in exact])), std_error=0.0, samples=total)
        weights = np.array([1.0 / e.std_error**2 for e in estimates])
        values = np.array([e.value for e in estimates])
        return cls(
            value=float(weights @ values / weights.sum()),
            std_error=float(1.0 / math.sqrt(weights.sum())),
            samples=total,
        )

    @property
    def relative_error(self) -> float:
        return self.std_error / abs(self.value) if self.value else math.inf if self.std_error else 0.0

    def within(self, target: float, n_se: float = 3.0, floor: float = 1e-9) -> bool:
        """True when ``target`` lies within ``n_se`` standard errors (plus an absolute floor)."""
        return abs(self.value - target) <= n_se * self.std_error + floor * max(1.0, abs(target))

    def _combine(self, other: Estimate | float, value: float, rel_self: float, rel_other: float) -> Estimate:
        other_samples = other.samples if isinstance(other, Estimate) else 0
        rel = math.hypot(rel_self, rel_other)
        return Estimate(value=value, std_error=abs(value) * rel, samples=max(self.samples, other_samples))

    def __mul__(self, other: Estimate | float) -> Estimate:
        if not isinstance(other, Estimate):
            return Estimate(value=self.value * other, std_error=self.std_error * abs(other), samples=self.samples)
        value = self.value * other.value
        if value == 0.0:
            se = math.hypot(self.std_error * other.value, other.std_error * self.value)
            return Estimate(value=0.0, std_error=se, samples=max(self.samples, other.samples))
        return self._combine(other, value, self.std_error / abs(self.value), other.std_error / abs(other.value))

    __rmul__ = __mul__

    def __truediv__(self, other: Estimate | float) -> Estimate:
        if not isinstance(other, Estimate):
            return self * (1.0 / other)
        if other.value == 0.0:
            raise ZeroDivisionError("division by an Estimate with zero value")
        value = self.value / other.value
        rel_self = self.std_error / abs(self.value) if self.value else 0.0
        if value == 0.0:
            return Estimate(
                value=0.0,
                std_error=self.std_error / abs(other.value),
                samples=max(self.samples, other.samples),
            )
        return self._combine(other, value, rel_self, other.std_error / abs(other.value))

    def __rtruediv__(self, other: float) -> Estimate:
        return Estimate.exact(other) / self

    def __pow__(self, exponent: float) -> Estimate:
        if self.value == 0.0:
            return Estimate(value=0.0, std_error=0.0 if exponent > 1 else self.std_error, samples=self.samples)
        value = abs(self.value) ** exponent
        return Estimate(
            value=value,
            std_error=abs(exponent) * value * self.std_error / abs(self.value),
            samples=self.samples,
        )


def pooled_std_error(*estimates: Estimate | float) -> float:
    """Standard error of a difference/sum of independent estimates."""
    return math.sqrt(sum(e.std_error**2 for e in estimates if isinstance(e, Estimate)))


def as_estimate(value: Estimate | float) -> Estimate:
    return value if isinstance(value, Estimate) else Estimate.exact(float(value))


def total_samples(estimates: Iterable[Estimate]) -> int:
    return sum(e.samples for e in estimates)
