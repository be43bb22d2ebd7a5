from __future__ import annotations

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator


class BoundKind(str, Enum):
    EXACT_ONE = "exact-one"
    LOEWNER_ELLIPSOID = "loewner-ellipsoid"
    JOHN_ELLIPSOID = "john-ellipsoid"
    REGISTERED_FORMULA = "registered-formula"
    USER_SUPPLIED = "user-supplied"


class DistanceBound(BaseModel):
    """Upper bound on a volume-ratio distance with the reason it is valid."""

    model_config = ConfigDict(frozen=True)

    kind: BoundKind = Field(
        ...,
        description="How the bound was obtained.",
        examples=[BoundKind.EXACT_ONE.value, BoundKind.LOEWNER_ELLIPSOID.value],
    )
    value: float | None = Field(
        ...,
        description="Numeric bound (>= 1); None for a formula whose absolute constant is unresolved.",
        examples=[1.0, 1.3962],
    )
    provenance: str = Field(
        ...,
        description="Why the bound holds.",
        examples=["intersection body", "Loewner ellipsoid, gap 1e-7"],
    )
    symbolic: str | None = Field(
        None,
        description="Symbolic form of a registered formula, e.g. 'C*sqrt(n/k)*log(e*n/k)^1.5'.",
    )

    @model_validator(mode="after")
    def _check_value(self) -> DistanceBound:
        if self.kind is BoundKind.REGISTERED_FORMULA:
            return self
        if self.value is None:
            raise ValueError(f"{self.kind.value} bound needs a numeric value")
        if self.value < 1.0 - 1e-12:
            raise ValueError(f"distance bound must be >= 1, got {self.value}")
        if self.kind is BoundKind.EXACT_ONE and self.value != 1.0:
            raise ValueError("exact-one bound must have value 1")
        return self

    @property
    def is_exact(self) -> bool:
        return self.kind is BoundKind.EXACT_ONE

    @classmethod
    def exact_one(cls, provenance: str) -> DistanceBound:
        return cls(kind=BoundKind.EXACT_ONE, value=1.0, provenance=provenance)

    def numeric(self) -> float:
        if self.value is None:
            raise ValueError(f"bound '{self.provenance}' has no numeric value")
        return self.value
