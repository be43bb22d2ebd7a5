import json
from datetime import datetime
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator

from convex_radon.models.run import RunStatus


class RunRead(BaseModel):
    """Schema for reading a stored experiment run."""

    id: int = Field(..., description="Internal identifier of the run.")
    config_digest: str = Field(
        ...,
        description="SHA-256 of the canonical run configuration.",
        examples=["9f2c0d6b8e..."],
        min_length=64,
        max_length=64,
    )
    suite_name: str = Field(..., description="Name of the suite.", examples=["default", "smoke"])
    seed: int = Field(..., description="Root seed of the run.", examples=[20240917])
    chunks: int = Field(1, description="Chunks per estimate.", examples=[1], ge=1)
    workers: int = Field(1, description="Threads used by the run.", examples=[4], ge=1)
    status: str = Field(
        RunStatus.PENDING.value,
        description="Lifecycle status of the run.",
        examples=[RunStatus.FINISHED.value],
    )
    violations: int = Field(0, description="Rows with verdict 'violated'.", examples=[0], ge=0)
    error: str | None = Field(None, description="Error message of a failed run.")
    created_at: datetime = Field(..., description="Timestamp when the run started.")
    updated_at: datetime = Field(..., description="Timestamp of the last status change.")

    model_config = ConfigDict(from_attributes=True)


class ConstantRead(BaseModel):
    symbol: str = Field(..., description="Symbol as it appears in the inequality.", examples=["d_ovr(K,BP_k)"])
    value: float | None = Field(None, description="Numeric value; null for symbolic constants.")
    provenance: str = Field(..., description="Where the value comes from.", examples=["Loewner ellipsoid"])


class ReportRead(BaseModel):
    """Schema for reading one stored report row."""

    id: int = Field(..., description="Internal identifier of the row.")
    run_id: int = Field(..., description="Run the row belongs to.")
    position: int = Field(..., description="Position in config order.", ge=0)
    check_id: str = Field(
        ...,
        description="Suite entry label and inequality.",
        examples=["quotient_holder[0]:quotient-holder"],
    )
    theorem_id: str = Field(..., description="Inequality being checked.", examples=["quotient-holder"])
    body_k: str | None = Field(None, description="Descriptor of K.", examples=["cube(3,1)"])
    body_l: str | None = Field(None, description="Descriptor of L (or D).", examples=["ball(3,1)"])
    n: int | None = Field(None, description="Ambient dimension.", examples=[3])
    k: int | None = Field(None, description="Codimension of the sections.", examples=[1])
    p: float | None = Field(None, description="L_p exponent.", examples=[1.0])
    lhs: float = Field(..., description="Left-hand side.")
    lhs_se: float = Field(0.0, description="Standard error of the left-hand side.", ge=0)
    rhs: float = Field(..., description="Right-hand side.")
    rhs_se: float = Field(0.0, description="Standard error of the right-hand side.", ge=0)
    margin: float | None = Field(None, description="(rhs - lhs) in pooled standard-error units.")
    verdict: str = Field(..., description="Outcome of the comparison.", examples=["holds", "holds-with-bound"])
    constants: list[ConstantRead] = Field(default_factory=list, description="Substituted constants.")
    notes: list[str] = Field(default_factory=list, description="Caveats recorded with the row.")
    seconds: float = Field(0.0, description="Measured wall time of the check.", ge=0)

    model_config = ConfigDict(from_attributes=True)

    @field_validator("constants", "notes", mode="before")
    @classmethod
    def _decode_json(cls, value: Any) -> Any:
        return json.loads(value) if isinstance(value, str) else value


class CheckerRead(BaseModel):
    check: str = Field(..., description="Checker id usable in a suite.", examples=["quotient_main"])
    description: str = Field(..., description="What the checker compares and which fields it needs.")


class BodyKindRead(BaseModel):
    form: str = Field(..., description="Shorthand form of the catalog entry.", examples=["cube(n,a)"])
    description: str = Field(..., description="What the entry builds.", examples=["[-a, a]^n, a zonotope"])
