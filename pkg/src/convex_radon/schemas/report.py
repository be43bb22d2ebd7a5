from __future__ import annotations

import math
from enum import Enum
from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from convex_radon.schemas.bounds import DistanceBound
from convex_radon.schemas.estimate import Estimate, as_estimate, pooled_std_error


class Verdict(str, Enum):
    HOLDS = "holds"
    HOLDS_WITH_BOUND = "holds-with-bound"
    VIOLATED = "violated"
    INCONCLUSIVE = "inconclusive"


class Relation(str, Enum):
    LESS_EQUAL = "<="
    IDENTITY = "=="


class ConstantUsed(BaseModel):
    """A constant substituted into a checked inequality, with its source."""

    model_config = ConfigDict(frozen=True)

    symbol: str = Field(..., description="Symbol as it appears in the inequality.", examples=["d_ovr", "C_budget"])
    value: float | None = Field(..., description="Numeric value; None for symbolic constants.", examples=[1.3962])
    provenance: str = Field(
        ...,
        description="Where the value comes from.",
        examples=["Loewner ellipsoid", "regression budget, not a proved constant"],
    )

    @classmethod
    def from_bound(cls, symbol: str, bound: DistanceBound) -> ConstantUsed:
        provenance = f"{bound.kind.value}: {bound.provenance}"
        if bound.symbolic:
            provenance += f" [{bound.symbolic}]"
        return cls(symbol=symbol, value=bound.value, provenance=provenance)


class InequalityReport(BaseModel):
    """Outcome of checking one inequality instance: both sides, constants and a verdict."""

    model_config = ConfigDict(frozen=True)

    theorem_id: str = Field(..., description="Inequality being checked.", examples=["quotient-main", "grinberg"])
    lhs: Estimate = Field(..., description="Left-hand side.")
    rhs: Estimate = Field(..., description="Right-hand side.")
    relation: Relation = Field(Relation.LESS_EQUAL, description="Predicted relation between the sides.")
    constants_used: list[ConstantUsed] = Field(default_factory=list, description="Substituted constants.")
    margin: float | None = Field(
        ...,
        description="(rhs - lhs) in pooled standard-error units; None when both sides are exact.",
    )
    verdict: Verdict = Field(..., description="Outcome of the comparison.")
    notes: list[str] = Field(default_factory=list, description="Caveats, e.g. net maxima understate the supremum.")
    bodies: dict[str, str] = Field(default_factory=dict, description="Body descriptors by role (K, L, D).")
    n: int | None = Field(None, description="Ambient dimension.")
    k: int | None = Field(None, description="Codimension of the sections, when relevant.")
    p: float | None = Field(None, description="L_p exponent, when relevant.")
    seed: int | None = Field(None, description="Root seed of the run that produced the report.")
    seconds: float = Field(0.0, description="Wall time of the check, when recorded.")

    @classmethod
    def compare(
        cls,
        theorem_id: str,
        lhs: Estimate | float,
        rhs: Estimate | float,
        *,
        relation: Relation = Relation.LESS_EQUAL,
        bounds_substituted: bool = False,
        n_se: float = 3.0,
        abs_tol: float = 1e-9,
        **fields: Any,
    ) -> InequalityReport:
        """
        Decide the verdict.

        violated      lhs - rhs exceeds n_se pooled standard errors (plus a relative floor);
        inconclusive  a statistical tie (|lhs - rhs| within n_se SE with SE > 0) on an inequality;
        holds         otherwise, or holds-with-bound when a non-exact distance bound was substituted.
        Deterministic ties (both sides exact) count as equality cases and hold.
        """
        left, right = as_estimate(lhs), as_estimate(rhs)
        se = pooled_std_error(left, right)
        diff = left.value - right.value
        floor = abs_tol * max(1.0, abs(left.value), abs(right.value))
        if se <= floor:
            # rounding noise of exact quantities
            se = 0.0
        tolerance = n_se * se + floor
        margin = (right.value - left.value) / se if se > 0.0 else None

        finite = math.isfinite(left.value) and math.isfinite(right.value)
        if not finite:
            verdict = Verdict.INCONCLUSIVE
        elif relation is Relation.IDENTITY:
            verdict = Verdict.HOLDS if abs(diff) <= tolerance else Verdict.VIOLATED
        elif diff > tolerance:
            verdict = Verdict.VIOLATED
        elif se > 0.0 and abs(diff) <= n_se * se:
            verdict = Verdict.INCONCLUSIVE
        else:
            verdict = Verdict.HOLDS
        if verdict is Verdict.HOLDS and bounds_substituted:
            verdict = Verdict.HOLDS_WITH_BOUND
        return cls(
            theorem_id=theorem_id,
            lhs=left,
            rhs=right,
            relation=relation,
            margin=margin,
            verdict=verdict,
            **fields,
        )

    @property
    def passed(self) -> bool:
        return self.verdict in (Verdict.HOLDS, Verdict.HOLDS_WITH_BOUND)
