"""Run configurations: a suite of checks with their bodies, densities and Monte Carlo budgets."""

from __future__ import annotations

import hashlib
import json
import re
import tomllib
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from convex_radon.core.errors import ConfigError
from convex_radon.schemas.catalog import BodySpec, DensitySpec, _split_args

CHECKERS: dict[str, str] = {
    "quotient_main": "int_K f / ((int_L g)^((n-k)/n) |K|^(k/n)) against the section quotient (needs K, L, f, g, k)",
    "quotient_holder": "(|K|/|L|)^((n-k)/n) against max |K cap H| / |L cap H| (needs K, L, k)",
    "arb_ovr": "fitted absolute constant of the ovr quotient inequality (needs K, L, f, g, k)",
    "section_lemmas": "Grinberg, Dann-Paouris-Pivovarov and Barany-Furedi (K and/or g on D, k, m)",
    "grinberg": "E_H |K cap H|^n against the volume-one ball, |K| = 1 (needs K, k)",
    "main_proj": "p-projection body comparison, with projection dominance at p = 1 (needs K, L, p)",
    "proj_section_mixed": "(|K|/|D|)^((n-k)/n) against max |K|H| / |D cap H| (needs K, D, k)",
    "applications": "comparison, slicing, mean value, proportional, min-projection, isotropy (K, L, f, g, k)",
    "constants": "closed-form bounds on gamma_{n,k}, c(n,1) and the DPP subspace ratio",
    "volumes": "polar-formula volumes against closed forms (needs bodies)",
    "sections": "Monte Carlo sections against the exact oracle (needs K, k)",
    "blaschke": "both sides of the Blaschke-Petkantschin formula (needs bodies, s)",
    "brunn_suite": "Minkowski, Lutwak and their equality cases, mixed-volume identities, Cauchy vs shadow (pairs)",
}

_ASSIGNMENT = re.compile(r"^\s*([A-Za-z_]+)\s*=\s*(.+?)\s*$", re.DOTALL)
_LIST_FIELDS = {"bodies", "selection", "m"}


def _scalar(raw: str) -> Any:
    text = raw.strip()
    if text.startswith("[") and text.endswith("]"):
        return [_scalar(part) for part in _split_args(text[1:-1])]
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def parse_check_shorthand(text: str) -> dict[str, Any]:
    """'quotient_holder: K=ball(3), L=ball(3), k=1' -> {'check': 'quotient_holder', 'K': 'ball(3)', ...}."""
    name, _, arguments = text.partition(":")
    values: dict[str, Any] = {"check": name.strip()}
    free_text = []
    for part in _split_args(arguments):
        match = _ASSIGNMENT.match(part)
        if match is None:
            if "=" in part:
                raise ValueError(f"cannot parse '{part}': expected key=value")
            free_text.append(part.strip())
            continue
        key, raw = match.groups()
        values[key] = _scalar(raw)
    for key in _LIST_FIELDS & values.keys():
        if not isinstance(values[key], list):
            values[key] = [values[key]]
    if free_text:
        values.setdefault("description", ", ".join(free_text))
    return values


class CheckSpec(BaseModel):
    """One row-producing entry of a suite."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    check: str = Field(..., description="Checker id.", examples=["quotient_main", "brunn_suite"])
    id: str | None = Field(None, description="Row label; defaults to check#position.", examples=["holder-ball-3"])
    description: str | None = Field(None, description="Free text kept with the rows.", examples=["gamma bounds n<=64"])
    K: BodySpec | None = Field(None, description="First body.", examples=["cube(3,1)"])
    L: BodySpec | None = Field(None, description="Second body.", examples=["ball(3,1)"])
    D: BodySpec | None = Field(None, description="Support body of g, or the compact set of mixed checks.")
    f: DensitySpec = Field(default_factory=DensitySpec, description="Numerator density.", examples=["gaussian(1)"])
    g: DensitySpec = Field(default_factory=DensitySpec, description="Denominator density, g(0) = sup g = 1.")
    bodies: list[BodySpec] = Field(default_factory=list, description="Bodies of the volumes / blaschke checks.")
    k: int | None = Field(None, description="Codimension of the sections.", examples=[1], ge=1)
    p: float | None = Field(None, description="Exponent of p-projection bodies.", examples=[1.0], ge=1.0)
    s: int | None = Field(None, description="Number of points in Blaschke-Petkantschin.", examples=[1], ge=1)
    m: list[int] = Field(default_factory=list, description="Hull dimensions of the Barany-Furedi envelope.")
    selection: list[str] = Field(default_factory=list, description="Applications to run; empty means all.")
    samples: int | None = Field(None, description="Monte Carlo budget per estimate.", examples=[100000], gt=0)
    net_size: int = Field(16, description="Haar-random elements M of subspace nets.", ge=0)
    refine_steps: int = Field(0, description="Local refinement steps around the net maximizer.", ge=0)
    trials: int | None = Field(None, description="Random subspaces or hulls.", examples=[500], gt=0)
    hull_trials: int | None = Field(None, description="Hulls per Barany-Furedi configuration.", gt=0)
    pairs: int = Field(200, description="Random polytope pairs of the mixed-volume suite.", gt=0)
    c_budget: float | None = Field(None, description="Regression budget for unspecified constants.", gt=0)
    n_se: float = Field(3.0, description="Standard errors a violation must exceed.", gt=0)
    seed: int | None = Field(None, description="Seed overriding the run seed for this check.", ge=0)

    @model_validator(mode="before")
    @classmethod
    def _from_shorthand(cls, data: Any) -> Any:
        if isinstance(data, str):
            return parse_check_shorthand(data)
        return data

    @field_validator("check")
    @classmethod
    def _known_check(cls, value: str) -> str:
        name = value.strip().replace("-", "_")
        if name not in CHECKERS:
            raise ValueError(f"unknown checker '{value}'; expected one of {sorted(CHECKERS)}")
        return name

    @model_validator(mode="after")
    def _check_dimensions(self) -> CheckSpec:
        dims = {role: spec.dim for role, spec in (("K", self.K), ("L", self.L), ("D", self.D)) if spec is not None}
        if len(set(dims.values())) > 1:
            raise ValueError(f"bodies live in different dimensions: {dims}")
        if self.k is not None and dims:
            n = next(iter(dims.values()))
            if not 0 < self.k < n:
                raise ValueError(f"k must satisfy 0 < k < n = {n}, got k = {self.k}")
        return self

    @property
    def dim(self) -> int | None:
        for spec in (self.K, self.L, self.D):
            if spec is not None:
                return spec.dim
        return None


class RunConfig(BaseModel):
    """A reproducible experiment: identical configs give byte-identical report files."""

    model_config = ConfigDict(frozen=True)

    name: str = Field("run", description="Suite name stored with the run.", examples=["default"])
    seed: int | None = Field(None, description="Root seed; defaults to CONVEX_RADON_DEFAULT_SEED.", ge=0)
    samples: int | None = Field(None, description="Default Monte Carlo budget.", examples=[100000], gt=0)
    workers: int = Field(1, description="Threads for checks and estimator chunks.", ge=1)
    chunks: int = Field(1, description="Independently seeded chunks per estimate.", ge=1)
    format: Literal["csv", "json"] = Field("csv", description="Report encoding.")
    output: str | None = Field(None, description="Report path; stdout when absent.", examples=["reports/run.csv"])
    record_timing: bool = Field(False, description="Write measured seconds instead of 0.")
    suite: list[CheckSpec] = Field(..., description="Checks in report order.", min_length=1)

    def digest(self) -> str:
        """SHA-256 of the canonical JSON form."""
        canonical = json.dumps(self.model_dump(mode="json"), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode()).hexdigest()


def _field_path(location: tuple[int | str, ...]) -> str:
    path = ""
    for part in location:
        if isinstance(part, int):
            path += f"[{part}]"
        elif part in ("function-before", "function-after") or "[" in str(part):
            continue
        else:
            path += f".{part}" if path else str(part)
    return path or "<root>"


def config_error(exc: ValidationError, source: str = "config") -> ConfigError:
    """One line per pydantic error, each naming its field path."""
    lines = [f"{_field_path(tuple(error['loc']))}: {error['msg']}" for error in exc.errors()]
    return ConfigError(f"invalid {source}:\n  " + "\n  ".join(lines))


def parse_run_config(data: dict[str, Any], source: str = "config") -> RunConfig:
    try:
        return RunConfig.model_validate(data)
    except ValidationError as exc:
        raise config_error(exc, source) from exc


def load_run_config(path: str | Path) -> RunConfig:
    """Read and validate a TOML run configuration."""
    location = Path(path)
    try:
        data = tomllib.loads(location.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read {location}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{location}: {exc}") from exc
    return parse_run_config(data, str(location))
