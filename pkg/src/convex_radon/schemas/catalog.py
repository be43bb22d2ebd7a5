from __future__ import annotations

import json
import math
import re
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

BodyKind = Literal["ball", "cube", "lp_ball", "simplex", "ellipsoid", "random_polytope"]
DensityKind = Literal["constant", "gaussian", "half_space", "radial_power", "coordinate_power", "indicator"]

_CALL = re.compile(r"^\s*([a-z_]+)\s*\((.*)\)\s*$", re.DOTALL)

# positional argument names of the shorthand forms
_BODY_ARGS: dict[str, tuple[str, ...]] = {
    "ball": ("n", "r"),
    "cube": ("n", "a"),
    "lp_ball": ("n", "p"),
    "simplex": ("n",),
    "ellipsoid": ("matrix",),
    "random_polytope": ("n", "count", "seed"),
}
_DENSITY_ARGS: dict[str, tuple[str, ...]] = {
    "constant": ("value",),
    "gaussian": ("scale",),
    "radial_power": ("exponent",),
    "coordinate_power": ("axis", "exponent"),
}


def format_number(value: float) -> str:
    """Shortest text that reads back to the same float: 3, 1.5, inf."""
    number = float(value)
    if math.isinf(number):
        return "inf" if number > 0 else "-inf"
    if number.is_integer() and abs(number) < 1e15:
        return str(int(number))
    return repr(number)


def _split_call(text: str) -> tuple[str, str]:
    match = _CALL.match(text)
    if match is None:
        raise ValueError(f"cannot parse '{text}': expected name(arguments)")
    return match.group(1), match.group(2)


def _split_args(arguments: str) -> list[str]:
    """Split on top-level commas only, so nested brackets and calls stay intact."""
    parts, depth, current = [], 0, []
    for char in arguments:
        if char in "([":
            depth += 1
        elif char in ")]":
            depth -= 1
        if char == "," and depth == 0:
            parts.append("".join(current).strip())
            current = []
        else:
            current.append(char)
    tail = "".join(current).strip()
    if tail:
        parts.append(tail)
    return parts


def parse_body_shorthand(text: str) -> dict[str, Any]:
    """'cube(3,1)@vol=1' -> {'kind': 'cube', 'n': 3, 'a': 1.0, 'volume': 1.0}."""
    head, *suffixes = text.split("@")
    kind, arguments = _split_call(head)
    if kind not in _BODY_ARGS:
        raise ValueError(f"unknown body '{kind}'; expected one of {sorted(_BODY_ARGS)}")
    values: dict[str, Any] = {"kind": kind}
    if kind == "ellipsoid":
        values["matrix"] = json.loads(arguments)
    else:
        args = _split_args(arguments)
        names = _BODY_ARGS[kind]
        if len(args) > len(names):
            raise ValueError(f"{kind} takes at most {len(names)} arguments, got {len(args)}")
        values.update(zip(names, args, strict=False))
    for suffix in suffixes:
        key, _, raw = suffix.partition("=")
        key = key.strip()
        if key == "vol":
            values["volume"] = raw
        elif key == "scale":
            values["scale"] = raw
        else:
            raise ValueError(f"unknown body suffix '@{key}'")
    return values


class BodySpec(BaseModel):
    """Catalog descriptor of a body; accepts a table or the shorthand string."""

    model_config = ConfigDict(frozen=True)

    kind: BodyKind = Field(..., description="Catalog family.", examples=["cube", "lp_ball"])
    n: int | None = Field(None, description="Ambient dimension.", examples=[3], ge=1)
    r: float = Field(1.0, description="Radius of a ball or l_p ball.", examples=[1.0], gt=0)
    a: float = Field(1.0, description="Half-width of a cube.", examples=[1.0], gt=0)
    p: float | None = Field(None, description="Exponent of an l_p ball, in (0, inf].", examples=[1.5], gt=0)
    matrix: list[list[float]] | None = Field(None, description="SPD shape matrix of an ellipsoid.")
    count: int | None = Field(None, description="Sphere points of a random polytope (before +-).", ge=1)
    seed: int | None = Field(None, description="Seed of a random polytope.", ge=0)
    volume: float | None = Field(None, description="Rescale the body to this volume.", examples=[1.0], gt=0)
    scale: float | None = Field(None, description="Dilate the body by this factor.", examples=[1.5], gt=0)

    @model_validator(mode="before")
    @classmethod
    def _from_shorthand(cls, data: Any) -> Any:
        if isinstance(data, str):
            return parse_body_shorthand(data)
        return data

    @model_validator(mode="after")
    def _check_arguments(self) -> BodySpec:
        if self.kind == "ellipsoid":
            if not self.matrix:
                raise ValueError("ellipsoid needs a shape matrix")
            if any(len(row) != len(self.matrix) for row in self.matrix):
                raise ValueError("ellipsoid shape matrix must be square")
            if self.n is not None and self.n != len(self.matrix):
                raise ValueError(f"n={self.n} does not match a {len(self.matrix)}x{len(self.matrix)} matrix")
            return self
        if self.n is None:
            raise ValueError(f"{self.kind} needs a dimension n")
        if self.kind == "lp_ball" and self.p is None:
            raise ValueError("lp_ball needs an exponent p")
        if self.kind == "random_polytope" and (self.count is None or self.seed is None):
            raise ValueError("random_polytope needs count and seed")
        if self.volume is not None and self.scale is not None:
            raise ValueError("give at most one of volume and scale")
        return self

    @property
    def dim(self) -> int:
        return len(self.matrix) if self.kind == "ellipsoid" and self.matrix else int(self.n or 0)

    @property
    def label(self) -> str:
        """Canonical shorthand; parsing it gives back an equal spec."""
        match self.kind:
            case "ball":
                core = f"ball({self.n},{format_number(self.r)})"
            case "cube":
                core = f"cube({self.n},{format_number(self.a)})"
            case "lp_ball":
                core = f"lp_ball({self.n},{format_number(self.p or 0.0)})"
            case "simplex":
                core = f"simplex({self.n})"
            case "ellipsoid":
                rows = ",".join("[" + ",".join(format_number(v) for v in row) + "]" for row in self.matrix or [])
                core = f"ellipsoid([{rows}])"
            case _:
                core = f"random_polytope({self.n},{self.count},{self.seed})"
        if self.volume is not None:
            core += f"@vol={format_number(self.volume)}"
        if self.scale is not None:
            core += f"@scale={format_number(self.scale)}"
        return core


def parse_density_shorthand(text: str) -> dict[str, Any]:
    kind, arguments = _split_call(text)
    values: dict[str, Any] = {"kind": kind}
    if kind == "half_space":
        values["normal"] = _split_args(arguments)
    elif kind == "indicator":
        values["body"] = arguments.strip()
    elif kind in _DENSITY_ARGS:
        values.update(zip(_DENSITY_ARGS[kind], _split_args(arguments), strict=False))
    else:
        raise ValueError(f"unknown density '{kind}'")
    return values


class DensitySpec(BaseModel):
    """Descriptor of a density f or g."""

    model_config = ConfigDict(frozen=True)

    kind: DensityKind = Field("constant", description="Density family.", examples=["gaussian", "constant"])
    value: float = Field(1.0, description="Height of constant and half-space densities.", gt=0)
    scale: float = Field(1.0, description="Length scale of the Gaussian exp(-|x|^2/scale^2).", gt=0)
    normal: list[float] | None = Field(None, description="Normal of the half-space indicator.")
    exponent: float = Field(2.0, description="Power of radial / coordinate densities.", ge=0)
    axis: int = Field(0, description="Coordinate of a coordinate-power density.", ge=0)
    body: BodySpec | None = Field(None, description="Body whose indicator is the density.")

    @model_validator(mode="before")
    @classmethod
    def _from_shorthand(cls, data: Any) -> Any:
        if isinstance(data, str):
            return parse_density_shorthand(data)
        return data

    @model_validator(mode="after")
    def _check_arguments(self) -> DensitySpec:
        if self.kind == "half_space" and not self.normal:
            raise ValueError("half_space density needs a normal")
        if self.kind == "indicator" and self.body is None:
            raise ValueError("indicator density needs a body")
        return self

    @property
    def label(self) -> str:
        match self.kind:
            case "constant":
                return f"constant({format_number(self.value)})"
            case "gaussian":
                return f"gaussian({format_number(self.scale)})"
            case "half_space":
                return "half_space(" + ",".join(format_number(c) for c in self.normal or []) + ")"
            case "radial_power":
                return f"radial_power({format_number(self.exponent)})"
            case "coordinate_power":
                return f"coordinate_power({self.axis},{format_number(self.exponent)})"
            case _:
                return f"indicator({self.body.label if self.body else ''})"
