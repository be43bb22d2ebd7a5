"""Built-in suites, usable by name wherever a config path is expected."""

from __future__ import annotations

from collections.abc import Callable, Iterator
from typing import Any

from convex_radon.schemas.config import RunConfig, parse_run_config

SUITE_DIMS = (2, 3, 4, 5)
SUITE_CODIMS = (1, 2)
SUITE_PS = (1.0, 2.0)

# (K, L, f, g) per dimension; "{n}" is filled in
QUOTIENT_MAIN_PAIRS = (
    ("cube({n},1)", "ball({n},1)", "constant(1)", "constant(1)"),
    ("ball({n},1)", "cube({n},1)", "gaussian(1)", "constant(1)"),
    ("lp_ball({n},1)", "ball({n},1)", "constant(1)", "gaussian(1)"),
    ("ball({n},1)", "ball({n},1)", "constant(1)", "constant(1)"),
    ("cube({n},1)", "lp_ball({n},1.5)", "gaussian(1)", "gaussian(1)"),
)
QUOTIENT_HOLDER_PAIRS = (
    ("cube({n},1)", "ball({n},1)"),
    ("ball({n},1)", "ball({n},1)"),
    ("lp_ball({n},1)", "cube({n},1)"),
)
ARB_OVR_PAIRS = (
    ("cube({n},1)", "ball({n},1)", "gaussian(1)", "constant(1)"),
    ("ball({n},1)", "ball({n},1)", "constant(1)", "constant(1)"),
)
MAIN_PROJ_PAIRS = (
    ("cube({n},1)", "cube({n},1)", (1.0,)),
    ("ball({n},1)", "ball({n},1)", SUITE_PS),
    ("cube({n},1)", "ball({n},1)", SUITE_PS),
    ("lp_ball({n},1)", "ball({n},1)", SUITE_PS),
)
# (K, L, f): the mean-value pairs, with L the min-projection body
APPLICATION_BODIES = (
    ("cube({n},1)", "cube({n},1)", "gaussian(1)"),
    ("ball({n},1)", "ball({n},1)", "gaussian(1)"),
    ("lp_ball({n},1)", "lp_ball({n},1)", "constant(1)"),
)
SECTION_ONLY = ["comparison", "slicing", "mean-value", "proportional"]


def _codims(n: int) -> Iterator[int]:
    return (k for k in SUITE_CODIMS if k < n)


def _quotient_entries() -> Iterator[dict[str, Any]]:
    for n in SUITE_DIMS:
        for k in _codims(n):
            for K, L, f, g in QUOTIENT_MAIN_PAIRS:
                yield {"check": "quotient_main", "K": K.format(n=n), "L": L.format(n=n), "f": f, "g": g, "k": k}
            for K, L in QUOTIENT_HOLDER_PAIRS:
                yield {"check": "quotient_holder", "K": K.format(n=n), "L": L.format(n=n), "k": k}
            for K, L, f, g in ARB_OVR_PAIRS:
                yield {"check": "arb_ovr", "K": K.format(n=n), "L": L.format(n=n), "f": f, "g": g, "k": k}


def _section_entries() -> Iterator[dict[str, Any]]:
    for n in (3, 4, 5):
        for body in ("cube({n},1)@vol=1", "lp_ball({n},1)@vol=1", "ball({n},1)@vol=1"):
            yield {"check": "grinberg", "K": body.format(n=n), "k": 1, "trials": 500}
        for k in SUITE_CODIMS:
            indicator = f"indicator(ball({n},1))"
            yield {"check": "section_lemmas", "D": f"ball({n},1)", "g": indicator, "k": k, "trials": 200}
            yield {"check": "section_lemmas", "D": f"ball({n},6)", "g": "gaussian(1)", "k": k, "trials": 200}
    yield {"check": "section_lemmas", "m": [2, 3, 4, 5, 6]}


def _projection_entries() -> Iterator[dict[str, Any]]:
    for n in (3, 4, 5):
        for K, L, ps in MAIN_PROJ_PAIRS:
            for p in ps:
                yield {"check": "main_proj", "K": K.format(n=n), "L": L.format(n=n), "p": p}
        for k in _codims(n):
            yield {"check": "proj_section_mixed", "K": f"cube({n},1)", "D": f"ball({n},1)", "k": k}
            yield {"check": "proj_section_mixed", "K": f"ball({n},1)", "D": f"ball({n},1)", "k": k}
    yield {"check": "brunn_suite", "pairs": 200}


def _application_entries() -> Iterator[dict[str, Any]]:
    for n in (3, 4, 5):
        for K, L, f in APPLICATION_BODIES:
            for k in _codims(n):
                entry = {"check": "applications", "K": K.format(n=n), "L": L.format(n=n), "f": f, "k": k}
                if k > 1:
                    entry["selection"] = SECTION_ONLY
                yield entry
    yield {"check": "applications", "K": "cube(3,1)@vol=1", "k": 1, "selection": ["isotropy"], "samples": 1_000_000}


def _bundled_entries() -> Iterator[dict[str, Any]]:
    yield {"check": "constants"}
    bodies = [f"{kind}({n},1)" for n in range(2, 9) for kind in ("ball", "cube", "lp_ball")]
    yield {"check": "volumes", "bodies": bodies}
    for n in range(3, 7):
        for k in SUITE_CODIMS:
            yield {"check": "sections", "K": f"ball({n},1)", "k": k, "trials": 20}
    yield {"check": "sections", "K": "cube(3,1)", "k": 1, "trials": 5}
    yield {"check": "blaschke", "bodies": ["ball(2,1)", "ball(3,1)", "cube(2,1)"], "s": 1}


def default_suite() -> RunConfig:
    """Every checker on the canonical catalog at n in 2..5, k in {1, 2}, p in {1, 2}, 10^5 samples."""
    suite = [
        *_bundled_entries(),
        *_quotient_entries(),
        *_section_entries(),
        *_projection_entries(),
        *_application_entries(),
    ]
    return parse_run_config({"name": "default", "samples": 100_000, "suite": suite}, "default")


def smoke_suite() -> RunConfig:
    suite = [
        "constants",
        "volumes: bodies=[ball(3,1), cube(3,1)]",
        "sections: K=ball(3,1), k=1, trials=5",
        "blaschke: bodies=[ball(2,1)], s=1",
        "quotient_holder: K=ball(3,1), L=ball(3,1), k=1",
        "quotient_main: K=cube(3,1), L=ball(3,1), f=gaussian(1), k=1, net_size=4",
        "main_proj: K=cube(3,1), L=cube(3,1), p=1",
        "brunn_suite: pairs=20",
    ]
    return parse_run_config({"name": "smoke", "samples": 20_000, "suite": suite}, "smoke")


SUITES: dict[str, Callable[[], RunConfig]] = {
    "default": default_suite,
    "smoke": smoke_suite,
}
