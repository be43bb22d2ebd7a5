from __future__ import annotations

import logging

from convex_radon.core.settings import get_settings

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(level: str | None = None) -> None:
    """Attach a single stream handler to the package logger."""
    root = logging.getLogger("convex_radon")
    root.setLevel((level or get_settings().log_level).upper())
    if not any(getattr(handler, "_convex_radon", False) for handler in root.handlers):
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._convex_radon = True  # type: ignore[attr-defined]
        root.addHandler(handler)
