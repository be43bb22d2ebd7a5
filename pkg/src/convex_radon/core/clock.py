from __future__ import annotations

import time
from datetime import datetime, timezone


def create_timestamp() -> datetime:
    """Get the current UTC timestamp."""
    return datetime.now(timezone.utc)


class Stopwatch:
    """Wall-clock timer used for the ``seconds`` column of report rows."""

    def __init__(self) -> None:
        self._start = time.perf_counter()

    def elapsed(self) -> float:
        return time.perf_counter() - self._start
