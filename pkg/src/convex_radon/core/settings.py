from __future__ import annotations

import os
from functools import lru_cache

from pydantic import BaseModel, Field

ENV_PREFIX = "CONVEX_RADON_"


class Settings(BaseModel):
    """Process-level settings, read from ``CONVEX_RADON_*`` environment variables."""

    database_url: str = Field(
        "sqlite:///./convex_radon.db",
        description="SQLAlchemy URL of the report store.",
        examples=["sqlite:///./convex_radon.db", "sqlite:///:memory:"],
    )
    log_level: str = Field(
        "INFO",
        description="Root log level for the convex_radon logger.",
        examples=["INFO", "DEBUG"],
    )
    default_seed: int = Field(
        20240917,
        description="Seed used when neither the config nor the CLI provides one.",
        ge=0,
    )
    default_samples: int = Field(
        100_000,
        description="Monte Carlo sample budget used when a check does not set one.",
        gt=0,
    )


@lru_cache
def get_settings() -> Settings:
    """Build settings from the environment once per process."""
    values = {
        name: os.environ[ENV_PREFIX + name.upper()]
        for name in Settings.model_fields
        if ENV_PREFIX + name.upper() in os.environ
    }
    return Settings.model_validate(values)
