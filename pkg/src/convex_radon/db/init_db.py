from __future__ import annotations

from sqlalchemy import Engine

# Import models so they are registered with Base.metadata
import convex_radon.models  # noqa: F401
from convex_radon.db.base import Base
from convex_radon.db.session import engine as default_engine


def init_db(engine: Engine | None = None) -> None:
    """Create the run and report tables if they do not exist."""
    Base.metadata.create_all(bind=engine or default_engine)


if __name__ == "__main__":
    init_db()
