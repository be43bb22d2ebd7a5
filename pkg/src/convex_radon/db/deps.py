from __future__ import annotations

from collections.abc import Generator

from sqlalchemy.orm import Session

from convex_radon.db.session import SessionLocal


def get_db() -> Generator[Session, None, None]:
    """Yield a session on the run store for the report endpoints; closed after the request."""
    db = SessionLocal()
    try:
        yield db
    finally:
        db.close()
