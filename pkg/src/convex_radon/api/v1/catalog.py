from __future__ import annotations

from fastapi import APIRouter

from convex_radon.geometry.catalog import CATALOG
from convex_radon.schemas.config import CHECKERS
from convex_radon.schemas.run import BodyKindRead, CheckerRead

router = APIRouter()


@router.get("/bodies", response_model=list[BodyKindRead])
def list_bodies() -> list[BodyKindRead]:
    """Catalog entries in their shorthand form."""
    return [BodyKindRead(form=form, description=description) for form, description in CATALOG.items()]


@router.get("/checkers", response_model=list[CheckerRead])
def list_checkers() -> list[CheckerRead]:
    """Checker ids usable in a run configuration."""
    return [CheckerRead(check=name, description=description) for name, description in CHECKERS.items()]
