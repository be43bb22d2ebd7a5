import logging

import pytest
from hypothesis import settings

from convex_radon.core.settings import get_settings
from convex_radon.db.init_db import init_db
from convex_radon.db.session import make_engine, make_session_factory
from convex_radon.geometry.radon import Partition
from convex_radon.geometry.sampling import RngStream
from convex_radon.harness.registry import CheckContext

settings.register_profile("ci", max_examples=25, deadline=None)
settings.load_profile("ci")


@pytest.fixture
def rng() -> RngStream:
    return RngStream(seed=12345)


@pytest.fixture
def ctx(rng: RngStream) -> CheckContext:
    return CheckContext(rng=rng, samples=20_000, partition=Partition())


@pytest.fixture(autouse=True)
def _fresh_settings(monkeypatch: pytest.MonkeyPatch):
    monkeypatch.delenv("CONVEX_RADON_DATABASE_URL", raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture(autouse=True)
def _detached_log_handlers():
    """The CLI attaches a stream handler bound to the stream captured by the current test."""
    logger = logging.getLogger("convex_radon")
    before = list(logger.handlers)
    yield
    for handler in logger.handlers[len(before) :]:
        logger.removeHandler(handler)


@pytest.fixture
def session():
    engine = make_engine("sqlite://")
    init_db(engine)
    with make_session_factory(engine)() as db:
        yield db
    engine.dispose()
