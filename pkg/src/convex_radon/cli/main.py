"""
Command-line entry point.

    convex-radon run <config.toml | default | smoke> [--seed S] [--samples N] [--workers W]
                     [--format csv|json] [--out PATH] [--db URL | --store] [--timing]
    convex-radon list-checkers
    convex-radon list-bodies
    convex-radon serve [--host H] [--port P]

Exit status: 0 when nothing is violated, 1 when a row is violated, 2 on invalid input.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence

from convex_radon.cli.runner import apply_overrides, execute, fail_run, finish_run, start_run
from convex_radon.cli.suites import SUITES
from convex_radon.cli.writers import render, write_report
from convex_radon.core.errors import ConvexRadonError
from convex_radon.core.logging import configure_logging
from convex_radon.core.settings import get_settings
from convex_radon.db.init_db import init_db
from convex_radon.db.session import make_engine, make_session_factory
from convex_radon.geometry.catalog import BODY_SUFFIXES, CATALOG
from convex_radon.schemas.config import CHECKERS, RunConfig, load_run_config

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATED = 1
EXIT_INVALID = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="convex-radon",
        description="Monte Carlo checks of section and projection inequalities on a catalog of bodies.",
    )
    parser.add_argument("--log-level", default=None, help="Log level (default: CONVEX_RADON_LOG_LEVEL or INFO).")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="Run a suite and write its report.")
    run.add_argument("config", help=f"TOML run configuration, or a built-in suite: {', '.join(SUITES)}.")
    run.add_argument("--seed", type=int, default=None, help="Root seed (overrides the config).")
    run.add_argument("--samples", type=int, default=None, help="Default Monte Carlo budget per estimate.")
    run.add_argument("--workers", type=int, default=None, help="Threads for checks and estimator chunks.")
    run.add_argument("--format", choices=["csv", "json"], default=None, dest="fmt", help="Report encoding.")
    run.add_argument("--out", default=None, help="Report path (default: the config's output, else stdout).")
    store = run.add_mutually_exclusive_group()
    store.add_argument("--db", default=None, help="SQLAlchemy URL to store the run in.")
    store.add_argument("--store", action="store_true", help="Store the run in CONVEX_RADON_DATABASE_URL.")
    run.add_argument("--timing", action="store_true", default=None, help="Write measured seconds instead of 0.")

    commands.add_parser("list-checkers", help="Print the checker ids usable in a suite.")
    commands.add_parser("list-bodies", help="Print the body catalog.")

    serve = commands.add_parser("serve", help="Serve stored runs over HTTP.")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def load_config(source: str) -> RunConfig:
    if source in SUITES:
        return SUITES[source]()
    return load_run_config(source)


def _store_url(args: argparse.Namespace) -> str | None:
    if args.db:
        return str(args.db)
    if args.store:
        return get_settings().database_url
    return None


def command_run(args: argparse.Namespace) -> int:
    config = apply_overrides(
        load_config(args.config),
        seed=args.seed,
        samples=args.samples,
        workers=args.workers,
        fmt=args.fmt,
        output=args.out,
        record_timing=args.timing,
    )
    url = _store_url(args)
    if url is None:
        result = execute(config)
    else:
        engine = make_engine(url)
        init_db(engine)
        with make_session_factory(engine)() as db:
            run = start_run(db, config)
            try:
                result = execute(config)
            except Exception as exc:
                fail_run(db, run, exc)
                raise
            finish_run(db, run, result)
            logger.info("run stored as id %d in %s", run.id, url)

    if config.output:
        write_report(result.rows, config.format, config.output)
    else:
        sys.stdout.write(render(result.rows, config.format))
    if result.violations:
        logger.warning("%d of %d rows violated", result.violations, len(result.rows))
        return EXIT_VIOLATED
    return EXIT_OK


def command_list_checkers() -> int:
    width = max(map(len, CHECKERS))
    for name, description in CHECKERS.items():
        print(f"{name:<{width}}  {description}")
    return EXIT_OK


def command_list_bodies() -> int:
    width = max(map(len, CATALOG))
    for form, description in CATALOG.items():
        print(f"{form:<{width}}  {description}")
    print(f"\nsuffixes: {BODY_SUFFIXES}")
    return EXIT_OK


def command_serve(args: argparse.Namespace) -> int:
    import uvicorn

    init_db()
    uvicorn.run("convex_radon.main:app", host=args.host, port=args.port)
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    try:
        match args.command:
            case "run":
                return command_run(args)
            case "list-checkers":
                return command_list_checkers()
            case "list-bodies":
                return command_list_bodies()
            case _:
                return command_serve(args)
    except (ConvexRadonError, ValueError) as exc:
        logger.error("%s", exc)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
