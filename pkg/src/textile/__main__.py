"""
Main entry point for the textile command line.

Run with:  python -m textile <command> ...   (or the `textile` script)
"""

import logging
import sys

from textile.config import settings


def setup_logging(level: str | None = None) -> None:
    """Configure structured logging on stderr."""
    name = (level or settings.log_level).upper()
    logging.basicConfig(
        level=getattr(logging, name, logging.WARNING),
        format="%(asctime)s | %(levelname)-8s | %(name)s | %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
        stream=sys.stderr,
    )


def main(argv: list[str] | None = None) -> int:
    from textile.adapters.cli.app import build_parser, dispatch

    args = build_parser().parse_args(argv)
    setup_logging(args.log_level)
    logging.getLogger(__name__).debug("Running %s", args.command)
    return dispatch(args)


if __name__ == "__main__":
    sys.exit(main())
