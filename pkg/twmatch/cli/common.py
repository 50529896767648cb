"""Flags and setup shared by the subcommands."""

import argparse
import logging
import os

from ..core.errors import ParameterError

EXIT_YES = 0
EXIT_NO = 1
EXIT_ERROR = 2


def add_log_level(parser: argparse.ArgumentParser, default: str = "WARNING") -> None:
    """Add --log-level; TWMATCH_LOG_LEVEL overrides the default."""
    default = os.environ.get("TWMATCH_LOG_LEVEL", default).upper()
    parser.add_argument(
        "--log-level",
        type=str.upper,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        default=default,
        help=f"Logging level, logs go to stderr (default: {default})",
    )


def configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level),
        format="%(asctime)s - %(levelname)s - %(message)s",
        force=True,
    )


def default_threads(fallback: int) -> int:
    """Thread count from TWMATCH_THREADS, else fallback."""
    raw = os.environ.get("TWMATCH_THREADS")
    if raw is None:
        return fallback
    try:
        threads = int(raw)
    except ValueError:
        raise ParameterError(f"TWMATCH_THREADS must be an integer, got {raw!r}") from None
    if threads < 1:
        raise ParameterError(f"TWMATCH_THREADS must be positive, got {threads}")
    return threads
