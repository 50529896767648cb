"""CLI for min-fill tree decompositions."""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from ..core.decomposition import format_nice, make_nice_deferred, min_fill_decompose, validate_td, write_td
from ..core.errors import TwMatchError
from ..core.instance_loader import InstanceLoader
from .common import EXIT_ERROR, add_log_level, configure_logging


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the decompose CLI."""
    parser = argparse.ArgumentParser(prog="twmatch decompose", description="Min-fill tree decomposition in PACE .td format")
    parser.add_argument("--graph", type=str, required=True, help="Graph file")
    parser.add_argument("--out", type=str, default=None, help="Write the .td here instead of stdout")
    parser.add_argument("--nice", action="store_true", help="Print the nice decomposition instead")
    add_log_level(parser)
    args = parser.parse_args(argv)
    configure_logging(args.log_level)
    logger = logging.getLogger(__name__)

    try:
        g = InstanceLoader(args.graph).load()
        td = min_fill_decompose(g)
        violations = validate_td(g, td)
        if violations:
            raise RuntimeError(f"min-fill produced an invalid decomposition: {violations[0]}")
        text = format_nice(make_nice_deferred(g, td)) if args.nice else write_td(td, g.n)
        if args.out:
            Path(args.out).write_text(text)
            logger.info(f"Wrote width-{td.width} decomposition to {args.out}")
        else:
            sys.stdout.write(text)
    except (TwMatchError, OSError, RuntimeError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_ERROR
    return 0
