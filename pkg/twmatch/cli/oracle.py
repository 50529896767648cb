"""CLI for exhaustive matching numbers."""

import argparse
import json
import sys
from typing import List, Optional

from ..core.errors import OracleMismatchError, TwMatchError
from ..core.instance_loader import InstanceLoader
from ..oracle.brute_force import brute_matching_numbers
from ..sweeps.presets import ORACLE_DEFAULTS
from .common import EXIT_ERROR, add_log_level, configure_logging


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the oracle CLI."""
    parser = argparse.ArgumentParser(prog="twmatch oracle", description="Brute-force matching numbers of a small graph")
    parser.add_argument("--graph", type=str, required=True, help="Graph file")
    parser.add_argument(
        "--cmax",
        type=int,
        default=ORACLE_DEFAULTS["c_max"],
        help=f"Largest c for the c-disconnected numbers (default: {ORACLE_DEFAULTS['c_max']})",
    )
    parser.add_argument("--witnesses", action="store_true", help="Include one witness matching per number")
    add_log_level(parser)
    args = parser.parse_args(argv)
    configure_logging(args.log_level)

    try:
        g = InstanceLoader(args.graph).load()
        report = brute_matching_numbers(g, c_max=args.cmax)
    except (TwMatchError, OSError, OracleMismatchError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_ERROR

    data = report.to_dict()
    if not args.witnesses:
        data.pop("witnesses")
    violations = report.chain_violations()
    if violations:
        print("Error: " + "; ".join(violations), file=sys.stderr)
        return EXIT_ERROR
    print(json.dumps(data, sort_keys=True, indent=2))
    return 0
