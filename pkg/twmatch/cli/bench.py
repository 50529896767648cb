"""CLI for the join benchmark suite."""

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from ..core.errors import BenchmarkMismatchError, TwMatchError
from ..results.charts import generate_scaling_chart
from ..sweeps.bench_suite import BenchSuite, ladder_suite, load_suite
from ..sweeps.presets import BENCH_DEFAULTS, GRID_LADDER, SCALING_LADDER
from .common import EXIT_ERROR, add_log_level, configure_logging

LADDERS = {"grid": GRID_LADDER, "ktree": SCALING_LADDER}


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the bench CLI."""
    parser = argparse.ArgumentParser(prog="twmatch bench", description="Naive vs convolution join benchmark")
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--config", type=str, help="JSON suite config")
    source.add_argument("--ladder", choices=sorted(LADDERS), help="Built-in width ladder")
    parser.add_argument("--out", type=str, required=True, help="CSV output path")
    parser.add_argument(
        "--modes",
        type=str,
        default=",".join(BENCH_DEFAULTS["modes"]),
        help=f"Comma-separated join modes (default: {','.join(BENCH_DEFAULTS['modes'])})",
    )
    parser.add_argument(
        "--repeats",
        type=int,
        default=BENCH_DEFAULTS["repeats"],
        help=f"Timed runs per instance and mode, median reported (default: {BENCH_DEFAULTS['repeats']})",
    )
    parser.add_argument("--charts", action="store_true", help="Write a scaling chart PNG next to the CSV")
    parser.add_argument(
        "--chart-name",
        type=str,
        default=BENCH_DEFAULTS["chart_name"],
        help=f"Chart file name in the CSV directory (default: {BENCH_DEFAULTS['chart_name']})",
    )
    parser.add_argument("--quiet", action="store_true", help="Skip the summary table")
    add_log_level(parser, default="INFO")
    args = parser.parse_args(argv)
    configure_logging(args.log_level)

    try:
        if args.config:
            config = load_suite(args.config)
            base_dir = str(Path(args.config).resolve().parent)
        else:
            config = ladder_suite(LADDERS[args.ladder])
            base_dir = None
        suite = BenchSuite(
            config,
            modes=[m.strip() for m in args.modes.split(",") if m.strip()],
            repeats=args.repeats,
            base_dir=base_dir,
        )
        suite.run()
        suite.aggregator.to_csv(args.out)
    except KeyboardInterrupt:
        print("\nBenchmark interrupted by user", file=sys.stderr)
        return EXIT_ERROR
    except KeyError as e:
        print(f"Error: suite instance is missing parameter {e}", file=sys.stderr)
        return EXIT_ERROR
    except (TwMatchError, OSError, json.JSONDecodeError, BenchmarkMismatchError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_ERROR

    if not args.quiet:
        suite.aggregator.print_summary_table()
    if args.charts and suite.aggregator.results:
        generate_scaling_chart(suite.aggregator.results, str(Path(args.out).parent / args.chart_name))
    return 0
