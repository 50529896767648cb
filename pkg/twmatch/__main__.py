"""Main entry point for the twmatch package.

Usage:
    python -m twmatch solve --problem induced --ell 1 --graph p4.gr
    python -m twmatch oracle --graph c4.gr --cmax 3
    python -m twmatch gen hitting-set --k 2 --sets "(1,1)" --out instances/
    python -m twmatch decompose --graph grid.gr --out grid.td
    python -m twmatch bench --config suite.json --out bench.csv
"""

import sys
from typing import List, Optional


def run(argv: List[str]) -> int:
    """Dispatch argv (without the program name) to a subcommand; returns the exit code."""
    if not argv:
        print_help()
        return 2

    command, rest = argv[0], argv[1:]

    if command in ["-h", "--help", "help"]:
        print_help()
        return 0

    if command == "solve":
        from .cli.solve import main as command_main
    elif command == "oracle":
        from .cli.oracle import main as command_main
    elif command == "gen":
        from .cli.gen import main as command_main
    elif command == "decompose":
        from .cli.decompose import main as command_main
    elif command == "bench":
        from .cli.bench import main as command_main
    else:
        print(f"Unknown command: {command}", file=sys.stderr)
        print_help()
        return 2

    try:
        return command_main(rest)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 on --help
        return e.code if isinstance(e.code, int) else 2


def main(argv: Optional[List[str]] = None):
    """Console-script entry point."""
    sys.exit(run(sys.argv[1:] if argv is None else argv))


def print_help():
    """Print help message."""
    print(
        """twmatch: matching problems on bounded treewidth graphs

Usage: python -m twmatch <command> [options]

Commands:
    solve         Decide induced, acyclic, c-disconnected or disconnected matching
    oracle        Exact matching numbers of a small graph by exhaustive search
    gen           Generate hitting-set reductions, grids, random graphs, partial k-trees
    decompose     Min-fill tree decomposition in PACE .td format
    bench         Time naive against convolution joins over a suite

Examples:
    # Induced matching with a supplied decomposition
    python -m twmatch solve --problem induced --ell 2 --graph g.gr --td g.td

    # Acyclic matching, 7 seeded trials, with a witness
    python -m twmatch solve --problem acyclic --ell 2 --graph g.gr --seed 1 --certificate

    # 2-disconnected matching, cross-checked against brute force
    python -m twmatch solve --problem cdisc --c 2 --ell 2 --graph g.gr --check-oracle

    # Width ladder on grids, with a chart
    python -m twmatch bench --ladder grid --out scaling.csv --charts

Exit codes: 0 yes, 1 no, 2 usage or input error.

For command-specific help:
    python -m twmatch <command> --help
"""
    )


if __name__ == "__main__":
    main()
