"""CLI for generating benchmark and reduction instances."""

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from ..core.decomposition import grid_path_decomposition, write_td
from ..core.errors import TwMatchError
from ..core.graph import grid_graph, random_graph, write_graph
from ..reduction.hitting_set import build_reduction, parse_sets
from ..sweeps.bench_suite import partial_ktree
from .common import EXIT_ERROR, add_log_level, configure_logging


def _emit(out: Optional[str], stem: str, graph_text: str, td_text: Optional[str], sidecar: Optional[dict]) -> None:
    """Write files into out, or print everything to stdout."""
    if out is None:
        sys.stdout.write(graph_text)
        if td_text is not None:
            sys.stdout.write(td_text)
        if sidecar is not None:
            print(json.dumps(sidecar, sort_keys=True))
        return
    directory = Path(out)
    directory.mkdir(parents=True, exist_ok=True)
    (directory / f"{stem}.gr").write_text(graph_text)
    if td_text is not None:
        (directory / f"{stem}.td").write_text(td_text)
    if sidecar is not None:
        (directory / f"{stem}.json").write_text(json.dumps(sidecar, sort_keys=True, indent=2) + "\n")
    print(f"Wrote {stem} instance to {directory}")


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the gen CLI."""
    parser = argparse.ArgumentParser(prog="twmatch gen", description="Generate instances")
    subparsers = parser.add_subparsers(dest="kind", required=True)

    hs_parser = subparsers.add_parser("hitting-set", help="Disconnected Matching instance from k x k Hitting Set")
    hs_parser.add_argument("--k", type=int, required=True, help="Grid side k")
    hs_parser.add_argument("--sets", type=str, required=True, help='Sets like "(1,1) (2,1); (1,2)"')

    grid_parser = subparsers.add_parser("grid", help="p x q grid with its width-p path decomposition")
    grid_parser.add_argument("--p", type=int, required=True)
    grid_parser.add_argument("--q", type=int, required=True)

    random_parser = subparsers.add_parser("random", help="G(n, p) random graph")
    random_parser.add_argument("--n", type=int, required=True)
    random_parser.add_argument("--p", type=float, required=True)
    random_parser.add_argument("--seed", type=int, default=0)

    ktree_parser = subparsers.add_parser("ktree", help="Random partial k-tree with its decomposition")
    ktree_parser.add_argument("--n", type=int, required=True)
    ktree_parser.add_argument("--k", type=int, required=True)
    ktree_parser.add_argument("--keep", type=float, default=1.0)
    ktree_parser.add_argument("--seed", type=int, default=0)

    for subparser in [hs_parser, grid_parser, random_parser, ktree_parser]:
        subparser.add_argument("--out", type=str, default=None, help="Output directory (default: stdout)")
        add_log_level(subparser)

    args = parser.parse_args(argv)
    configure_logging(args.log_level)

    try:
        if args.kind == "hitting-set":
            inst = build_reduction(args.k, parse_sets(args.sets))
            _emit(
                args.out,
                f"hitting-set-k{args.k}-m{inst.m}",
                write_graph(inst.graph),
                write_td(inst.path_decomposition, inst.graph.n),
                inst.to_sidecar(),
            )
        elif args.kind == "grid":
            g = grid_graph(args.p, args.q)
            _emit(args.out, f"grid-{args.p}x{args.q}", write_graph(g), write_td(grid_path_decomposition(args.p, args.q), g.n), None)
        elif args.kind == "random":
            _emit(args.out, f"random-n{args.n}-s{args.seed}", write_graph(random_graph(args.n, args.p, args.seed)), None, None)
        elif args.kind == "ktree":
            g, td = partial_ktree(args.n, args.k, args.keep, args.seed)
            _emit(args.out, f"ktree-{args.k}-n{args.n}-s{args.seed}", write_graph(g), write_td(td, g.n), None)
    except (TwMatchError, OSError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_ERROR
    return 0
