"""CLI for deciding one matching problem on one graph."""

import argparse
import json
import logging
import sys
import time
from typing import List, Optional, Tuple

from ..core.errors import CertificateError, OracleMismatchError, ParameterError, TwMatchError
from ..core.graph import Graph, Matching
from ..core.instance_loader import InstanceLoader
from ..core.models import RunReport, SolveResult
from ..oracle.brute_force import brute_matching_numbers
from ..solvers.acyclic import AcyclicCutCountSolver, extract_acyclic_certificate, trials_for_target
from ..solvers.cdisc import CDisconnectedSolver, maximum_matching, solve_disconnected
from ..solvers.certificates import extract_certificate
from ..solvers.induced import JOIN_MODES, InducedMatchingSolver
from ..sweeps.presets import ORACLE_DEFAULTS, SOLVER_DEFAULTS
from .common import EXIT_ERROR, EXIT_NO, EXIT_YES, add_log_level, configure_logging, default_threads

PROBLEMS = ("induced", "acyclic", "cdisc", "disc")

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twmatch solve", description="Decide a matching problem via tree decomposition DP")
    parser.add_argument("--problem", choices=PROBLEMS, required=True, help="Matching variant to decide")
    parser.add_argument("--ell", type=int, required=True, help="Target number of matching edges")
    parser.add_argument("--c", type=int, default=None, help="Component target (cdisc and disc)")
    parser.add_argument("--graph", type=str, required=True, help="Graph file (n m header or PACE p tw)")
    parser.add_argument("--td", type=str, default=None, help="PACE .td decomposition (default: min-fill heuristic)")
    parser.add_argument(
        "--seed",
        type=int,
        default=SOLVER_DEFAULTS["seed"],
        help=f"Seed for the randomized acyclic solver (default: {SOLVER_DEFAULTS['seed']})",
    )
    parser.add_argument(
        "--trials",
        type=int,
        default=None,
        help="Independent trials for the acyclic solver (default: fewest meeting --false-negative-target)",
    )
    parser.add_argument(
        "--false-negative-target",
        type=float,
        default=SOLVER_DEFAULTS["false_negative_target"],
        help=f"Acceptable false-negative probability (default: {SOLVER_DEFAULTS['false_negative_target']})",
    )
    parser.add_argument(
        "--join",
        choices=JOIN_MODES,
        default=SOLVER_DEFAULTS["join"],
        help=f"Join implementation (default: {SOLVER_DEFAULTS['join']})",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=None,
        help="Worker processes for acyclic trials (default: TWMATCH_THREADS or 1)",
    )
    parser.add_argument(
        "--check-oracle",
        action="store_true",
        help=f"Cross-check against exhaustive search when n <= {ORACLE_DEFAULTS['check_oracle_max_vertices']}",
    )
    parser.add_argument("--certificate", action="store_true", help="Include a witness matching for yes answers")
    parser.add_argument("--no-timing", action="store_true", help="Leave wall_time out of the report")
    add_log_level(parser)
    return parser


def _decide(g: Graph, nd, args: argparse.Namespace, threads: int) -> Tuple[SolveResult, Optional[str]]:
    if args.problem == "induced":
        return InducedMatchingSolver(g, nd, args.join, validate=False).solve(args.ell), None
    if args.problem == "acyclic":
        solver = AcyclicCutCountSolver(g, nd, args.join, validate=False)
        return solver.solve(args.ell, args.seed, args.trials, threads), None
    if args.c is None:
        raise ParameterError(f"--c is required for {args.problem}")
    if args.problem == "cdisc":
        return CDisconnectedSolver(g, nd, args.c, args.join, validate=False).solve(args.ell), None
    notice = None
    if args.c == 1:
        notice = "c=1 is maximum matching; answered with the blossom algorithm"
    return solve_disconnected(g, nd, args.c, args.ell, args.join), notice


def _certificate(g: Graph, args: argparse.Namespace) -> Matching:
    if args.problem == "acyclic":
        return extract_acyclic_certificate(
            g, args.ell, args.seed, args.trials, SOLVER_DEFAULTS["certificate_retries"]
        )
    if args.problem == "disc" and args.c == 1:
        return Matching.of(maximum_matching(g).sorted_edges()[: args.ell])
    return extract_certificate(g, args.problem, args.ell, args.c, args.join)


def _check_oracle(g: Graph, args: argparse.Namespace, result: SolveResult) -> bool:
    """Compare against brute force; raises OracleMismatchError on disagreement."""
    limit = ORACLE_DEFAULTS["check_oracle_max_vertices"]
    if g.n > limit:
        logger.warning(f"--check-oracle skipped: n={g.n} exceeds {limit}")
        return False
    report = brute_matching_numbers(g, c_max=max(args.c or 1, 1))
    if args.problem == "induced":
        expected = 2 * report.mu_induced
        agrees = result.max_saturated == expected
    elif args.problem == "acyclic":
        expected = report.mu_acyclic
        agrees = result.answer == (report.mu_acyclic >= args.ell)
    else:
        edges = report.mu_cdiscon[args.c]
        expected = None if edges is None else 2 * edges
        agrees = result.max_saturated == expected
    if not agrees:
        raise OracleMismatchError(
            f"{args.problem}: solver gave answer={result.answer}, value={result.max_saturated}; oracle expects {expected}"
        )
    logger.info(f"oracle agrees: {args.problem} expected {expected}")
    return True


def run_solve(args: argparse.Namespace) -> RunReport:
    """Load, decompose, decide and optionally certify and cross-check."""
    threads = args.threads if args.threads is not None else default_threads(SOLVER_DEFAULTS["threads"])
    if threads < 1:
        raise ParameterError(f"--threads must be positive, got {threads}")
    if args.trials is None:
        args.trials = trials_for_target(args.false_negative_target)
    loader = InstanceLoader(args.graph, args.td)
    g = loader.load()
    nd, td, source = loader.nice_decomposition()
    if not 1 <= args.ell <= g.n // 2:
        raise ParameterError(f"ell={args.ell} out of range 1..{g.n // 2}")

    start = time.perf_counter()
    result, notice = _decide(g, nd, args, threads)
    wall_time = time.perf_counter() - start

    certificate: Optional[List[Tuple[int, int]]] = None
    if args.certificate and result.answer:
        certificate = _certificate(g, args).sorted_edges()
    oracle_checked = _check_oracle(g, args, result) if args.check_oracle else False

    randomized = args.problem == "acyclic"
    return RunReport(
        problem=args.problem,
        answer="yes" if result.answer else "no",
        value=result.max_saturated,
        ell=args.ell,
        c=args.c if args.problem in ("cdisc", "disc") else None,
        width_used=td.width,
        node_count=len(nd),
        decomposition=source,
        wall_time=wall_time,
        seed=args.seed if randomized else None,
        trials=result.trials_run if randomized else None,
        join=args.join,
        certificate=certificate,
        oracle_checked=oracle_checked,
        notice=notice,
    )


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the solve CLI."""
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    try:
        report = run_solve(args)
    except (TwMatchError, OSError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except (CertificateError, OracleMismatchError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_ERROR

    print(json.dumps(report.to_dict(include_timing=not args.no_timing), sort_keys=True, indent=2))
    return EXIT_YES if report.answer == "yes" else EXIT_NO
