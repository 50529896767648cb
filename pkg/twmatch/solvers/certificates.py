"""Matching certificates by self-reduction over the deterministic solvers.

Vertices are deleted while the residual graph still answers yes. Afterwards
every solution of the residual graph saturates exactly the surviving
non-isolated vertices K, so any perfect matching of G[K] is a solution.
"""

import logging
from typing import Callable, Optional

import networkx as nx

from ..core.decomposition import make_nice_deferred, min_fill_decompose
from ..core.errors import CertificateError, ParameterError
from ..core.graph import Graph, Matching, classify_matching, delete_vertices
from .cdisc import CDisconnectedSolver
from .induced import InducedMatchingSolver

logger = logging.getLogger(__name__)

Decider = Callable[[Graph], bool]


def shrink_to_support(g: Graph, decide: Decider) -> Graph:
    """Delete vertices greedily while decide() stays true; ids are kept."""
    current = g
    for v in range(g.n):
        if not current.adjacency[v]:
            continue
        candidate = delete_vertices(current, [v])
        if decide(candidate):
            current = candidate
    return current


def perfect_matching_of_support(g: Graph) -> Optional[Matching]:
    """Perfect matching on the non-isolated vertices of g, if one exists."""
    support = [v for v in range(g.n) if g.adjacency[v]]
    pairs = nx.max_weight_matching(g.nx_graph.subgraph(support), maxcardinality=True)
    matching = Matching.of(pairs)
    return matching if len(matching.vertices) == len(support) else None


def _decider(problem: str, ell: int, c: Optional[int], join_mode: str) -> Decider:
    def decide(graph: Graph) -> bool:
        nd = make_nice_deferred(graph, min_fill_decompose(graph))
        if problem == "induced":
            return InducedMatchingSolver(graph, nd, join_mode, validate=False).solve(ell).answer
        return CDisconnectedSolver(graph, nd, c, join_mode, validate=False).solve(ell, problem).answer

    return decide


def extract_certificate(g: Graph, problem: str, ell: int, c: Optional[int] = None, join_mode: str = "conv") -> Matching:
    """A matching witnessing a yes answer for induced, cdisc or disc.

    Raises:
        ParameterError: For problems without a deterministic solver here.
        CertificateError: If the instance answers no.
    """
    if problem not in ("induced", "cdisc", "disc"):
        raise ParameterError(f"no deterministic certificate extraction for {problem!r}")
    if problem != "induced" and (c is None or c < 2):
        raise ParameterError("certificates for disconnected matching need c >= 2")
    decide = _decider(problem, ell, c, join_mode)
    if not decide(g):
        raise CertificateError(f"{problem} instance with ell={ell} has no solution")
    support = shrink_to_support(g, decide)
    matching = perfect_matching_of_support(support)
    if matching is None:
        raise CertificateError("surviving vertices have no perfect matching")
    kind = classify_matching(g, matching, c or 1)
    ok = kind.is_induced if problem == "induced" else kind.meets_component_target
    if not ok or len(matching) < ell:
        raise CertificateError(f"self-reduction produced an invalid matching: {kind}")
    logger.info(f"{problem} certificate with {len(matching)} edges")
    return matching
