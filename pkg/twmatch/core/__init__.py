"""Core graph, decomposition and semiring components."""

from .decomposition import NiceDecomposition, TreeDecomposition, make_nice_deferred, min_fill_decompose
from .graph import Graph, Matching, classify_matching, parse_graph
from .models import OracleReport, RunReport, SolveResult

__all__ = [
    "Graph",
    "Matching",
    "NiceDecomposition",
    "OracleReport",
    "RunReport",
    "SolveResult",
    "TreeDecomposition",
    "classify_matching",
    "make_nice_deferred",
    "min_fill_decompose",
    "parse_graph",
]
