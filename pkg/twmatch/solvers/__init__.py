"""Tree-decomposition dynamic programs for the matching variants."""

from .acyclic import AcyclicCutCountSolver, decide_acyclic, extract_acyclic_certificate
from .cdisc import CDisconnectedSolver, maximum_matching, solve_cdisc, solve_disconnected
from .certificates import extract_certificate
from .induced import InducedMatchingSolver, solve_induced

__all__ = [
    "AcyclicCutCountSolver",
    "CDisconnectedSolver",
    "InducedMatchingSolver",
    "decide_acyclic",
    "extract_acyclic_certificate",
    "extract_certificate",
    "maximum_matching",
    "solve_cdisc",
    "solve_disconnected",
    "solve_induced",
]
