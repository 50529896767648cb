"""Exhaustive ground truth for matching numbers, hitting sets and cut parity."""

import itertools
import logging
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from ..core.errors import OracleLimitError, OracleMismatchError
from ..core.graph import Edge, Graph, Matching, classify_matching
from ..core.models import CutParity, OracleReport
from ..reduction.hitting_set import Cell, validate_family
from ..solvers.acyclic import WeightAssignment
from ..sweeps.presets import ORACLE_DEFAULTS

logger = logging.getLogger(__name__)


def _masks(g: Graph) -> List[int]:
    return [sum(1 << u for u in nbrs) for nbrs in g.adjacency]


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _induced_edge_count(adj: List[int], vertices: int) -> int:
    total, rest = 0, vertices
    while rest:
        v = (rest & -rest).bit_length() - 1
        rest &= rest - 1
        total += _popcount(adj[v] & vertices)
    return total // 2


def _components(adj: List[int], vertices: int) -> List[int]:
    """Connected components of G[vertices], each as a bitmask."""
    found, rest = [], vertices
    while rest:
        frontier = rest & -rest
        seen = frontier
        while frontier:
            v = (frontier & -frontier).bit_length() - 1
            frontier &= frontier - 1
            fresh = adj[v] & vertices & ~seen
            seen |= fresh
            frontier |= fresh
        found.append(seen)
        rest &= ~seen
    return found


def _has_perfect_matching(adj: List[int], vertices: int) -> bool:
    if not vertices:
        return True
    v = (vertices & -vertices).bit_length() - 1
    rest = vertices & ~(1 << v)
    partners = adj[v] & rest
    while partners:
        u = (partners & -partners).bit_length() - 1
        partners &= partners - 1
        if _has_perfect_matching(adj, rest & ~(1 << u)):
            return True
    return False


def _check_size(g: Graph, limit: int) -> None:
    if g.n > limit:
        raise OracleLimitError(f"graph has {g.n} vertices; exhaustive search is limited to {limit}")


def iter_matchings(g: Graph) -> Iterator[List[Edge]]:
    """Every matching of g exactly once, edges in id order."""
    edges = g.edges
    chosen: List[Edge] = []

    def extend(start: int, used: int) -> Iterator[List[Edge]]:
        yield chosen
        for j in range(start, len(edges)):
            u, v = edges[j]
            if used >> u & 1 or used >> v & 1:
                continue
            chosen.append(edges[j])
            yield from extend(j + 1, used | 1 << u | 1 << v)
            chosen.pop()

    return extend(0, 0)


def brute_matching_numbers(g: Graph, c_max: int = 3, max_vertices: Optional[int] = None) -> OracleReport:
    """Exact matching numbers by enumerating all matchings.

    Args:
        g: Input graph.
        c_max: Compute the c-disconnected matching number for 1 <= c <= c_max.
        max_vertices: Size limit; defaults to ORACLE_DEFAULTS["max_vertices"].

    Returns:
        OracleReport with one witness matching per reported number.

    Raises:
        OracleLimitError: If g has more than max_vertices vertices.
        OracleMismatchError: If a witness disagrees with classify_matching.
    """
    _check_size(g, max_vertices or ORACLE_DEFAULTS["max_vertices"])
    adj = _masks(g)
    best: Dict[str, int] = {"mu": 0, "mu_induced": 0, "mu_acyclic": 0}
    disc: Dict[int, int] = {c: -1 for c in range(1, c_max + 1)}
    witnesses: Dict[str, List[Edge]] = {"mu": [], "mu_induced": [], "mu_acyclic": []}

    for matching in iter_matchings(g):
        size = len(matching)
        if size <= best["mu_induced"] and all(size <= disc[c] for c in disc):
            continue
        if size > best["mu"]:
            best["mu"], witnesses["mu"] = size, list(matching)
        vertices = sum(1 << u | 1 << v for u, v in matching)
        inner = _induced_edge_count(adj, vertices)
        parts = len(_components(adj, vertices)) if vertices else 0
        if inner == size and size > best["mu_induced"]:
            best["mu_induced"], witnesses["mu_induced"] = size, list(matching)
        if parts <= 2 * size - inner and size > best["mu_acyclic"]:
            best["mu_acyclic"], witnesses["mu_acyclic"] = size, list(matching)
        for c in disc:
            if parts >= c and size > disc[c]:
                disc[c] = size
                witnesses[f"mu_{c}_discon"] = list(matching)

    report = OracleReport(
        n=g.n,
        mu=best["mu"],
        mu_induced=best["mu_induced"],
        mu_acyclic=best["mu_acyclic"],
        mu_cdiscon={c: (v if v >= 0 else None) for c, v in disc.items()},
        witnesses=witnesses,
    )
    _confirm_witnesses(g, report)
    return report


def _confirm_witnesses(g: Graph, report: OracleReport) -> None:
    checks = {
        "mu": lambda k: True,
        "mu_induced": lambda k: k.is_induced,
        "mu_acyclic": lambda k: k.is_acyclic,
    }
    for name, edges in report.witnesses.items():
        c = int(name.split("_")[1]) if name.endswith("_discon") else 1
        kind = classify_matching(g, Matching.of(edges), c)
        ok = kind.is_matching and checks.get(name, lambda k: k.meets_component_target)(kind)
        if not ok:
            raise OracleMismatchError(f"witness for {name} fails classification: {kind}")


def hitting_sets(k: int, sets: Sequence[Sequence[Cell]]) -> Iterator[Tuple[int, ...]]:
    """All row choices (column per row, 1-based) hitting every set."""
    validate_family(k, sets)
    if k > ORACLE_DEFAULTS["max_hitting_set_k"]:
        raise OracleLimitError(f"k={k} exceeds exhaustive limit {ORACLE_DEFAULTS['max_hitting_set_k']}")
    families = [set(s) for s in sets]
    for columns in itertools.product(range(1, k + 1), repeat=k):
        chosen = {(i + 1, j) for i, j in enumerate(columns)}
        if all(chosen & s for s in families):
            yield columns


def brute_hitting_set(k: int, sets: Sequence[Sequence[Cell]]) -> bool:
    """Whether one cell per row of the k x k grid can hit every set."""
    return next(hitting_sets(k, sets), None) is not None


def enumerate_cut_parity(g: Graph, weights: WeightAssignment, A: int, B: int, C: int, W: int) -> CutParity:
    """Sizes of the candidate, solution and cut families for fixed (A, B, C, W).

    Candidates are pairs (X, P) with |X| = A, B edges in G[X], a perfect
    matching in G[X], P a C-subset of X and total weight W. Solutions are
    candidates where G[X] is a forest with a marker in every component.
    Cuts are candidates together with a consistent cut (X_l, X_r) of G[X]
    having P on the left.
    """
    _check_size(g, ORACLE_DEFAULTS["max_cut_parity_vertices"])
    adj = _masks(g)
    r_count = s_count = c_count = 0
    for xs in itertools.combinations(range(g.n), A):
        x_mask = sum(1 << v for v in xs)
        if _induced_edge_count(adj, x_mask) != B or not _has_perfect_matching(adj, x_mask):
            continue
        forest_weight = sum(weights.forest[v] for v in xs)
        components = _components(adj, x_mask)
        is_forest = len(components) <= A - B
        for markers in itertools.combinations(xs, C):
            if forest_weight + sum(weights.marker[v] for v in markers) != W:
                continue
            r_count += 1
            p_mask = sum(1 << v for v in markers)
            if is_forest and all(comp & p_mask for comp in components):
                s_count += 1
            for left in _submasks(x_mask):
                if left & p_mask != p_mask:
                    continue
                right = x_mask & ~left
                if not any(adj[v] & right for v in xs if left >> v & 1):
                    c_count += 1
    return CutParity(r_count=r_count, s_count=s_count, c_count=c_count)


def _submasks(mask: int) -> Iterator[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask
