"""Graph representation, file format and matching predicates."""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import FrozenSet, Iterable, List, Optional, Tuple

import networkx as nx

from .errors import GraphFormatError, ParameterError
from .models import MatchingClass

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph on vertices 0..n-1."""

    n: int
    edges: Tuple[Edge, ...]
    adjacency: Tuple[FrozenSet[int], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        """Build a graph, dropping duplicate edges.

        Raises:
            ValueError: On self-loops or endpoints outside 0..n-1.
        """
        if n < 0:
            raise ParameterError(f"vertex count must be non-negative, got {n}")
        seen = set()
        for u, v in edges:
            if u == v:
                raise ParameterError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            seen.add(_norm(u, v))
        adjacency: List[set] = [set() for _ in range(n)]
        for u, v in seen:
            adjacency[u].add(v)
            adjacency[v].add(u)
        return cls(
            n=n,
            edges=tuple(sorted(seen)),
            adjacency=tuple(frozenset(a) for a in adjacency),
        )

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "Graph":
        """Convert a networkx graph, relabelling nodes 0..n-1 in sorted order."""
        nodes = sorted(graph.nodes())
        index = {v: i for i, v in enumerate(nodes)}
        return cls.from_edges(len(nodes), ((index[u], index[v]) for u, v in graph.edges()))

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def induced_edges(self, vertices: Iterable[int]) -> List[Edge]:
        """Edges of G[X], sorted."""
        xs = set(vertices)
        return [(u, v) for u, v in self.edges if u in xs and v in xs]

    @cached_property
    def nx_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges)
        return graph


@dataclass(frozen=True)
class Matching:
    """A set of edges; matching property is checked, not assumed."""

    edges: FrozenSet[Edge]

    @classmethod
    def of(cls, edges: Iterable[Tuple[int, int]]) -> "Matching":
        return cls(frozenset(_norm(u, v) for u, v in edges))

    @property
    def vertices(self) -> FrozenSet[int]:
        return frozenset(x for e in self.edges for x in e)

    @property
    def is_matching(self) -> bool:
        return len(self.vertices) == 2 * len(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)


def parse_graph_with_stats(text: str) -> Tuple[Graph, int]:
    """Parse an edge-list file and report how many duplicate edges were dropped.

    Accepts a 0-based "n m" header or a PACE "p tw n m" header with 1-based
    edge lines. Blank lines and lines starting with "c" or "#" are ignored.

    Returns:
        The graph and the number of duplicate edge lines.

    Raises:
        GraphFormatError: On malformed lines, self-loops, out-of-range
            endpoints or an edge count that disagrees with the header.
    """
    header: Optional[Tuple[int, int, int]] = None
    offset = 0
    edges: List[Edge] = []
    seen = set()
    duplicates = 0

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("#"):
            continue
        tokens = line.split()
        if header is None:
            if tokens[0] == "p":
                if len(tokens) != 4 or tokens[1] != "tw":
                    raise GraphFormatError(f"expected 'p tw n m', got {line!r}", lineno)
                offset = 1
                tokens = tokens[2:]
            if len(tokens) != 2:
                raise GraphFormatError(f"expected header 'n m', got {line!r}", lineno)
            try:
                n, m = int(tokens[0]), int(tokens[1])
            except ValueError:
                raise GraphFormatError(f"non-integer header {line!r}", lineno) from None
            if n < 0 or m < 0:
                raise GraphFormatError("negative vertex or edge count", lineno)
            header = (n, m, lineno)
            continue

        if len(tokens) != 2:
            raise GraphFormatError(f"expected 'u v', got {line!r}", lineno)
        try:
            u, v = int(tokens[0]) - offset, int(tokens[1]) - offset
        except ValueError:
            raise GraphFormatError(f"non-integer endpoint in {line!r}", lineno) from None
        n = header[0]
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"endpoint out of range in {line!r} (n={n})", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", lineno)
        e = _norm(u, v)
        if e in seen:
            duplicates += 1
        seen.add(e)
        edges.append(e)

    if header is None:
        raise GraphFormatError("missing header line")
    n, m, header_line = header
    if len(edges) != m:
        raise GraphFormatError(f"header declares {m} edges but {len(edges)} edge lines follow", header_line)
    return Graph.from_edges(n, edges), duplicates


def parse_graph(text: str) -> Graph:
    """Parse an edge-list file, logging a warning when duplicates are dropped."""
    graph, duplicates = parse_graph_with_stats(text)
    if duplicates:
        logger.warning(f"Dropped {duplicates} duplicate edge line(s)")
    return graph


def write_graph(g: Graph) -> str:
    """Serialize in the 0-based "n m" edge-list form."""
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def component_count(g: Graph, vertices: Iterable[int]) -> int:
    """Number of connected components of G[X]; 0 for empty X."""
    return nx.number_connected_components(g.nx_graph.subgraph(set(vertices)))


def is_forest(g: Graph, vertices: Iterable[int]) -> bool:
    """True iff G[X] is acyclic.

    Decided by the component-count bound cc <= |X| - |E(G[X])| and checked
    against networkx's DFS-based forest test.
    """
    xs = set(vertices)
    if not xs:
        return True
    bound_says = component_count(g, xs) <= len(xs) - len(g.induced_edges(xs))
    dfs_says = nx.is_forest(g.nx_graph.subgraph(xs))
    if bound_says != dfs_says:
        raise RuntimeError(f"forest tests disagree on {sorted(xs)}")
    return bound_says


def classify_matching(g: Graph, matching: Matching, c: int = 1) -> MatchingClass:
    """Classify a matching as induced, acyclic and/or c-disconnected.

    Raises:
        ParameterError: If some edge of the matching is not an edge of g.
    """
    for u, v in matching.edges:
        if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
            raise ParameterError(f"({u}, {v}) is not an edge of the graph")
    saturated = matching.vertices
    induced = set(g.induced_edges(saturated))
    components = component_count(g, saturated)
    return MatchingClass(
        is_matching=matching.is_matching,
        is_induced=induced == set(matching.edges),
        is_acyclic=is_forest(g, saturated),
        components=components,
        size=len(matching),
        meets_component_target=components >= c,
    )


def delete_vertices(g: Graph, vertices: Iterable[int]) -> Graph:
    """Remove all edges at X; vertex ids are kept and X becomes isolated."""
    xs = set(vertices)
    return Graph.from_edges(g.n, [(u, v) for u, v in g.edges if u not in xs and v not in xs])


def grid_graph(p: int, q: int) -> Graph:
    """p x q grid; vertex (r, c) gets id c * p + r."""
    edges = []
    for c in range(q):
        for r in range(p):
            v = c * p + r
            if r + 1 < p:
                edges.append((v, v + 1))
            if c + 1 < q:
                edges.append((v, v + p))
    return Graph.from_edges(p * q, edges)


def random_graph(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p) with a fixed seed."""
    return Graph.from_networkx(nx.gnp_random_graph(n, p, seed=seed))
