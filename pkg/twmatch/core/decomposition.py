"""Tree decompositions: validation, min-fill heuristic, nice form, PACE .td I/O."""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from .errors import DecompositionError, GraphFormatError
from .graph import Edge, Graph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags on the nodes 0..N-1 of an undirected tree."""

    bags: Tuple[FrozenSet[int], ...]
    tree_edges: Tuple[Tuple[int, int], ...]

    @classmethod
    def of(cls, bags: Iterable[Iterable[int]], tree_edges: Iterable[Tuple[int, int]]) -> "TreeDecomposition":
        return cls(tuple(frozenset(b) for b in bags), tuple((int(a), int(b)) for a, b in tree_edges))

    @property
    def width(self) -> int:
        if not self.bags:
            return -1
        return max(len(b) for b in self.bags) - 1

    @property
    def is_path(self) -> bool:
        return all(d <= 2 for _, d in self.tree().degree())

    def tree(self) -> nx.Graph:
        tree = nx.Graph()
        tree.add_nodes_from(range(len(self.bags)))
        tree.add_edges_from(self.tree_edges)
        return tree


@dataclass(frozen=True)
class Violation:
    """A failed decomposition condition and a witness for it."""

    condition: str
    witness: str

    def __str__(self) -> str:
        return f"{self.condition}: {self.witness}"


class NodeKind(str, Enum):
    LEAF = "leaf"
    INTRODUCE_VERTEX = "introduce-vertex"
    INTRODUCE_EDGE = "introduce-edge"
    FORGET = "forget"
    JOIN = "join"


@dataclass(frozen=True)
class NiceNode:
    kind: NodeKind
    bag: Tuple[int, ...]  # ascending
    children: Tuple[int, ...] = ()
    vertex: Optional[int] = None
    edge: Optional[Edge] = None


@dataclass(frozen=True)
class NiceDecomposition:
    """Nodes in post-order (children before parents); root is the last node."""

    nodes: Tuple[NiceNode, ...]
    root: int

    @property
    def width(self) -> int:
        return max(len(node.bag) for node in self.nodes) - 1

    def __len__(self) -> int:
        return len(self.nodes)

    def parents(self) -> List[Optional[int]]:
        parent: List[Optional[int]] = [None] * len(self.nodes)
        for i, node in enumerate(self.nodes):
            for child in node.children:
                parent[child] = i
        return parent

    def count(self, kind: NodeKind) -> int:
        return sum(1 for node in self.nodes if node.kind is kind)


def validate_td(g: Graph, td: TreeDecomposition) -> List[Violation]:
    """Check the three tree decomposition conditions.

    Returns:
        Violations of T.1 (vertex coverage), T.2 (edge coverage) and T.3
        (connected occurrence); empty when the decomposition is valid.

    Raises:
        DecompositionError: If the tree edges do not form a tree or a bag
            names a vertex outside the graph.
    """
    count = len(td.bags)
    for i, bag in enumerate(td.bags):
        bad = [v for v in bag if not 0 <= v < g.n]
        if bad:
            raise DecompositionError(f"bag {i} contains vertices outside the graph: {sorted(bad)}")
    for a, b in td.tree_edges:
        if not (0 <= a < count and 0 <= b < count):
            raise DecompositionError(f"tree edge ({a}, {b}) names a missing node")
    tree = td.tree()
    if count and not nx.is_tree(tree):
        raise DecompositionError(f"{count} nodes and {len(td.tree_edges)} edges do not form a tree")

    holders: Dict[int, List[int]] = {}
    for i, bag in enumerate(td.bags):
        for v in bag:
            holders.setdefault(v, []).append(i)

    violations = []
    for v in range(g.n):
        if v not in holders:
            violations.append(Violation("T.1", f"vertex {v} in no bag"))
    for u, v in g.edges:
        if not set(holders.get(u, ())).intersection(holders.get(v, ())):
            violations.append(Violation("T.2", f"edge ({u}, {v}) in no bag"))
    for v in sorted(holders):
        if not nx.is_connected(tree.subgraph(holders[v])):
            violations.append(Violation("T.3", f"bags containing vertex {v} are disconnected: {holders[v]}"))
    return violations


def min_fill_decompose(g: Graph) -> TreeDecomposition:
    """Tree decomposition from a min-fill elimination ordering.

    Ties on the fill count go to the smallest vertex id. Bag i is the i-th
    eliminated vertex with its neighbors at elimination time; its parent is
    the bag of the neighbor eliminated next, or bag i+1 when there is none.
    """
    adjacency = [set(a) for a in g.adjacency]
    remaining = set(range(g.n))
    order: List[int] = []
    bags: List[FrozenSet[int]] = []

    def fill(v: int) -> int:
        nbrs = sorted(adjacency[v])
        return sum(1 for i, a in enumerate(nbrs) for b in nbrs[i + 1 :] if b not in adjacency[a])

    while remaining:
        v = min(remaining, key=lambda u: (fill(u), u))
        nbrs = adjacency[v]
        bags.append(frozenset(nbrs | {v}))
        order.append(v)
        for a in nbrs:
            adjacency[a] |= nbrs - {a}
            adjacency[a].discard(v)
        remaining.remove(v)
        adjacency[v] = set()

    position = {v: i for i, v in enumerate(order)}
    edges = []
    for i, v in enumerate(order):
        later = [position[u] for u in bags[i] if u != v]
        if later:
            edges.append((i, min(later)))
        elif i + 1 < len(order):
            edges.append((i, i + 1))
    td = TreeDecomposition(tuple(bags), tuple(edges))
    logger.debug(f"min-fill decomposition: {len(bags)} bags, width {td.width}")
    return td


def _compress(td: TreeDecomposition) -> Tuple[nx.Graph, Dict[int, FrozenSet[int]]]:
    """Contract tree edges whose one bag is a subset of the other."""
    tree = td.tree()
    bags = dict(enumerate(td.bags))
    work = list(tree.nodes)
    while work:
        a = work.pop()
        if a not in tree:
            continue
        for b in tree.neighbors(a):
            if bags[a] <= bags[b]:
                others = [x for x in tree.neighbors(a) if x != b]
                for x in others:
                    tree.add_edge(x, b)
                tree.remove_node(a)
                work.append(b)
                work.extend(others)
                break
    return tree, bags


class _NiceBuilder:
    """Accumulates nice nodes; children are always added before their parent."""

    def __init__(self, g: Graph):
        self.g = g
        self.nodes: List[NiceNode] = []

    def add(self, kind: NodeKind, bag: Sequence[int], children: Tuple[int, ...] = (), **extra) -> int:
        self.nodes.append(NiceNode(kind, tuple(sorted(bag)), children, **extra))
        return len(self.nodes) - 1

    def introduce(self, top: int, vertices: Iterable[int]) -> int:
        for v in sorted(vertices):
            top = self.add(NodeKind.INTRODUCE_VERTEX, self.nodes[top].bag + (v,), (top,), vertex=v)
        return top

    def forget(self, top: int, vertices: Iterable[int]) -> int:
        """Forget each vertex, introducing its edges into the bag just below."""
        for u in sorted(vertices):
            bag = self.nodes[top].bag
            for v in sorted(self.g.adjacency[u].intersection(bag)):
                edge = (u, v) if u < v else (v, u)
                top = self.add(NodeKind.INTRODUCE_EDGE, bag, (top,), edge=edge)
            top = self.add(NodeKind.FORGET, [x for x in bag if x != u], (top,), vertex=u)
        return top


def _post_order(nodes: List[NiceNode], root: int) -> NiceDecomposition:
    order = []
    stack = [(root, False)]
    while stack:
        index, expanded = stack.pop()
        if expanded:
            order.append(index)
            continue
        stack.append((index, True))
        for child in reversed(nodes[index].children):
            stack.append((child, False))
    renumber = {old: new for new, old in enumerate(order)}
    renumbered = []
    for old in order:
        node = nodes[old]
        renumbered.append(
            NiceNode(node.kind, node.bag, tuple(renumber[c] for c in node.children), node.vertex, node.edge)
        )
    return NiceDecomposition(tuple(renumbered), len(renumbered) - 1)


def make_nice_deferred(g: Graph, td: TreeDecomposition) -> NiceDecomposition:
    """Convert a valid tree decomposition into a nice one with deferred edges.

    Every edge uv is introduced directly below the forget node of whichever
    endpoint is forgotten first, in ascending order of the other endpoint.
    The width is preserved.

    Raises:
        DecompositionError: If td is not a valid decomposition of g.
    """
    violations = validate_td(g, td)
    if violations:
        raise DecompositionError("invalid tree decomposition: " + "; ".join(str(v) for v in violations[:5]))

    builder = _NiceBuilder(g)
    if not td.bags:
        builder.add(NodeKind.LEAF, ())
        return _post_order(builder.nodes, 0)

    tree, bags = _compress(td)
    root = min(tree.nodes)
    children: Dict[int, List[int]] = {t: [] for t in tree.nodes}
    bfs = [root]
    for parent, child in nx.bfs_edges(tree, root):
        children[parent].append(child)
        bfs.append(child)

    top: Dict[int, int] = {}
    for t in reversed(bfs):
        target = bags[t]
        if not children[t]:
            top[t] = builder.introduce(builder.add(NodeKind.LEAF, ()), target)
            continue
        branches = []
        for c in sorted(children[t]):
            branch = builder.forget(top[c], bags[c] - target)
            branches.append(builder.introduce(branch, target - bags[c]))
        current = branches[0]
        for other in branches[1:]:
            current = builder.add(NodeKind.JOIN, sorted(target), (current, other))
        top[t] = current

    final = builder.forget(top[root], bags[root])
    nice = _post_order(builder.nodes, final)
    logger.debug(f"nice decomposition: {len(nice)} nodes, width {nice.width}")
    return nice


def validate_nice(g: Graph, nd: NiceDecomposition) -> List[Violation]:
    """Check node kinds, edge introduction and the deferred-edge placement."""
    violations: List[Violation] = []
    nodes = nd.nodes
    parent: List[Optional[int]] = [None] * len(nodes)
    for i, node in enumerate(nodes):
        for child in node.children:
            if not 0 <= child < i:
                violations.append(Violation("post-order", f"node {i} has child {child}"))
                continue
            if parent[child] is not None:
                violations.append(Violation("tree shape", f"node {child} has two parents"))
            parent[child] = i
    if violations:
        return violations
    orphans = [i for i, p in enumerate(parent) if p is None and i != nd.root]
    if orphans or parent[nd.root] is not None:
        return [Violation("tree shape", f"root {nd.root}, parentless nodes {orphans}")]

    if nodes[nd.root].bag:
        violations.append(Violation("N.1", f"root bag {list(nodes[nd.root].bag)} is not empty"))

    introduced: Dict[Edge, List[int]] = {}
    forgotten: Dict[int, List[int]] = {}
    for i, node in enumerate(nodes):
        bag = set(node.bag)
        kids = [set(nodes[c].bag) for c in node.children]
        if list(node.bag) != sorted(bag):
            violations.append(Violation("N.2", f"node {i} bag is not ascending and duplicate-free"))
        if node.kind is NodeKind.LEAF:
            if node.children or bag:
                violations.append(Violation("N.1", f"leaf {i} has children or a non-empty bag"))
        elif node.kind is NodeKind.JOIN:
            if len(kids) != 2:
                violations.append(Violation("N.2", f"join {i} has {len(kids)} children"))
            elif kids[0] != bag or kids[1] != bag:
                violations.append(Violation("join bag mismatch", f"join {i} children {node.children}"))
        elif len(kids) != 1:
            violations.append(Violation("N.2", f"{node.kind.value} node {i} has {len(kids)} children"))
        elif node.kind is NodeKind.INTRODUCE_VERTEX:
            v = node.vertex
            if v is None or v in kids[0] or bag != kids[0] | {v}:
                violations.append(Violation("N.2", f"introduce-vertex {i} of {v} does not extend its child"))
        elif node.kind is NodeKind.FORGET:
            u = node.vertex
            if u is None or u not in kids[0] or bag != kids[0] - {u}:
                violations.append(Violation("N.2", f"forget {i} of {u} does not shrink its child"))
            else:
                forgotten.setdefault(u, []).append(i)
        elif node.kind is NodeKind.INTRODUCE_EDGE:
            edge = node.edge
            if edge is None or bag != kids[0] or not set(edge) <= bag:
                violations.append(Violation("N.2", f"introduce-edge {i} of {edge} outside its bag"))
            elif edge[0] >= edge[1] or not g.has_edge(*edge):
                violations.append(Violation("N.2", f"introduce-edge {i} names non-edge {edge}"))
            else:
                introduced.setdefault(edge, []).append(i)

    for edge, where in sorted(introduced.items()):
        if len(where) > 1:
            violations.append(Violation("edge multiplicity", f"edge {edge} introduced at nodes {where}"))
    for edge in g.edges:
        if edge not in introduced:
            violations.append(Violation("edge missing", f"edge {edge} never introduced"))
    for v, where in sorted(forgotten.items()):
        if len(where) > 1:
            violations.append(Violation("forget multiplicity", f"vertex {v} forgotten at nodes {where}"))

    # Underlying bags must still form a tree decomposition.
    bags = [node.bag for node in nodes]
    tree_edges = [(i, c) for i, node in enumerate(nodes) for c in node.children]
    violations.extend(validate_td(g, TreeDecomposition.of(bags, tree_edges)))

    # Nearest join strictly above each node; parents always have larger indices.
    join_above: List[Optional[int]] = [None] * len(nodes)
    for i in reversed(range(len(nodes))):
        p = parent[i]
        if p is not None:
            join_above[i] = p if nodes[p].kind is NodeKind.JOIN else join_above[p]

    for edge, where in introduced.items():
        for i in where:
            above = parent[i]
            while above is not None and nodes[above].kind is NodeKind.INTRODUCE_EDGE:
                above = parent[above]
            if above is None or nodes[above].kind is not NodeKind.FORGET or nodes[above].vertex not in edge:
                violations.append(
                    Violation("deferred placement", f"edge {edge} at node {i} is not below a forget of an endpoint")
                )
            walker = join_above[i]
            while walker is not None:
                if set(edge) <= set(nodes[walker].bag):
                    violations.append(Violation("join edge below join", f"edge {edge} introduced below join {walker}"))
                    break
                walker = join_above[walker]
    return violations


def path_decomposition(bags: Sequence[Iterable[int]]) -> TreeDecomposition:
    """Decomposition whose tree is the path 0-1-...-N-1."""
    return TreeDecomposition.of(bags, [(i, i + 1) for i in range(len(bags) - 1)])


def grid_path_decomposition(p: int, q: int) -> TreeDecomposition:
    """Width-p path decomposition of the p x q grid from graph.grid_graph."""
    n = p * q
    if n <= p + 1:
        return path_decomposition([range(n)])
    return path_decomposition([range(i, i + p + 1) for i in range(n - p)])


def read_td(text: str) -> TreeDecomposition:
    """Parse the PACE .td format (1-based bag ids and vertices).

    Raises:
        GraphFormatError: On malformed lines or a bag count that disagrees
            with the "s td" header.
    """
    header = None
    bags: Dict[int, FrozenSet[int]] = {}
    edges: List[Tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tokens = line.split()
        try:
            if tokens[0] == "s":
                if len(tokens) != 5 or tokens[1] != "td":
                    raise GraphFormatError(f"expected 's td N maxbag n', got {line!r}", lineno)
                header = (int(tokens[2]), lineno)
            elif tokens[0] == "b":
                index = int(tokens[1]) - 1
                if header is None or not 0 <= index < header[0] or index in bags:
                    raise GraphFormatError(f"unexpected bag line {line!r}", lineno)
                bags[index] = frozenset(int(v) - 1 for v in tokens[2:])
            elif len(tokens) == 2:
                edges.append((int(tokens[0]) - 1, int(tokens[1]) - 1))
            else:
                raise GraphFormatError(f"unrecognized line {line!r}", lineno)
        except ValueError:
            raise GraphFormatError(f"non-integer token in {line!r}", lineno) from None
    if header is None:
        raise GraphFormatError("missing 's td' header")
    count, header_line = header
    if len(bags) != count:
        raise GraphFormatError(f"header declares {count} bags, found {len(bags)}", header_line)
    return TreeDecomposition.of([bags[i] for i in range(count)], edges)


def write_td(td: TreeDecomposition, n: int) -> str:
    """Serialize in the PACE .td format."""
    lines = [f"s td {len(td.bags)} {td.width + 1} {n}"]
    for i, bag in enumerate(td.bags, start=1):
        lines.append(" ".join(["b", str(i)] + [str(v + 1) for v in sorted(bag)]))
    for a, b in td.tree_edges:
        lines.append(f"{a + 1} {b + 1}")
    return "\n".join(lines) + "\n"


def format_nice(nd: NiceDecomposition) -> str:
    """Debug listing, one node per line in post-order."""
    lines = []
    for i, node in enumerate(nd.nodes):
        detail = ""
        if node.vertex is not None:
            detail = f" v={node.vertex}"
        elif node.edge is not None:
            detail = f" e={node.edge[0]}-{node.edge[1]}"
        children = ",".join(str(c) for c in node.children)
        lines.append(f"{i} {node.kind.value}{detail} bag=[{' '.join(map(str, node.bag))}] children=[{children}]")
    lines.append(f"root {nd.root}")
    return "\n".join(lines) + "\n"
