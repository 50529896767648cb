"""c-Disconnected Matching over a nice tree decomposition.

Each bag vertex carries a state d in {0, 1, 2} (as for induced matching)
and a component color f in {0..c}, with d = 0 exactly when f = 0. Edges of
G_x may only join equal nonzero colors, so color classes are unions of
components of G[V_M]. The table also records the set of colors used so far
as a bitmask over 1..c; the root entry with all c colors used holds the
largest number of saturated vertices.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from ..core.colorings import digit, insert_digit, position, remove_digit, with_digit
from ..core.decomposition import NiceDecomposition, NiceNode, NodeKind, validate_nice
from ..core.errors import DecompositionError, ParameterError
from ..core.graph import Graph, Matching
from ..core.models import SolveResult
from ..core.semiring import NEG_INF, Domain, SetFunction, convolve_maxsum

Key = Tuple[int, int, int]  # (packed d, packed f, used-color mask)


@dataclass(frozen=True)
class CDiscTable:
    bag: Tuple[int, ...]
    c: int
    entries: Dict[Key, int]  # absent keys read as -infinity

    def get(self, key: Key) -> int:
        return self.entries.get(key, NEG_INF)


def _put(entries: Dict[Key, int], key: Key, value: int) -> None:
    if value > entries.get(key, NEG_INF):
        entries[key] = value


def leaf_table(c: int) -> CDiscTable:
    return CDiscTable((), c, {(0, 0, 0): 0})


def _introduce_vertex(child: CDiscTable, v: int) -> CDiscTable:
    c = child.c
    bag = tuple(sorted(child.bag + (v,)))
    p = position(bag, v)
    out: Dict[Key, int] = {}
    for (d, f, used), value in child.entries.items():
        _put(out, (insert_digit(d, p, 3, 0), insert_digit(f, p, c + 1, 0), used), value)
        gray = insert_digit(d, p, 3, 2)
        for color in range(1, c + 1):
            # new color class or one already in use
            _put(out, (gray, insert_digit(f, p, c + 1, color), used | 1 << (color - 1)), value + 1)
    return CDiscTable(bag, c, out)


def _introduce_edge(child: CDiscTable, u: int, v: int) -> CDiscTable:
    c = child.c
    pu, pv = position(child.bag, u), position(child.bag, v)
    out: Dict[Key, int] = {}
    for (d, f, used), value in child.entries.items():
        du, dv = digit(d, pu, 3), digit(d, pv, 3)
        if du == 0 or dv == 0:
            _put(out, (d, f, used), value)
            continue
        if digit(f, pu, c + 1) != digit(f, pv, c + 1):
            continue
        _put(out, (d, f, used), value)
        if du == 2 and dv == 2:
            _put(out, (with_digit(with_digit(d, pu, 3, 1), pv, 3, 1), f, used), value)
    return CDiscTable(child.bag, child.c, out)


def _forget(child: CDiscTable, u: int) -> CDiscTable:
    c = child.c
    p = position(child.bag, u)
    bag = tuple(x for x in child.bag if x != u)
    out: Dict[Key, int] = {}
    for (d, f, used), value in child.entries.items():
        if digit(d, p, 3) == 2:
            continue
        _put(out, (remove_digit(d, p, 3), remove_digit(f, p, c + 1), used), value)
    return CDiscTable(bag, c, out)


def _combine_states(d1: int, d2: int, k: int) -> Optional[int]:
    """Parent d for a correct pair of child states, or None."""
    d = 0
    for i in range(k):
        a, b = (d1 // 3**i) % 3, (d2 // 3**i) % 3
        if a == 0 and b == 0:
            state = 0
        elif a == 2 and b == 2:
            state = 2
        elif {a, b} == {1, 2}:
            state = 1
        else:
            return None
        d += state * 3**i
    return d


def naive_join(left: CDiscTable, right: CDiscTable) -> CDiscTable:
    """Join by pairing every left entry with every right entry of the same f."""
    if left.bag != right.bag or left.c != right.c:
        raise ParameterError(f"join bag mismatch: {left.bag} vs {right.bag}")
    k = len(left.bag)
    by_f: Dict[int, List[Tuple[int, int, int]]] = defaultdict(list)
    for (d, f, used), value in right.entries.items():
        by_f[f].append((d, used, value))
    out: Dict[Key, int] = {}
    for (d1, f, used1), v1 in left.entries.items():
        saturated = sum(1 for i in range(k) if (f // (left.c + 1) ** i) % (left.c + 1))
        for d2, used2, v2 in by_f.get(f, ()):
            d = _combine_states(d1, d2, k)
            if d is not None:
                _put(out, (d, f, used1 | used2), v1 + v2 - saturated)
    return CDiscTable(left.bag, left.c, out)


def convolution_join(left: CDiscTable, right: CDiscTable, bound: int) -> CDiscTable:
    """Join by max-sum convolution over the black set, per shared f and color-set pair."""
    if left.bag != right.bag or left.c != right.c:
        raise ParameterError(f"join bag mismatch: {left.bag} vs {right.bag}")
    k, base = len(left.bag), left.c + 1

    def grouped(table: CDiscTable) -> Dict[int, Dict[int, Dict[int, int]]]:
        groups: Dict[int, Dict[int, Dict[int, int]]] = defaultdict(lambda: defaultdict(dict))
        for (d, f, used), value in table.entries.items():
            groups[f][used][d] = value
        return groups

    left_groups, right_groups = grouped(left), grouped(right)
    out: Dict[Key, int] = {}
    for f, left_by_used in left_groups.items():
        if f not in right_groups:
            continue
        support = [i for i in range(k) if (f // base**i) % base]
        size = 1 << len(support)
        gray = sum(2 * 3**i for i in support)
        codes = [gray - sum(3**i for j, i in enumerate(support) if mask >> j & 1) for mask in range(size)]

        def as_function(by_d: Dict[int, int]) -> SetFunction:
            values = np.array([by_d.get(code, NEG_INF) for code in codes], dtype=np.int64)
            return SetFunction(len(support), values, Domain.MAX_SUM)

        right_functions = {used: as_function(by_d) for used, by_d in right_groups[f].items()}
        for used1, by_d1 in left_by_used.items():
            f1 = as_function(by_d1)
            for used2, f2 in right_functions.items():
                h = convolve_maxsum(f1, f2, bound).values.tolist()
                for mask, value in enumerate(h):
                    if value != NEG_INF:
                        _put(out, (codes[mask], f, used1 | used2), value - len(support))
    return CDiscTable(left.bag, left.c, out)


def _value_bound(left: CDiscTable, right: CDiscTable) -> int:
    return max([0] + list(left.entries.values()) + list(right.entries.values()))


def cdisc_transition(
    node: NiceNode,
    child_tables: Sequence[CDiscTable],
    c: int,
    join_mode: str = "conv",
    bound: Optional[int] = None,
) -> CDiscTable:
    """Table of a node from its children's tables."""
    if node.kind is NodeKind.LEAF:
        return leaf_table(c)
    if node.kind is NodeKind.INTRODUCE_VERTEX:
        return _introduce_vertex(child_tables[0], node.vertex)
    if node.kind is NodeKind.INTRODUCE_EDGE:
        return _introduce_edge(child_tables[0], *node.edge)
    if node.kind is NodeKind.FORGET:
        return _forget(child_tables[0], node.vertex)
    left, right = child_tables
    if join_mode == "naive":
        return naive_join(left, right)
    return convolution_join(left, right, _value_bound(left, right) if bound is None else bound)


class CDisconnectedSolver:
    """Bottom-up evaluation of the c-disconnected matching tables."""

    def __init__(self, g: Graph, nd: NiceDecomposition, c: int, join_mode: str = "conv", validate: bool = True):
        if c < 2:
            raise ParameterError(
                f"c={c}: 1-disconnected matching is the same as Maximum Matching and is not solved by this DP"
            )
        if c > g.n:
            raise ParameterError(f"c={c} exceeds the vertex count {g.n}")
        if join_mode not in ("conv", "naive"):
            raise ParameterError(f"unknown join mode {join_mode!r}")
        self.g = g
        self.nd = nd
        self.c = c
        self.join_mode = join_mode
        self.logger = logging.getLogger(__name__)
        if validate:
            violations = validate_nice(g, nd)
            if violations:
                raise DecompositionError(f"invalid nice decomposition: {violations[0]}")

    def join(self, left: CDiscTable, right: CDiscTable) -> CDiscTable:
        if self.join_mode == "naive":
            return naive_join(left, right)
        return convolution_join(left, right, _value_bound(left, right))

    def transition(self, node: NiceNode, child_tables: Sequence[CDiscTable]) -> CDiscTable:
        if node.kind is NodeKind.JOIN:
            return self.join(*child_tables)
        return cdisc_transition(node, child_tables, self.c, self.join_mode)

    def root_table(self) -> CDiscTable:
        tables: List[Optional[CDiscTable]] = [None] * len(self.nd.nodes)
        for i, node in enumerate(self.nd.nodes):
            children = [tables[c] for c in node.children]
            tables[i] = self.transition(node, children)
            self.logger.debug(f"node {i} {node.kind.value}: {len(tables[i].entries)} entries")
            for c in node.children:
                tables[c] = None
        return tables[self.nd.root]

    def max_saturated(self) -> Optional[int]:
        """Root value with all c colors used, or None for -infinity."""
        value = self.root_table().get((0, 0, (1 << self.c) - 1))
        return None if value == NEG_INF else value

    def solve(self, ell: int, problem: str = "cdisc") -> SolveResult:
        best = self.max_saturated()
        self.logger.info(f"{problem}: c={self.c}, width {self.nd.width}, {len(self.nd)} nodes, max saturated {best}")
        return SolveResult(
            problem=problem,
            ell=ell,
            c=self.c,
            answer=best is not None and best >= 2 * ell,
            max_saturated=best,
        )


def solve_cdisc(g: Graph, nd: NiceDecomposition, c: int, ell: int, join_mode: str = "conv") -> SolveResult:
    """Decide whether g has a matching with ell edges inducing at least c components.

    Raises:
        ParameterError: If c < 2 or c > n.
        DecompositionError: If nd is not a valid nice decomposition of g.
    """
    return CDisconnectedSolver(g, nd, c, join_mode).solve(ell)


def solve_disconnected(g: Graph, nd: NiceDecomposition, c: int, ell: int, join_mode: str = "conv") -> SolveResult:
    """Disconnected Matching with c taken from the input.

    c = 1 is plain maximum matching and is answered with the blossom
    algorithm instead of the table DP.

    Raises:
        ParameterError: If c is outside 1..n//2.
    """
    if not 1 <= c <= g.n // 2:
        raise ParameterError(f"c={c} out of range 1..{g.n // 2}")
    if c == 1:
        logging.getLogger(__name__).warning("c=1 is maximum matching; answering with the blossom algorithm")
        mu = len(maximum_matching(g))
        return SolveResult(problem="disc", ell=ell, c=1, answer=mu >= ell, max_saturated=2 * mu if mu else None)
    return CDisconnectedSolver(g, nd, c, join_mode).solve(ell, problem="disc")


def maximum_matching(g: Graph) -> Matching:
    """A maximum matching of g; also the largest 1-disconnected matching when nonempty."""
    return Matching.of(nx.max_weight_matching(g.nx_graph, maxcardinality=True))
