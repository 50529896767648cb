"""Induced Matching over a nice tree decomposition.

Bag colorings use 0 (outside the matching), 1 (matched inside G_x) and
2 (saturated but matched later). A table entry holds the largest number of
saturated vertices over valid extensions, or NEG_INF.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..core.colorings import digit, insert_digit, position, remove_digit, with_digit
from ..core.decomposition import NiceDecomposition, NiceNode, NodeKind, validate_nice
from ..core.errors import DecompositionError, ParameterError
from ..core.graph import Graph
from ..core.models import SolveResult
from ..core.semiring import NEG_INF, Domain, SetFunction, convolve_maxsum

JOIN_MODES = ("conv", "naive")


@dataclass(frozen=True)
class InducedTable:
    bag: Tuple[int, ...]
    values: np.ndarray  # length 3**len(bag), int64


def _bump(values: np.ndarray, amount: int) -> np.ndarray:
    return np.where(values == NEG_INF, NEG_INF, values + amount)


def leaf_table() -> InducedTable:
    return InducedTable((), np.zeros(1, dtype=np.int64))


def _introduce_vertex(child: InducedTable, v: int) -> InducedTable:
    bag = tuple(sorted(child.bag + (v,)))
    p = position(bag, v)
    codes = np.arange(3 ** len(bag), dtype=np.int64)
    color = digit(codes, p, 3)
    inherited = child.values[remove_digit(codes, p, 3)]
    values = np.where(color == 0, inherited, np.where(color == 2, _bump(inherited, 1), NEG_INF))
    return InducedTable(bag, values.astype(np.int64))


def _introduce_edge(child: InducedTable, u: int, v: int) -> InducedTable:
    bag = child.bag
    pu, pv = position(bag, u), position(bag, v)
    codes = np.arange(3 ** len(bag), dtype=np.int64)
    cu, cv = digit(codes, pu, 3), digit(codes, pv, 3)
    values = child.values.copy()
    values[(cu > 0) & (cv > 0)] = NEG_INF
    # u and v matched to each other: both were waiting (2) below.
    paired = (cu == 1) & (cv == 1)
    waiting = with_digit(with_digit(codes, pu, 3, 2), pv, 3, 2)
    values[paired] = child.values[waiting[paired]]
    return InducedTable(bag, values)


def _forget(child: InducedTable, u: int) -> InducedTable:
    p = position(child.bag, u)
    bag = tuple(x for x in child.bag if x != u)
    codes = np.arange(3 ** len(bag), dtype=np.int64)
    unused = child.values[insert_digit(codes, p, 3, 0)]
    matched = child.values[insert_digit(codes, p, 3, 1)]
    return InducedTable(bag, np.maximum(unused, matched))


def naive_join(left: InducedTable, right: InducedTable) -> InducedTable:
    """Join by enumerating every correct pair of child colorings."""
    if left.bag != right.bag:
        raise ParameterError(f"join bag mismatch: {left.bag} vs {right.bag}")
    k = len(left.bag)
    lv, rv = left.values.tolist(), right.values.tolist()
    out = np.full(3**k, NEG_INF, dtype=np.int64)
    for code in range(3**k):
        colors = [(code // 3**i) % 3 for i in range(k)]
        ones = [3**i for i, c in enumerate(colors) if c == 1]
        nonzero = sum(1 for c in colors if c)
        best = NEG_INF
        for split in range(1 << len(ones)):
            # ones in split are 1 on the left and 2 on the right
            to_left = sum(w for j, w in enumerate(ones) if not split >> j & 1)
            to_right = sum(w for j, w in enumerate(ones) if split >> j & 1)
            a, b = lv[code + to_left], rv[code + to_right]
            if a != NEG_INF and b != NEG_INF:
                best = max(best, a + b - nonzero)
        out[code] = best
    return InducedTable(left.bag, out)


def convolution_join(left: InducedTable, right: InducedTable, bound: int) -> InducedTable:
    """Join by fixing the white set R and max-sum convolving over the rest."""
    if left.bag != right.bag:
        raise ParameterError(f"join bag mismatch: {left.bag} vs {right.bag}")
    k = len(left.bag)
    out = np.full(3**k, NEG_INF, dtype=np.int64)
    for white in range(1 << k):
        free = [i for i in range(k) if not white >> i & 1]
        size = 1 << len(free)
        # code(A) = all free positions gray, minus one per position in A (gray -> black)
        gray = sum(2 * 3**i for i in free)
        lowered = np.zeros(size, dtype=np.int64)
        masks = np.arange(size, dtype=np.int64)
        for j, i in enumerate(free):
            lowered += ((masks >> j) & 1) * 3**i
        codes = gray - lowered
        f = SetFunction(len(free), left.values[codes], Domain.MAX_SUM)
        g = SetFunction(len(free), right.values[codes], Domain.MAX_SUM)
        h = convolve_maxsum(f, g, bound).values
        out[codes] = _bump(h, -len(free))
    return InducedTable(left.bag, out)


def induced_join(left: InducedTable, right: InducedTable, join_mode: str = "conv", bound: Optional[int] = None) -> InducedTable:
    """Combine the tables of a join node's two children.

    Args:
        left: Table of the first child.
        right: Table of the second child, same bag.
        join_mode: "conv" for the 3^k convolution join, "naive" for 4^k.
        bound: Value bound for the convolution; defaults to the largest
            finite child value.
    """
    if join_mode == "naive":
        return naive_join(left, right)
    if join_mode != "conv":
        raise ParameterError(f"unknown join mode {join_mode!r}")
    if bound is None:
        finite = [int(t.values[t.values != NEG_INF].max(initial=0)) for t in (left, right)]
        bound = max(finite)
    return convolution_join(left, right, bound)


def induced_transition(
    node: NiceNode,
    child_tables: Sequence[InducedTable],
    join_mode: str = "conv",
    bound: Optional[int] = None,
) -> InducedTable:
    """Table of a node from its children's tables."""
    if node.kind is NodeKind.LEAF:
        return leaf_table()
    if node.kind is NodeKind.INTRODUCE_VERTEX:
        return _introduce_vertex(child_tables[0], node.vertex)
    if node.kind is NodeKind.INTRODUCE_EDGE:
        return _introduce_edge(child_tables[0], *node.edge)
    if node.kind is NodeKind.FORGET:
        return _forget(child_tables[0], node.vertex)
    return induced_join(child_tables[0], child_tables[1], join_mode, bound)


class InducedMatchingSolver:
    """Bottom-up evaluation of the induced matching tables."""

    def __init__(self, g: Graph, nd: NiceDecomposition, join_mode: str = "conv", validate: bool = True):
        if join_mode not in JOIN_MODES:
            raise ParameterError(f"unknown join mode {join_mode!r}")
        self.g = g
        self.nd = nd
        self.join_mode = join_mode
        self.logger = logging.getLogger(__name__)
        if validate:
            violations = validate_nice(g, nd)
            if violations:
                raise DecompositionError(f"invalid nice decomposition: {violations[0]}")

    def join(self, left: InducedTable, right: InducedTable) -> InducedTable:
        return induced_join(left, right, self.join_mode)

    def transition(self, node: NiceNode, child_tables: Sequence[InducedTable]) -> InducedTable:
        if node.kind is NodeKind.JOIN:
            return self.join(*child_tables)
        return induced_transition(node, child_tables, self.join_mode)

    def root_table(self) -> InducedTable:
        tables: List[Optional[InducedTable]] = [None] * len(self.nd.nodes)
        for i, node in enumerate(self.nd.nodes):
            children = [tables[c] for c in node.children]
            tables[i] = self.transition(node, children)
            for c in node.children:
                tables[c] = None
        return tables[self.nd.root]

    def max_saturated(self) -> int:
        return int(self.root_table().values[0])

    def solve(self, ell: int) -> SolveResult:
        best = self.max_saturated()
        self.logger.info(
            f"induced: width {self.nd.width}, {len(self.nd)} nodes, "
            f"max saturated {best}, join {self.join_mode}"
        )
        return SolveResult(problem="induced", ell=ell, answer=best >= 2 * ell, max_saturated=best)


def solve_induced(g: Graph, nd: NiceDecomposition, ell: int, join_mode: str = "conv") -> SolveResult:
    """Decide whether g has an induced matching with ell edges.

    Raises:
        DecompositionError: If nd is not a valid nice decomposition of g.
    """
    return InducedMatchingSolver(g, nd, join_mode).solve(ell)
