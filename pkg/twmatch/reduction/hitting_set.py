"""k x k Hitting Set to Disconnected Matching.

For every set X of the family S_1..S_m, P_1..P_k (P_i is row i) the graph
gets one vertex per cell (i, j) of X, adjacent to the row vertex v^L_i and
the column vertex v^R_j. Star gadgets hang a pendant vertex on every v^L_i
and v^R_j and one vertex u^X adjacent to all of V^X. The instance asks for
a matching of 3k + m edges inducing at least k components.
"""

import logging
import re
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from ..core.decomposition import TreeDecomposition, path_decomposition, validate_td
from ..core.errors import ParameterError, ReductionInputError
from ..core.graph import Edge, Graph, Matching
from ..sweeps.presets import REDUCTION_DEFAULTS

logger = logging.getLogger(__name__)

Cell = Tuple[int, int]

_CELL = re.compile(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")


def validate_family(k: int, sets: Sequence[Iterable[Cell]]) -> None:
    """Check cell ranges and that no set has two cells in one row.

    Raises:
        ReductionInputError: On a violated row constraint, an out-of-range
            cell or k < 1.
    """
    if k < 1:
        raise ReductionInputError(f"k must be at least 1, got {k}")
    for s, cells in enumerate(sets, start=1):
        rows = set()
        for i, j in cells:
            if not (1 <= i <= k and 1 <= j <= k):
                raise ReductionInputError(f"set {s}: cell ({i}, {j}) outside the {k} x {k} grid")
            if i in rows:
                raise ReductionInputError(f"set {s} has two cells in row {i}")
            rows.add(i)


def parse_sets(text: str) -> List[List[Cell]]:
    """Parse "(1,1) (2,1); (1,2)" into sets separated by ';'."""
    if not text.strip():
        return []
    sets = []
    for chunk in text.split(";"):
        cells = [(int(i), int(j)) for i, j in _CELL.findall(chunk)]
        leftover = _CELL.sub("", chunk).replace(",", "").strip()
        if leftover:
            raise ReductionInputError(f"cannot parse {chunk.strip()!r} as a list of (i,j) cells")
        sets.append(cells)
    return sets


def add_star_gadget(g: Graph, vertices: Iterable[int]) -> Tuple[Graph, int]:
    """Add one vertex adjacent to exactly X.

    Raises:
        ReductionInputError: If X is empty.
    """
    xs = sorted(set(vertices))
    if not xs:
        raise ReductionInputError("a star gadget needs a non-empty vertex set")
    new = g.n
    return Graph.from_edges(g.n + 1, list(g.edges) + [(x, new) for x in xs]), new


def extend_path_with_gadget(bags: List[FrozenSet[int]], vertices: Iterable[int], new: int) -> List[FrozenSet[int]]:
    """Insert B + {new} right after the first path bag B containing X."""
    xs = set(vertices)
    for index, bag in enumerate(bags):
        if xs <= bag:
            return bags[: index + 1] + [bag | {new}] + bags[index + 1 :]
    raise ReductionInputError(f"no bag contains the gadget set {sorted(xs)}")


@dataclass(frozen=True)
class ReductionInstance:
    k: int
    sets: Tuple[Tuple[Cell, ...], ...]
    graph: Graph
    ell: int
    c: int
    path_decomposition: TreeDecomposition
    labels: Tuple[str, ...]
    ids: Dict[str, int] = field(repr=False, compare=False)

    @property
    def m(self) -> int:
        return len(self.sets)

    def family(self) -> List[Tuple[str, Tuple[Cell, ...]]]:
        """Named sets in path order: S1..Sm, then the rows P1..Pk."""
        named = [(f"S{s}", cells) for s, cells in enumerate(self.sets, start=1)]
        named += [(f"P{i}", tuple((i, j) for j in range(1, self.k + 1))) for i in range(1, self.k + 1)]
        return named

    def to_sidecar(self) -> Dict[str, object]:
        return {
            "k": self.k,
            "m": self.m,
            "ell": self.ell,
            "c": self.c,
            "sets": [[list(cell) for cell in cells] for cells in self.sets],
            "labels": list(self.labels),
        }


def _family(k: int, sets: Sequence[Sequence[Cell]]) -> List[Tuple[str, Tuple[Cell, ...]]]:
    named = [(f"S{s}", tuple(sorted(cells))) for s, cells in enumerate(sets, start=1)]
    named += [(f"P{i}", tuple((i, j) for j in range(1, k + 1))) for i in range(1, k + 1)]
    return named


def build_reduction(k: int, sets: Sequence[Iterable[Cell]]) -> ReductionInstance:
    """Build the Disconnected Matching instance (G, 3k + m, k) and its path decomposition.

    Vertex ids: v^L_1..k, v^R_1..k, the cell vertices of S1..Sm, P1..Pk in
    order, then gadgets u^L_1..k, u^R_1..k and u^X per set.

    Raises:
        ReductionInputError: On a row-constraint violation or an empty set.
        ParameterError: Beyond desk scale (k or m above REDUCTION_DEFAULTS).
    """
    family_sets = [list(cells) for cells in sets]
    validate_family(k, family_sets)
    if k > REDUCTION_DEFAULTS["max_k"] or len(family_sets) > REDUCTION_DEFAULTS["max_sets"]:
        raise ParameterError(
            f"k={k}, m={len(family_sets)} beyond limits k<={REDUCTION_DEFAULTS['max_k']}, "
            f"m<={REDUCTION_DEFAULTS['max_sets']}"
        )
    for s, cells in enumerate(family_sets, start=1):
        if not cells:
            raise ReductionInputError(f"set {s} is empty")

    labels: List[str] = []
    ids: Dict[str, int] = {}

    def new_vertex(label: str) -> int:
        ids[label] = len(labels)
        labels.append(label)
        return ids[label]

    for i in range(1, k + 1):
        new_vertex(f"v^L_{i}")
    for j in range(1, k + 1):
        new_vertex(f"v^R_{j}")
    family = _family(k, family_sets)
    for name, cells in family:
        for i, j in cells:
            new_vertex(f"v^{name}_{i},{j}")

    edges: List[Edge] = []
    for name, cells in family:
        for i, j in cells:
            cell = ids[f"v^{name}_{i},{j}"]
            edges.append((ids[f"v^L_{i}"], cell))
            edges.append((cell, ids[f"v^R_{j}"]))
    g = Graph.from_edges(len(labels), edges)

    core = frozenset(range(2 * k))
    bags = [core | {ids[f"v^{name}_{i},{j}"] for i, j in cells} for name, cells in family]

    for side in ("L", "R"):
        for i in range(1, k + 1):
            target = ids[f"v^{side}_{i}"]
            g, u = add_star_gadget(g, [target])
            new_vertex(f"u^{side}_{i}")
            bags = extend_path_with_gadget(bags, [target], u)
    for name, cells in family:
        members = [ids[f"v^{name}_{i},{j}"] for i, j in cells]
        g, u = add_star_gadget(g, members)
        new_vertex(f"u^{name}")
        bags = extend_path_with_gadget(bags, members, u)

    td = path_decomposition(bags)
    violations = validate_td(g, td)
    if violations or td.width > 3 * k:
        raise RuntimeError(f"reduction produced a bad path decomposition: width {td.width}, {violations[:3]}")
    logger.info(f"reduction k={k}, m={len(family_sets)}: n={g.n}, edges={g.m}, pathwidth bound {td.width}")
    return ReductionInstance(
        k=k,
        sets=tuple(tuple(sorted(cells)) for cells in family_sets),
        graph=g,
        ell=3 * k + len(family_sets),
        c=k,
        path_decomposition=td,
        labels=tuple(labels),
        ids=ids,
    )


@dataclass(frozen=True)
class EdgeClasses:
    type_i: FrozenSet[Edge]  # pendant edges v^L_i u^L_i, v^R_j u^R_j
    type_ii: FrozenSet[Edge]  # cell vertex to its set gadget u^X
    type_iii: FrozenSet[Edge]  # cell vertex to v^L_i or v^R_j


def classify_edges(inst: ReductionInstance) -> EdgeClasses:
    """Partition the instance's edges into the three construction types.

    Raises:
        ParameterError: If the graph is not the one built from (k, sets).
    """
    if build_reduction(inst.k, inst.sets).graph != inst.graph:
        raise ParameterError("instance graph does not match its hitting-set construction")
    ids = inst.ids
    norm = lambda u, v: (u, v) if u < v else (v, u)  # noqa: E731
    type_i = set()
    for side in ("L", "R"):
        for i in range(1, inst.k + 1):
            type_i.add(norm(ids[f"v^{side}_{i}"], ids[f"u^{side}_{i}"]))
    type_ii, type_iii = set(), set()
    for name, cells in inst.family():
        for i, j in cells:
            cell = ids[f"v^{name}_{i},{j}"]
            type_ii.add(norm(cell, ids[f"u^{name}"]))
            type_iii.add(norm(ids[f"v^L_{i}"], cell))
            type_iii.add(norm(ids[f"v^R_{j}"], cell))
    return EdgeClasses(frozenset(type_i), frozenset(type_ii), frozenset(type_iii))


def witness_matching(inst: ReductionInstance, columns: Sequence[int]) -> Matching:
    """Matching of 3k + m edges with k components from a hitting set.

    Args:
        inst: Instance from build_reduction.
        columns: Chosen column of each row, 1-based, as from oracle.hitting_sets.

    Raises:
        ParameterError: If the choice does not hit every set.
    """
    ids = inst.ids
    chosen = {(i + 1, j) for i, j in enumerate(columns)}
    pairs = [(ids[f"v^L_{i}"], ids[f"u^L_{i}"]) for i in range(1, inst.k + 1)]
    pairs += [(ids[f"v^R_{j}"], ids[f"u^R_{j}"]) for j in range(1, inst.k + 1)]
    for name, cells in inst.family():
        hit = sorted(chosen.intersection(cells))
        if not hit:
            raise ParameterError(f"columns {list(columns)} miss set {name}")
        i, j = hit[0]
        pairs.append((ids[f"v^{name}_{i},{j}"], ids[f"u^{name}"]))
    return Matching.of(pairs)


def normalize_matching(inst: ReductionInstance, matching: Matching) -> Matching:
    """Replace every Type-III edge by the Type-I edge at its v^L / v^R end."""
    classes = classify_edges(inst)
    partner = {}
    for u, v in classes.type_i:
        partner[u] = (u, v)
        partner[v] = (u, v)
    out = []
    for edge in matching.edges:
        if edge in classes.type_iii:
            anchor = next(x for x in edge if inst.labels[x].startswith(("v^L_", "v^R_")))
            out.append(partner[anchor])
        else:
            out.append(edge)
    return Matching.of(out)


def extract_hitting_set(inst: ReductionInstance, matching: Matching) -> Optional[Tuple[int, ...]]:
    """Read a hitting set off a normalized solution matching.

    Returns:
        Column per row, or None when the matching does not pick exactly one
        cell of every row set or the picked cells miss some set.
    """
    normalized = normalize_matching(inst, matching)
    saturated = normalized.vertices
    columns = []
    for i in range(1, inst.k + 1):
        picked = [j for j in range(1, inst.k + 1) if inst.ids[f"v^P{i}_{i},{j}"] in saturated]
        if len(picked) != 1:
            return None
        columns.append(picked[0])
    chosen = {(i + 1, j) for i, j in enumerate(columns)}
    if not all(chosen.intersection(cells) for cells in inst.sets):
        return None
    return tuple(columns)
