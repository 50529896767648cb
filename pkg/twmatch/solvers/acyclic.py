"""Acyclic Matching by Cut & Count.

Candidates are vertex sets X with a perfect matching in G[X] plus a marker
set P; the tables count, modulo 2, candidates together with consistent cuts
(X_l, X_r) that keep every marker on the left. Components without a marker
can sit on either side, so they cancel in pairs; with |P| <= |X| - |E(G[X])|
the surviving candidates are forests. Random vertex weights isolate a
single solution with probability at least 2/3 per trial.

A table maps the packed bag state (d, s) to a sparse GF(2) polynomial whose
monomials are packed accumulators (a, b, c, w): saturated vertices, edges of
G[X] introduced so far, markers and total weight. Every accumulator only
grows toward the root, so monomials that already exceed the root target
are dropped early.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..core.colorings import digit, insert_digit, position, remove_digit, with_digit
from ..core.decomposition import NiceDecomposition, NiceNode, NodeKind, min_fill_decompose, make_nice_deferred, validate_nice
from ..core.errors import CertificateError, DecompositionError, ParameterError
from ..core.graph import Graph, Matching, classify_matching, delete_vertices
from ..core.models import SolveResult
from ..core.semiring import Domain, SetFunction, convolve_ring2
from ..sweeps.presets import SOLVER_DEFAULTS

# Per-vertex states: index -> (d, side); side 0 = outside X, 1 = left, 2 = right
STATES = ((0, 0), (1, 1), (1, 2), (2, 1), (2, 2))
STATE_OF = {pair: i for i, pair in enumerate(STATES)}
BASE = len(STATES)


def trials_for_target(false_negative_target: float) -> int:
    """Fewest trials t with (1/3) ** t <= false_negative_target.

    Raises:
        ParameterError: If the target is outside (0, 1).
    """
    if not 0 < false_negative_target < 1:
        raise ParameterError(f"false-negative target must lie in (0, 1), got {false_negative_target}")
    trials = 1
    while 3.0**-trials > false_negative_target:
        trials += 1
    return trials


DEFAULT_TRIALS = trials_for_target(SOLVER_DEFAULTS["false_negative_target"])


@dataclass(frozen=True)
class WeightAssignment:
    """Weights w(v, F) for forest vertices and w(v, P) for markers, in 1..6n."""

    forest: Tuple[int, ...]
    marker: Tuple[int, ...]
    seed: Optional[int] = None

    @property
    def n(self) -> int:
        return len(self.forest)

    @property
    def limit(self) -> int:
        return 6 * self.n


def sample_weights(n: int, seed: Optional[int] = None) -> WeightAssignment:
    """Draw 2n independent uniform weights from 1..6n.

    Raises:
        ParameterError: If n < 1.
    """
    if n < 1:
        raise ParameterError(f"need at least one vertex, got n={n}")
    rng = np.random.default_rng(seed)
    draws = rng.integers(1, 6 * n, size=(2, n), endpoint=True)
    return WeightAssignment(
        forest=tuple(int(x) for x in draws[0]),
        marker=tuple(int(x) for x in draws[1]),
        seed=seed,
    )


@dataclass(frozen=True)
class AccumulatorBounds:
    """Packing of (a, b, c, w) into one integer and the admissible ranges."""

    a_max: int
    b_max: int
    c_max: int
    w_max: int
    bits: int

    @classmethod
    def for_target(cls, n: int, target: int) -> "AccumulatorBounds":
        return cls(
            a_max=target,
            b_max=max(0, min(n - 1, target - 1)),
            c_max=target,
            w_max=12 * n * n,
            bits=(4 * n + 4).bit_length(),
        )

    def pack(self, a: int, b: int, c: int, w: int) -> int:
        return a | b << self.bits | c << 2 * self.bits | w << 3 * self.bits

    def unpack(self, packed: int) -> Tuple[int, int, int, int]:
        mask = (1 << self.bits) - 1
        return (
            packed & mask,
            packed >> self.bits & mask,
            packed >> 2 * self.bits & mask,
            packed >> 3 * self.bits,
        )

    def admits(self, packed: int) -> bool:
        a, b, c, w = self.unpack(packed)
        return a <= self.a_max and b <= self.b_max and c <= self.c_max and b + c <= self.a_max and w <= self.w_max


class ParityPoly:
    """Sparse polynomial over GF(2) in packed accumulator monomials."""

    __slots__ = ("terms", "bounds")

    def __init__(self, terms: FrozenSet[int], bounds: AccumulatorBounds):
        self.terms = terms
        self.bounds = bounds

    def __xor__(self, other: "ParityPoly") -> "ParityPoly":
        return ParityPoly(self.terms ^ other.terms, self.bounds)

    def __mul__(self, other: "ParityPoly") -> "ParityPoly":
        out = set()
        for x in self.terms:
            for y in other.terms:
                s = x + y
                if self.bounds.admits(s):
                    if s in out:
                        out.remove(s)
                    else:
                        out.add(s)
        return ParityPoly(frozenset(out), self.bounds)

    def shift(self, delta: int) -> "ParityPoly":
        return ParityPoly(frozenset(t + delta for t in self.terms if self.bounds.admits(t + delta)), self.bounds)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, ParityPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def __repr__(self) -> str:
        return f"ParityPoly({sorted(self.bounds.unpack(t) for t in self.terms)})"


@dataclass(frozen=True)
class AcyclicTable:
    bag: Tuple[int, ...]
    entries: Dict[int, ParityPoly]  # packed base-5 state code -> nonzero polynomial


def _add(entries: Dict[int, ParityPoly], code: int, poly: ParityPoly) -> None:
    if not poly:
        return
    current = entries.get(code)
    total = poly if current is None else current ^ poly
    if total:
        entries[code] = total
    else:
        entries.pop(code, None)


class CutCountTables:
    """Node recurrences for one weight assignment and one saturation target."""

    def __init__(self, g: Graph, weights: WeightAssignment, target: int, join_mode: str = "conv"):
        if join_mode not in ("conv", "naive"):
            raise ParameterError(f"unknown join mode {join_mode!r}")
        self.g = g
        self.weights = weights
        self.bounds = AccumulatorBounds.for_target(g.n, target)
        self.join_mode = join_mode
        self.zero = ParityPoly(frozenset(), self.bounds)

    def leaf(self) -> AcyclicTable:
        return AcyclicTable((), {0: ParityPoly(frozenset([0]), self.bounds)})

    def introduce_vertex(self, child: AcyclicTable, v: int) -> AcyclicTable:
        bag = tuple(sorted(child.bag + (v,)))
        p = position(bag, v)
        grow = self.bounds.pack(1, 0, 0, self.weights.forest[v])
        out: Dict[int, ParityPoly] = {}
        for code, poly in child.entries.items():
            _add(out, insert_digit(code, p, BASE, 0), poly)
            raised = poly.shift(grow)
            _add(out, insert_digit(code, p, BASE, STATE_OF[(2, 1)]), raised)
            _add(out, insert_digit(code, p, BASE, STATE_OF[(2, 2)]), raised)
        return AcyclicTable(bag, out)

    def introduce_edge(self, child: AcyclicTable, u: int, v: int) -> AcyclicTable:
        pu, pv = position(child.bag, u), position(child.bag, v)
        one_edge = self.bounds.pack(0, 1, 0, 0)
        out: Dict[int, ParityPoly] = {}
        for code, poly in child.entries.items():
            su, sv = digit(code, pu, BASE), digit(code, pv, BASE)
            if su == 0 or sv == 0:
                _add(out, code, poly)
                continue
            (du, side_u), (dv, side_v) = STATES[su], STATES[sv]
            if side_u != side_v:
                continue
            counted = poly.shift(one_edge)
            _add(out, code, counted)
            if du == 2 and dv == 2:
                # u and v matched to each other
                matched = STATE_OF[(1, side_u)]
                _add(out, with_digit(with_digit(code, pu, BASE, matched), pv, BASE, matched), counted)
        return AcyclicTable(child.bag, out)

    def forget(self, child: AcyclicTable, u: int) -> AcyclicTable:
        p = position(child.bag, u)
        bag = tuple(x for x in child.bag if x != u)
        mark = self.bounds.pack(0, 0, 1, self.weights.marker[u])
        out: Dict[int, ParityPoly] = {}
        for code, poly in child.entries.items():
            d, side = STATES[digit(code, p, BASE)]
            if d == 2:
                continue
            rest = remove_digit(code, p, BASE)
            _add(out, rest, poly)
            if d == 1 and side == 1:
                _add(out, rest, poly.shift(mark))
        return AcyclicTable(bag, out)

    def _join_shift(self, bag: Tuple[int, ...], code: int) -> int:
        """Packed (|X cap bag|, 0, 0, w(X cap bag, F)) for the shared bag part."""
        inside = [v for i, v in enumerate(bag) if digit(code, i, BASE) != 0]
        return self.bounds.pack(len(inside), 0, 0, sum(self.weights.forest[v] for v in inside))

    def naive_join(self, left: AcyclicTable, right: AcyclicTable) -> AcyclicTable:
        if left.bag != right.bag:
            raise ParameterError(f"join bag mismatch: {left.bag} vs {right.bag}")
        k = len(left.bag)
        out: Dict[int, ParityPoly] = {}
        for c1, p1 in left.entries.items():
            lowered = p1.shift(-self._join_shift(left.bag, c1))
            for c2, p2 in right.entries.items():
                code = 0
                for i in reversed(range(k)):
                    (d1, s1), (d2, s2) = STATES[digit(c1, i, BASE)], STATES[digit(c2, i, BASE)]
                    if s1 != s2:
                        break
                    if d1 == 0:
                        state = 0
                    elif d1 == 2 and d2 == 2:
                        state = STATE_OF[(2, s1)]
                    elif {d1, d2} == {1, 2}:
                        state = STATE_OF[(1, s1)]
                    else:
                        break
                    code = code * BASE + state
                else:
                    _add(out, code, lowered * p2)
        return AcyclicTable(left.bag, out)

    def convolution_join(self, left: AcyclicTable, right: AcyclicTable) -> AcyclicTable:
        if left.bag != right.bag:
            raise ParameterError(f"join bag mismatch: {left.bag} vs {right.bag}")
        k = len(left.bag)
        out: Dict[int, ParityPoly] = {}
        for sides in range(3**k):
            inside = [i for i in range(k) if (sides // 3**i) % 3]
            side_of = {i: (sides // 3**i) % 3 for i in inside}
            codes = []
            for mask in range(1 << len(inside)):
                code = 0
                for j, i in enumerate(inside):
                    d = 1 if mask >> j & 1 else 2
                    code += STATE_OF[(d, side_of[i])] * BASE**i
                codes.append(code)
            if not any(c in left.entries for c in codes) or not any(c in right.entries for c in codes):
                continue
            lowered = self._join_shift(left.bag, codes[0])
            f = np.empty(len(codes), dtype=object)
            g = np.empty(len(codes), dtype=object)
            f[:] = [left.entries.get(c, self.zero).shift(-lowered) for c in codes]
            g[:] = [right.entries.get(c, self.zero) for c in codes]
            h = convolve_ring2(
                SetFunction(len(inside), f, Domain.RING_MOD2),
                SetFunction(len(inside), g, Domain.RING_MOD2),
            )
            for code, poly in zip(codes, h.values.tolist()):
                _add(out, code, poly)
        return AcyclicTable(left.bag, out)

    def transition(self, node: NiceNode, child_tables: Sequence[AcyclicTable]) -> AcyclicTable:
        if node.kind is NodeKind.LEAF:
            return self.leaf()
        if node.kind is NodeKind.INTRODUCE_VERTEX:
            return self.introduce_vertex(child_tables[0], node.vertex)
        if node.kind is NodeKind.INTRODUCE_EDGE:
            return self.introduce_edge(child_tables[0], *node.edge)
        if node.kind is NodeKind.FORGET:
            return self.forget(child_tables[0], node.vertex)
        if self.join_mode == "naive":
            return self.naive_join(*child_tables)
        return self.convolution_join(*child_tables)

    def root_polynomial(self, nd: NiceDecomposition) -> ParityPoly:
        tables: List[Optional[AcyclicTable]] = [None] * len(nd.nodes)
        for i, node in enumerate(nd.nodes):
            tables[i] = self.transition(node, [tables[c] for c in node.children])
            for c in node.children:
                tables[c] = None
        return tables[nd.root].entries.get(0, self.zero)

    def root_parities(self, nd: NiceDecomposition) -> Dict[Tuple[int, int, int, int], int]:
        """Odd root entries as {(a, b, c, w): 1}; every other admissible entry is even."""
        return {self.bounds.unpack(t): 1 for t in self.root_polynomial(nd).terms}


def acyclic_transition(
    node: NiceNode,
    child_tables: Sequence[AcyclicTable],
    weights: WeightAssignment,
    g: Graph,
    target: int,
    join_mode: str = "conv",
) -> AcyclicTable:
    """Table of a node from its children's tables for one weight assignment."""
    return CutCountTables(g, weights, target, join_mode).transition(node, child_tables)


def _root_accepts(poly: ParityPoly, target: int) -> Optional[Tuple[int, int]]:
    """(B, W) of some odd root entry [target, B, target - B, W], if any."""
    for a, b, c, w in sorted(poly.bounds.unpack(t) for t in poly.terms):
        if a == target and b <= target - 1 and c == target - b:
            return b, w
    return None


def trial_seeds(seed: Optional[int], trials: int) -> List[int]:
    return [int(s) for s in np.random.SeedSequence(seed).generate_state(trials)]


class AcyclicCutCountSolver:
    """Monte Carlo decision procedure; 'yes' answers are always correct."""

    def __init__(self, g: Graph, nd: NiceDecomposition, join_mode: str = "conv", validate: bool = True):
        self.g = g
        self.nd = nd
        self.join_mode = join_mode
        self.logger = logging.getLogger(__name__)
        if validate:
            violations = validate_nice(g, nd)
            if violations:
                raise DecompositionError(f"invalid nice decomposition: {violations[0]}")

    def run_trial(self, ell: int, seed: int) -> bool:
        weights = sample_weights(self.g.n, seed)
        tables = CutCountTables(self.g, weights, 2 * ell, self.join_mode)
        hit = _root_accepts(tables.root_polynomial(self.nd), 2 * ell)
        self.logger.debug(f"trial seed {seed}: {'odd entry at (B, W)=' + str(hit) if hit else 'no odd entry'}")
        return hit is not None

    def _run_parallel(self, ell: int, seeds: List[int], workers: int) -> List[bool]:
        run = partial(_trial_outcome, self.g, self.nd, self.join_mode, ell)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(run, seeds))

    def solve(
        self, ell: int, seed: Optional[int] = None, trials: int = DEFAULT_TRIALS, threads: int = 1
    ) -> SolveResult:
        if not 1 <= ell <= self.g.n // 2:
            raise ParameterError(f"ell={ell} out of range 1..{self.g.n // 2}")
        if trials < 1:
            raise ParameterError(f"trials must be positive, got {trials}")
        seeds = trial_seeds(seed, trials)
        successful: Optional[int] = None
        if threads > 1:
            outcomes = self._run_parallel(ell, seeds, threads)
            hits = [i for i, ok in enumerate(outcomes) if ok]
            successful = hits[0] if hits else None
            ran = trials
        else:
            ran = 0
            for i, s in enumerate(seeds):
                ran += 1
                if self.run_trial(ell, s):
                    successful = i
                    break
        self.logger.info(
            f"acyclic: ell={ell}, width {self.nd.width}, {len(self.nd)} nodes, "
            f"{ran} trial(s), {'yes at trial ' + str(successful) if successful is not None else 'no'}"
        )
        return SolveResult(
            problem="acyclic",
            ell=ell,
            answer=successful is not None,
            trials_run=ran,
            successful_trial=successful,
        )


def _trial_outcome(g: Graph, nd: NiceDecomposition, join_mode: str, ell: int, seed: int) -> bool:
    """One trial, run inside a worker process."""
    return AcyclicCutCountSolver(g, nd, join_mode, validate=False).run_trial(ell, seed)


def decide_acyclic(
    g: Graph,
    nd: NiceDecomposition,
    ell: int,
    seed: Optional[int] = None,
    trials: int = DEFAULT_TRIALS,
    join_mode: str = "conv",
    threads: int = 1,
) -> SolveResult:
    """Decide whether g has an acyclic matching with ell edges.

    A yes is always correct; a no is wrong with probability at most
    (1/3) ** trials.

    Raises:
        ParameterError: If ell is outside 1..n//2.
    """
    return AcyclicCutCountSolver(g, nd, join_mode).solve(ell, seed, trials, threads)


def pair_forest(g: Graph, vertices: Iterable[int]) -> Optional[Matching]:
    """The perfect matching of the forest G[X] by leaf stripping, or None."""
    remaining = set(vertices)
    degree = {v: len(g.adjacency[v] & remaining) for v in remaining}
    pairs = []
    while remaining:
        leaf = min((v for v in remaining if degree[v] <= 1), default=None)
        if leaf is None or degree[leaf] == 0:
            return None
        (mate,) = g.adjacency[leaf] & remaining
        pairs.append((leaf, mate))
        for x in (leaf, mate):
            remaining.discard(x)
            for y in g.adjacency[x] & remaining:
                degree[y] -= 1
    return Matching.of(pairs)


def extract_acyclic_certificate(
    g: Graph,
    ell: int,
    seed: Optional[int] = None,
    trials: int = DEFAULT_TRIALS,
    retries: int = 5,
) -> Matching:
    """An acyclic matching with ell edges, found by self-reduction.

    Vertices are deleted one at a time while the residual graph (re-decomposed
    with min-fill) still answers yes; the survivors are then paired by
    stripping forest leaves. False negatives can leave extra survivors, in
    which case the whole pass is retried with fresh seeds.

    Raises:
        CertificateError: If every retry fails.
    """
    logger = logging.getLogger(__name__)

    def decide(graph: Graph, attempt_seed: int) -> bool:
        nd = make_nice_deferred(graph, min_fill_decompose(graph))
        return AcyclicCutCountSolver(graph, nd, validate=False).solve(ell, attempt_seed, trials).answer

    attempt_seeds = trial_seeds(seed, retries * (g.n + 1))
    for attempt in range(retries):
        stream = iter(attempt_seeds[attempt * (g.n + 1) : (attempt + 1) * (g.n + 1)])
        current = g
        if not decide(current, next(stream)):
            logger.warning(f"certificate attempt {attempt}: input answered no")
            continue
        kept = []
        for v in range(g.n):
            candidate = delete_vertices(current, [v])
            if decide(candidate, next(stream)):
                current = candidate
            elif current.adjacency[v]:
                kept.append(v)
        if len(kept) == 2 * ell:
            matching = pair_forest(g, kept)
            if matching is not None and classify_matching(g, matching).is_acyclic:
                return matching
        logger.warning(f"certificate attempt {attempt}: {len(kept)} vertices survived, retrying")
    raise CertificateError(f"no acyclic certificate of size {ell} after {retries} attempts")
