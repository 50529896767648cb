"""Benchmark suite runner comparing the naive and convolution joins."""

import json
import logging
import time
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..core.decomposition import (
    NodeKind,
    TreeDecomposition,
    grid_path_decomposition,
    make_nice_deferred,
    min_fill_decompose,
)
from ..core.errors import BenchmarkMismatchError, ParameterError
from ..core.graph import Graph, grid_graph, random_graph
from ..core.instance_loader import InstanceLoader
from ..core.models import BenchRecord, SolveResult
from ..reduction.hitting_set import build_reduction, parse_sets
from ..results.aggregator import BenchAggregator
from ..solvers.acyclic import DEFAULT_TRIALS, AcyclicCutCountSolver
from ..solvers.cdisc import CDisconnectedSolver
from ..solvers.induced import InducedMatchingSolver
from .presets import BENCH_DEFAULTS, SOLVER_DEFAULTS

KINDS = ("grid", "random", "ktree", "hitting-set", "file")
PROBLEMS = ("induced", "acyclic", "cdisc", "disc")


def partial_ktree(n: int, k: int, keep: float, seed: int) -> Tuple[Graph, TreeDecomposition]:
    """Random partial k-tree with its width-k tree decomposition.

    Each new vertex attaches to a k-clique drawn from a random existing bag,
    so the decomposition tree branches and its nice form has joins. Every
    edge is then kept with probability `keep`.
    """
    if k < 1 or n < 1:
        raise ParameterError(f"partial k-tree needs n >= 1 and k >= 1, got n={n}, k={k}")
    rng = np.random.default_rng(seed)
    if n <= k + 1:
        bags = [list(range(n))]
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
        tree_edges: List[Tuple[int, int]] = []
    else:
        bags = [list(range(k + 1))]
        edges = [(u, v) for u in range(k + 1) for v in range(u + 1, k + 1)]
        tree_edges = []
        for v in range(k + 1, n):
            parent = int(rng.integers(len(bags)))
            clique = list(bags[parent])
            clique.pop(int(rng.integers(len(clique))))
            edges.extend((u, v) for u in clique)
            tree_edges.append((parent, len(bags)))
            bags.append(clique + [v])
    mask = rng.random(len(edges)) < keep
    kept = [e for e, ok in zip(edges, mask) if ok]
    return Graph.from_edges(n, kept), TreeDecomposition.of(bags, tree_edges)


def load_suite(path: str) -> Dict[str, Any]:
    """Read a JSON suite config; raises ParameterError without an "instances" list."""
    config = json.loads(Path(path).read_text())
    if not isinstance(config, dict) or not isinstance(config.get("instances"), list):
        raise ParameterError(f"{path}: suite config needs an 'instances' list")
    return config


def ladder_suite(ladder: Dict[str, Any], problem: str = "induced", ell: int = 1) -> Dict[str, Any]:
    """Expand a width ladder preset into a suite config."""
    instances = []
    for width in ladder["widths"]:
        if ladder["kind"] == "grid":
            params = {"p": width, "q": ladder["q"]}
            name = f"grid-{width}x{ladder['q']}"
        elif ladder["kind"] == "ktree":
            params = {"n": ladder["n"], "k": width, "keep": ladder["keep"], "seed": ladder["seed"]}
            name = f"ktree-{width}-n{ladder['n']}"
        else:
            raise ParameterError(f"unknown ladder kind {ladder['kind']!r}")
        instances.append({"name": name, "kind": ladder["kind"], "params": params, "problem": problem, "ell": ell})
    return {"instances": instances}


class BenchSuite:
    """Runs every suite instance under each join mode and checks they agree."""

    def __init__(
        self,
        config: Dict[str, Any],
        modes: Optional[Sequence[str]] = None,
        repeats: int = BENCH_DEFAULTS["repeats"],
        base_dir: Optional[str] = None,
        seed: int = SOLVER_DEFAULTS["seed"],
    ):
        self.config = config
        self.modes = list(modes or BENCH_DEFAULTS["modes"])
        self.repeats = repeats
        self.base_dir = Path(base_dir) if base_dir else Path.cwd()
        self.seed = seed
        self.aggregator = BenchAggregator()
        self.logger = logging.getLogger(__name__)

    def build_instance(self, spec: Dict[str, Any]) -> Tuple[Graph, TreeDecomposition, Dict[str, Any]]:
        """
        Generate the graph and decomposition of one suite entry.

        Returns:
            Tuple of (graph, decomposition, problem settings with defaults filled in)
        """
        kind = spec.get("kind")
        params = dict(spec.get("params", {}))
        settings = {
            "problem": spec.get("problem", BENCH_DEFAULTS["problem"]),
            "ell": spec.get("ell", BENCH_DEFAULTS["ell"]),
            "c": spec.get("c"),
        }
        if kind == "grid":
            g = grid_graph(params["p"], params["q"])
            td = grid_path_decomposition(params["p"], params["q"])
        elif kind == "random":
            g = random_graph(params["n"], params["p"], params.get("seed", 0))
            td = min_fill_decompose(g)
        elif kind == "ktree":
            g, td = partial_ktree(params["n"], params["k"], params.get("keep", 1.0), params.get("seed", 0))
        elif kind == "hitting-set":
            sets = params.get("sets", [])
            if isinstance(sets, str):
                sets = parse_sets(sets)
            inst = build_reduction(params["k"], [[tuple(cell) for cell in s] for s in sets])
            g, td = inst.graph, inst.path_decomposition
            settings["problem"] = spec.get("problem", "cdisc")
            settings["ell"] = spec.get("ell", inst.ell)
            settings["c"] = spec.get("c", inst.c)
        elif kind == "file":
            td_path = params.get("td")
            loader = InstanceLoader(
                str(self.base_dir / params["graph"]),
                str(self.base_dir / td_path) if td_path else None,
            )
            g = loader.load()
            td, _ = loader.tree_decomposition()
        else:
            raise ParameterError(f"unknown instance kind {kind!r}; expected one of {', '.join(KINDS)}")
        if settings["problem"] not in PROBLEMS:
            raise ParameterError(f"unknown problem {settings['problem']!r}")
        return g, td, settings

    def _solve(self, g: Graph, nd, settings: Dict[str, Any], mode: str) -> SolveResult:
        problem = settings["problem"]
        if problem == "induced":
            return InducedMatchingSolver(g, nd, mode, validate=False).solve(settings["ell"])
        if problem == "acyclic":
            return AcyclicCutCountSolver(g, nd, mode, validate=False).solve(
                settings["ell"], self.seed, DEFAULT_TRIALS
            )
        if settings["c"] is None:
            raise ParameterError(f"{problem} instances need 'c'")
        return CDisconnectedSolver(g, nd, settings["c"], mode, validate=False).solve(settings["ell"], problem)

    def run_instance(self, spec: Dict[str, Any]) -> List[BenchRecord]:
        """
        Benchmark one suite entry under every join mode.

        Raises:
            BenchmarkMismatchError: If two join modes give different answers
        """
        name = spec.get("name") or f"{spec.get('kind')}-{len(self.aggregator.results)}"
        g, td, settings = self.build_instance(spec)
        nd = make_nice_deferred(g, td)
        self.logger.info(f"{name}: n={g.n}, width {nd.width}, {len(nd)} nodes, problem {settings['problem']}")
        if len(self.modes) > 1 and nd.count(NodeKind.JOIN) == 0:
            self.logger.warning(f"{name}: decomposition has no join nodes; the join modes run identical code")

        records = []
        outcomes = {}
        for mode in self.modes:
            times = []
            for _ in range(self.repeats):
                start = time.perf_counter()
                result = self._solve(g, nd, settings, mode)
                times.append(time.perf_counter() - start)
            outcomes[mode] = (result.answer, result.max_saturated)
            records.append(
                BenchRecord(
                    instance=name,
                    problem=settings["problem"],
                    join_mode=mode,
                    wall_time=float(np.median(times)),
                    width=nd.width,
                    n=g.n,
                    node_count=len(nd),
                    value=result.max_saturated,
                    answer=result.answer,
                )
            )
            self.logger.info(f"{name} [{mode}]: {records[-1].wall_time:.4f}s, value {result.max_saturated}")

        if len(set(outcomes.values())) > 1:
            raise BenchmarkMismatchError(f"{name}: join modes disagree: {outcomes}")
        for record in records:
            self.aggregator.add_result(record)
        return records

    def run(self) -> List[BenchRecord]:
        """Run all instances from a fresh aggregator; an empty suite yields no records."""
        self.aggregator.clear()
        instances = self.config.get("instances", [])
        for i, spec in enumerate(instances, start=1):
            self.logger.info(f"Instance {i}/{len(instances)}")
            self.run_instance(spec)
        return self.aggregator.results
