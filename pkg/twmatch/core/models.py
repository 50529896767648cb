"""Result records shared by solvers, oracle and CLI."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

REPORT_SCHEMA_VERSION = 1


@dataclass(frozen=True)
class MatchingClass:
    """Classification of one matching against the matching variants."""

    is_matching: bool
    is_induced: bool
    is_acyclic: bool
    components: int
    size: int
    meets_component_target: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "is_matching": self.is_matching,
            "is_induced": self.is_induced,
            "is_acyclic": self.is_acyclic,
            "components": self.components,
            "size": self.size,
            "meets_component_target": self.meets_component_target,
        }


@dataclass
class SolveResult:
    """Outcome of one decision run.

    max_saturated is None when the table value is -infinity, and also for
    the randomized acyclic solver, which decides without an optimum.
    """

    problem: str  # "induced", "acyclic", "cdisc" or "disc"
    ell: int
    answer: bool
    max_saturated: Optional[int] = None
    c: Optional[int] = None

    # Randomized runs only
    trials_run: Optional[int] = None
    successful_trial: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {
            "problem": self.problem,
            "ell": self.ell,
            "answer": self.answer,
            "max_saturated": self.max_saturated,
            "c": self.c,
            "trials_run": self.trials_run,
            "successful_trial": self.successful_trial,
        }


@dataclass
class OracleReport:
    """Exact matching numbers from exhaustive search, all as edge counts.

    mu_cdiscon maps c to the largest matching whose saturated vertices
    induce at least c components, or None when no such matching exists.
    """

    n: int
    mu: int
    mu_induced: int
    mu_acyclic: int
    mu_cdiscon: Dict[int, Optional[int]] = field(default_factory=dict)
    witnesses: Dict[str, List[Tuple[int, int]]] = field(default_factory=dict, repr=False)

    def chain_violations(self) -> List[str]:
        """Return the ordering relations between matching numbers that fail."""
        problems = []
        if not self.mu >= self.mu_acyclic >= self.mu_induced:
            problems.append(
                f"mu={self.mu} >= mu_acyclic={self.mu_acyclic} >= mu_induced={self.mu_induced} fails"
            )
        if self.mu > 0 and self.mu_cdiscon.get(1, self.mu) != self.mu:
            problems.append(f"mu_1_discon={self.mu_cdiscon.get(1)} differs from mu={self.mu}")
        previous = None
        for c in sorted(self.mu_cdiscon):
            value = self.mu_cdiscon[c]
            current = -1 if value is None else value
            if previous is not None and current > previous:
                problems.append(f"mu_{c}_discon={value} exceeds mu_{c - 1}_discon")
            if c <= self.mu_induced and current < self.mu_induced:
                problems.append(f"mu_{c}_discon={value} below mu_induced={self.mu_induced}")
            previous = current
        return problems

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "mu": self.mu,
            "mu_induced": self.mu_induced,
            "mu_acyclic": self.mu_acyclic,
            "mu_cdiscon": {str(c): v for c, v in sorted(self.mu_cdiscon.items())},
            "witnesses": {k: [list(e) for e in v] for k, v in sorted(self.witnesses.items())},
        }


@dataclass(frozen=True)
class CutParity:
    """Sizes of the candidate, solution and cut families for one (A, B, C, W)."""

    r_count: int
    s_count: int
    c_count: int


@dataclass
class RunReport:
    """JSON report printed by `twmatch solve`."""

    problem: str
    answer: str  # "yes" or "no"
    value: Optional[int]
    ell: int
    width_used: int
    node_count: int
    decomposition: str  # "supplied" or "min-fill"
    wall_time: float
    c: Optional[int] = None
    seed: Optional[int] = None
    trials: Optional[int] = None
    join: Optional[str] = None
    certificate: Optional[List[Tuple[int, int]]] = None
    oracle_checked: bool = False
    notice: Optional[str] = None
    schema_version: int = REPORT_SCHEMA_VERSION

    def to_dict(self, include_timing: bool = True) -> Dict[str, Any]:
        """Convert to dictionary; without timing the output is deterministic."""
        data = {
            "schema_version": self.schema_version,
            "problem": self.problem,
            "answer": self.answer,
            "value": self.value,
            "ell": self.ell,
            "c": self.c,
            "width_used": self.width_used,
            "node_count": self.node_count,
            "decomposition": self.decomposition,
            "seed": self.seed,
            "trials": self.trials,
            "join": self.join,
            "certificate": None if self.certificate is None else [list(e) for e in self.certificate],
            "oracle_checked": self.oracle_checked,
            "notice": self.notice,
        }
        if include_timing:
            data["wall_time"] = self.wall_time
        return data


@dataclass
class BenchRecord:
    """One benchmark measurement: an instance solved under one join mode."""

    instance: str
    problem: str
    join_mode: str
    wall_time: float
    width: int
    n: int
    node_count: int
    value: Optional[int]
    answer: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "instance": self.instance,
            "problem": self.problem,
            "join_mode": self.join_mode,
            "wall_time": self.wall_time,
            "width": self.width,
            "n": self.n,
            "node_count": self.node_count,
            "value": self.value,
            "answer": self.answer,
        }
