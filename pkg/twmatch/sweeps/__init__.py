"""Benchmark presets; the suite runner lives in twmatch.sweeps.bench_suite."""

from .presets import (
    BENCH_DEFAULTS,
    GRID_LADDER,
    ORACLE_DEFAULTS,
    REDUCTION_DEFAULTS,
    SCALING_LADDER,
    SOLVER_DEFAULTS,
)

__all__ = [
    "BENCH_DEFAULTS",
    "GRID_LADDER",
    "ORACLE_DEFAULTS",
    "REDUCTION_DEFAULTS",
    "SCALING_LADDER",
    "SOLVER_DEFAULTS",
]
