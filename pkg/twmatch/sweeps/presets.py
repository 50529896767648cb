"""Default settings for solvers, oracle and benchmark ladders."""

# Solver defaults; acyclic trials are derived from the false-negative target
SOLVER_DEFAULTS = {
    "false_negative_target": 1e-3,
    "seed": 0,
    "join": "conv",
    "threads": 1,
    "certificate_retries": 5,
}

# Exhaustive-search limits
ORACLE_DEFAULTS = {
    "max_vertices": 16,
    "max_hitting_set_k": 6,
    "max_cut_parity_vertices": 8,
    "check_oracle_max_vertices": 10,
    "c_max": 3,
}

# Reduction generator limits (desk scale)
REDUCTION_DEFAULTS = {
    "max_k": 8,
    "max_sets": 20,
}

# Benchmark defaults
BENCH_DEFAULTS = {
    "modes": ["naive", "conv"],
    "problem": "induced",
    "ell": 1,
    "repeats": 1,
    "chart_name": "scaling.png",
}

# p x q grids with width-p path decompositions; no join nodes, so every join mode runs the same code
GRID_LADDER = {
    "kind": "grid",
    "widths": [2, 3, 4, 5, 6],
    "q": 500,
}

# Join-heavy ladder for naive against convolution scaling: random partial k-trees branch at most bags
SCALING_LADDER = {
    "kind": "ktree",
    "widths": [2, 3, 4, 5, 6],
    "n": 60,
    "keep": 0.7,
    "seed": 1,
}
