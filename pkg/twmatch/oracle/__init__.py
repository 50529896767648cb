"""Brute-force ground truth used by tests and --check-oracle."""

from .brute_force import (
    brute_hitting_set,
    brute_matching_numbers,
    enumerate_cut_parity,
    hitting_sets,
    iter_matchings,
)

__all__ = [
    "brute_hitting_set",
    "brute_matching_numbers",
    "enumerate_cut_parity",
    "hitting_sets",
    "iter_matchings",
]
