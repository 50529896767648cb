"""Hitting Set to Disconnected Matching instance generator."""

from .hitting_set import (
    Cell,
    EdgeClasses,
    ReductionInstance,
    add_star_gadget,
    build_reduction,
    classify_edges,
    extend_path_with_gadget,
    extract_hitting_set,
    normalize_matching,
    parse_sets,
    validate_family,
    witness_matching,
)

__all__ = [
    "Cell",
    "EdgeClasses",
    "ReductionInstance",
    "add_star_gadget",
    "build_reduction",
    "classify_edges",
    "extend_path_with_gadget",
    "extract_hitting_set",
    "normalize_matching",
    "parse_sets",
    "validate_family",
    "witness_matching",
]
