import dataclasses
import itertools

import numpy as np
import pytest

from twmatch.core.decomposition import make_nice_deferred, path_decomposition, validate_td
from twmatch.core.errors import ParameterError, ReductionInputError
from twmatch.core.graph import Graph, Matching, classify_matching
from twmatch.oracle import brute_hitting_set, brute_matching_numbers, hitting_sets
from twmatch.reduction import (
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
from twmatch.solvers.cdisc import CDisconnectedSolver


@pytest.fixture
def single_cell():
    return build_reduction(2, [[(1, 1)]])


def test_counts(single_cell):
    inst = single_cell
    assert inst.graph.n == 16
    assert inst.graph.m == 19
    assert (inst.ell, inst.c, inst.m) == (7, 2, 1)
    classes = classify_edges(inst)
    assert (len(classes.type_i), len(classes.type_ii), len(classes.type_iii)) == (4, 5, 10)
    assert classes.type_i | classes.type_ii | classes.type_iii == set(inst.graph.edges)


def test_labels_and_sidecar(single_cell):
    inst = single_cell
    assert inst.labels[:4] == ("v^L_1", "v^L_2", "v^R_1", "v^R_2")
    assert inst.labels[4] == "v^S1_1,1"
    assert inst.labels[-1] == "u^P2"
    sidecar = inst.to_sidecar()
    assert sidecar["k"] == 2 and sidecar["m"] == 1 and sidecar["ell"] == 7 and sidecar["c"] == 2
    assert sidecar["sets"] == [[[1, 1]]]
    assert len(sidecar["labels"]) == 16


def test_path_decomposition_width(single_cell):
    td = single_cell.path_decomposition
    assert validate_td(single_cell.graph, td) == []
    assert td.is_path
    assert td.width <= 3 * single_cell.k


def test_witness_from_hitting_set(single_cell):
    inst = single_cell
    matching = witness_matching(inst, (1, 1))
    kind = classify_matching(inst.graph, matching, inst.c)
    assert kind.is_matching
    assert kind.size == inst.ell
    assert kind.components >= inst.c
    assert extract_hitting_set(inst, matching) == (1, 1)


def test_witness_rejects_non_hitting_choice(single_cell):
    with pytest.raises(ParameterError):
        witness_matching(single_cell, (2, 1))


def test_normalize_replaces_type_iii_edges(single_cell):
    inst = single_cell
    ids = inst.ids
    cell_edge = (ids["v^L_1"], ids["v^S1_1,1"])
    normalized = normalize_matching(inst, Matching.of([cell_edge]))
    assert normalized.sorted_edges() == [(ids["v^L_1"], ids["u^L_1"])]


def test_extract_needs_one_cell_per_row(single_cell):
    ids = single_cell.ids
    pendants = Matching.of([(ids["v^L_1"], ids["u^L_1"])])
    assert extract_hitting_set(single_cell, pendants) is None


@pytest.mark.parametrize(
    "sets",
    [
        [[(1, 1)]],
        [[(1, 2), (2, 1)], [(2, 2)]],
    ],
)
def test_every_hitting_set_gives_a_witness(sets):
    inst = build_reduction(2, sets)
    solutions = list(hitting_sets(2, sets))
    assert solutions
    for columns in solutions:
        matching = witness_matching(inst, columns)
        kind = classify_matching(inst.graph, matching, inst.c)
        assert kind.size == inst.ell and kind.meets_component_target
        assert extract_hitting_set(inst, matching) == columns


def test_yes_instance_matches_oracle(single_cell):
    inst = single_cell
    report = brute_matching_numbers(inst.graph, c_max=inst.c)
    assert brute_hitting_set(inst.k, inst.sets)
    assert report.mu_cdiscon[inst.c] >= inst.ell


@pytest.mark.slow
def test_no_instance_matches_oracle():
    sets = [[(1, 1)], [(1, 2)]]
    inst = build_reduction(2, sets)
    assert not brute_hitting_set(2, sets)
    report = brute_matching_numbers(inst.graph, c_max=inst.c, max_vertices=inst.graph.n)
    value = report.mu_cdiscon[inst.c]
    assert value is None or value < inst.ell


def _row_sets(k):
    """Every nonempty set with at most one cell per row of the k x k grid."""
    sets = []
    for size in range(1, k + 1):
        for rows in itertools.combinations(range(1, k + 1), size):
            for columns in itertools.product(range(1, k + 1), repeat=size):
                sets.append(list(zip(rows, columns)))
    return sets


@pytest.mark.slow
@pytest.mark.parametrize("m", [1, 2, 3])
def test_every_small_family_matches_oracle(m):
    for family in itertools.combinations(_row_sets(2), m):
        sets = list(family)
        inst = build_reduction(2, sets)
        value = brute_matching_numbers(inst.graph, c_max=inst.c, max_vertices=inst.graph.n).mu_cdiscon[inst.c]
        assert (value is not None and value >= inst.ell) == brute_hitting_set(2, sets), sets


@pytest.mark.parametrize("seed", range(50))
def test_random_family_round_trip(seed):
    rng = np.random.default_rng(seed)
    sets = []
    for _ in range(int(rng.integers(1, 4, endpoint=True))):
        rows = [i for i in range(1, 4) if rng.random() < 0.5] or [int(rng.integers(1, 3, endpoint=True))]
        sets.append([(i, int(rng.integers(1, 3, endpoint=True))) for i in rows])
    inst = build_reduction(3, sets)
    solutions = set(hitting_sets(3, sets))
    for columns in itertools.product(range(1, 4), repeat=3):
        if columns not in solutions:
            with pytest.raises(ParameterError):
                witness_matching(inst, columns)
            continue
        matching = witness_matching(inst, columns)
        kind = classify_matching(inst.graph, matching, inst.c)
        assert kind.size == inst.ell and kind.meets_component_target
        assert extract_hitting_set(inst, matching) == columns


@pytest.mark.slow
def test_solver_answers_yes_on_reduction(single_cell):
    inst = single_cell
    nd = make_nice_deferred(inst.graph, inst.path_decomposition)
    assert CDisconnectedSolver(inst.graph, nd, inst.c).solve(inst.ell).answer


def test_parse_sets():
    assert parse_sets("(1,1) (2,1); (1,2)") == [[(1, 1), (2, 1)], [(1, 2)]]
    assert parse_sets("( 1 , 2 ), (2,2)") == [[(1, 2), (2, 2)]]
    assert parse_sets("  ") == []
    with pytest.raises(ReductionInputError):
        parse_sets("(1,1) x")


def test_family_validation():
    validate_family(2, [[(1, 1), (2, 2)]])
    with pytest.raises(ReductionInputError):
        validate_family(2, [[(1, 1), (1, 2)]])
    with pytest.raises(ReductionInputError):
        validate_family(2, [[(3, 1)]])
    with pytest.raises(ReductionInputError):
        validate_family(0, [])


def test_build_errors():
    with pytest.raises(ReductionInputError):
        build_reduction(2, [[]])
    with pytest.raises(ParameterError):
        build_reduction(9, [])
    with pytest.raises(ParameterError):
        build_reduction(2, [[(1, 1)]] * 21)


def test_classify_rejects_foreign_graph(single_cell):
    foreign = dataclasses.replace(single_cell, graph=Graph.from_edges(16, [(0, 1)]))
    with pytest.raises(ParameterError):
        classify_edges(foreign)


def test_gadget_helpers():
    g = Graph.from_edges(3, [(0, 1)])
    bigger, new = add_star_gadget(g, [0, 2])
    assert new == 3
    assert bigger.has_edge(0, 3) and bigger.has_edge(2, 3) and not bigger.has_edge(1, 3)
    with pytest.raises(ReductionInputError):
        add_star_gadget(g, [])

    bags = list(path_decomposition([{0, 1}, {1, 2}]).bags)
    assert extend_path_with_gadget(bags, [1, 2], 3) == [frozenset({0, 1}), frozenset({1, 2}), frozenset({1, 2, 3})]
    with pytest.raises(ReductionInputError):
        extend_path_with_gadget(bags, [0, 2], 3)
