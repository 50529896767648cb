import pytest

from twmatch.core.decomposition import NiceNode, NodeKind, grid_path_decomposition, make_nice_deferred
from twmatch.core.errors import ParameterError
from twmatch.core.graph import Graph, classify_matching, grid_graph
from twmatch.oracle import brute_matching_numbers
from twmatch.solvers import cdisc as cdisc_module
from twmatch.solvers.cdisc import (
    CDisconnectedSolver,
    cdisc_transition,
    maximum_matching,
    solve_cdisc,
    solve_disconnected,
)
from twmatch.sweeps.bench_suite import partial_ktree

from .graphs import atlas_graphs, nice, path, random_graphs


def _expected(g: Graph, c: int):
    edges = brute_matching_numbers(g, c_max=c).mu_cdiscon[c]
    return None if edges is None else 2 * edges


def test_two_k2(two_k2):
    solver = CDisconnectedSolver(two_k2, nice(two_k2), 2)
    assert solver.max_saturated() == 4
    assert solver.solve(2).answer


def test_connected_saturation_is_not_enough(p4, c4):
    # Two matched edges of P4 or C4 always touch through a third edge.
    assert CDisconnectedSolver(p4, nice(p4), 2).max_saturated() is None
    p5 = path(5)
    assert CDisconnectedSolver(p5, nice(p5), 2).max_saturated() == 4
    assert CDisconnectedSolver(c4, nice(c4), 2).max_saturated() is None


def test_unreachable_target_reads_none(triangle):
    result = CDisconnectedSolver(triangle, nice(triangle), 2).solve(1)
    assert result.max_saturated is None
    assert not result.answer
    assert result.c == 2


@pytest.mark.parametrize("c", [2, 3])
@pytest.mark.parametrize("join_mode", ["conv", "naive"])
def test_matches_oracle_on_random_graphs(c, join_mode):
    for g in random_graphs(25, 7, seed=5):
        if g.n < c:
            continue
        assert CDisconnectedSolver(g, nice(g), c, join_mode).max_saturated() == _expected(g, c)


@pytest.mark.slow
@pytest.mark.parametrize("c", [2, 3])
@pytest.mark.parametrize("join_mode", ["conv", "naive"])
def test_matches_oracle_on_every_small_graph(c, join_mode):
    for g in atlas_graphs(6):
        if g.n >= c:
            assert CDisconnectedSolver(g, nice(g), c, join_mode).max_saturated() == _expected(g, c), g.edges


@pytest.mark.slow
@pytest.mark.parametrize("block", range(10))
@pytest.mark.parametrize("c", [2, 3])
def test_matches_oracle_on_random_corpus(block, c):
    for g in random_graphs(50, 10, seed=200 + block, densities=(0.15, 0.25, 0.35)):
        if g.n >= c:
            assert CDisconnectedSolver(g, nice(g), c).max_saturated() == _expected(g, c), g.edges


def test_matches_oracle_on_partial_ktrees():
    for seed in range(4):
        g, td = partial_ktree(10, 2, 0.7, seed)
        nd = make_nice_deferred(g, td)
        for c in (2, 3):
            expected = _expected(g, c)
            assert CDisconnectedSolver(g, nd, c, "naive").max_saturated() == expected
            assert CDisconnectedSolver(g, nd, c, "conv").max_saturated() == expected


@pytest.mark.slow
def test_matches_oracle_on_larger_graphs():
    for g in random_graphs(30, 10, seed=8):
        for c in (2, 3):
            if g.n >= c:
                assert CDisconnectedSolver(g, nice(g), c).max_saturated() == _expected(g, c)


def test_c_below_two_is_rejected(p4):
    with pytest.raises(ParameterError):
        CDisconnectedSolver(p4, nice(p4), 1)
    with pytest.raises(ParameterError):
        solve_cdisc(p4, nice(p4), 0, 1)


def test_c_above_n_is_rejected(p4):
    with pytest.raises(ParameterError):
        CDisconnectedSolver(p4, nice(p4), 5)


def test_disconnected_with_c_one_uses_maximum_matching(c4):
    result = solve_disconnected(c4, nice(c4), 1, 2)
    assert result.answer
    assert result.max_saturated == 4
    assert result.problem == "disc"


def test_disconnected_with_c_one_beyond_oracle_size():
    g = grid_graph(4, 5)
    nd = make_nice_deferred(g, grid_path_decomposition(4, 5))
    result = solve_disconnected(g, nd, 1, 10)
    assert result.answer
    assert result.max_saturated == 20
    assert solve_disconnected(path(17), nice(path(17)), 1, 8).answer


def test_disconnected_with_c_one_on_edgeless_graph():
    g = Graph.from_edges(4, [])
    result = solve_disconnected(g, nice(g), 1, 1)
    assert not result.answer
    assert result.max_saturated is None


def test_maximum_matching_is_a_matching():
    m = maximum_matching(path(5))
    assert len(m) == 2
    assert classify_matching(path(5), m).is_matching


def test_disconnected_range(p4):
    with pytest.raises(ParameterError):
        solve_disconnected(p4, nice(p4), 3, 1)
    result = solve_disconnected(p4, nice(p4), 2, 1)
    assert not result.answer
    assert result.problem == "disc"


def test_long_path_components():
    g = path(8)
    # Edges 01, 34, 67 leave three components.
    assert CDisconnectedSolver(g, nice(g), 3).max_saturated() == 6
    assert solve_cdisc(g, nice(g), 3, 3).answer
    assert not solve_cdisc(g, nice(g), 3, 4).answer


def test_introduce_vertex_tries_every_color():
    leaf = cdisc_transition(NiceNode(NodeKind.LEAF, ()), [], 2)
    table = cdisc_transition(NiceNode(NodeKind.INTRODUCE_VERTEX, (5,), (0,), vertex=5), [leaf], 2)
    assert table.entries == {(0, 0, 0): 0, (2, 1, 0b01): 1, (2, 2, 0b10): 1}


@pytest.mark.parametrize("join_mode", ["conv", "naive"])
def test_folding_transitions_matches_solver(two_k2, join_mode):
    nd = nice(two_k2)
    tables = []
    for node in nd.nodes:
        tables.append(cdisc_transition(node, [tables[i] for i in node.children], 2, join_mode))
    root = tables[nd.root]
    assert root.get((0, 0, 0b11)) == 4
    assert root.entries == CDisconnectedSolver(two_k2, nd, 2, join_mode).root_table().entries


def test_solver_join_bound_is_table_maximum(monkeypatch):
    star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    seen = []
    original = cdisc_module.convolution_join

    def recording(left, right, bound):
        seen.append((bound, max([0, *left.entries.values(), *right.entries.values()])))
        return original(left, right, bound)

    monkeypatch.setattr(cdisc_module, "convolution_join", recording)
    assert CDisconnectedSolver(star, nice(star), 2).max_saturated() is None
    assert seen
    assert all(bound == largest for bound, largest in seen)
