"""Small graph builders shared by the tests."""

import networkx as nx

from twmatch.core.decomposition import make_nice_deferred, min_fill_decompose
from twmatch.core.graph import Graph


def nice(g: Graph):
    return make_nice_deferred(g, min_fill_decompose(g))


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def random_graphs(count: int, n_max: int, seed: int = 0, densities=(0.2, 0.35, 0.5, 0.7)):
    """Reproducible G(n, p) graphs with 2 <= n <= n_max."""
    graphs = []
    for i in range(count):
        n = 2 + (seed + i) % (n_max - 1)
        p = densities[i % len(densities)]
        graphs.append(Graph.from_networkx(nx.gnp_random_graph(n, p, seed=seed * 1000 + i)))
    return graphs


def atlas_graphs(n_max: int):
    """One graph per isomorphism class on 2..n_max vertices (n_max <= 7)."""
    return [Graph.from_networkx(h) for h in nx.graph_atlas_g() if 2 <= h.number_of_nodes() <= n_max]
