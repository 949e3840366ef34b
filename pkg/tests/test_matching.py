from __future__ import annotations

from itertools import combinations

import networkx as nx

from sqturan.graph import Graph, complete, cycle_square
from sqturan.matching import matching_number, max_matching

from conftest import random_graph


def brute_nu(g: Graph) -> int:
    edges = g.edges()
    for k in range(g.n // 2, 0, -1):
        for combo in combinations(edges, k):
            used = [v for e in combo for v in e]
            if len(set(used)) == 2 * k:
                return k
    return 0


def test_examples():
    assert matching_number(cycle_square(8)) == 4 == brute_nu(cycle_square(8))
    assert matching_number(Graph.empty(5)) == 0
    assert matching_number(complete(4)) == 2


def test_against_brute_force(rng):
    for _ in range(500):
        g = random_graph(rng.randint(1, 8), rng.random(), rng)
        m = max_matching(g)
        assert m.is_valid_in(g)
        assert m.size == brute_nu(g)


def test_against_networkx_on_larger_graphs(rng):
    for _ in range(60):
        g = random_graph(rng.randint(10, 40), rng.choice([0.05, 0.1, 0.3]), rng)
        h = nx.Graph()
        h.add_nodes_from(range(g.n))
        h.add_edges_from(g.edges())
        assert matching_number(g) == len(nx.max_weight_matching(h, maxcardinality=True))
