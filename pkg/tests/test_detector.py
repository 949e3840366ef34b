from __future__ import annotations

import random

import networkx as nx
import pytest
from networkx.algorithms import isomorphism

from sqturan.detector import (SquaredCycleEmbedding, WITNESS_NAMES, contains_squared_cycle,
                              find_through_edge, find_through_vertex, first_missing_pair,
                              generic_subgraph_oracle, is_free, required_pairs, squared_witness_graph,
                              verify_embedding, witness_intra_part_pairs, witness_part, witness_sequence)
from sqturan.errors import BudgetExceeded, ParameterError
from sqturan.graph import Graph, complete, complete_multipartite, cycle_square, gn, turan

from conftest import random_graph


def nx_contains(g: Graph, ell: int) -> bool:
    host = nx.Graph()
    host.add_nodes_from(range(g.n))
    host.add_edges_from(g.edges())
    pat = nx.Graph(cycle_square(ell).edges())
    return isomorphism.GraphMatcher(host, pat).subgraph_is_monomorphic()


def test_examples():
    assert contains_squared_cycle(complete(8), 8) is not None
    assert contains_squared_cycle(gn(20), 8) is None
    emb = contains_squared_cycle(complete_multipartite([2, 2, 2, 2]), 8)
    assert emb is not None and verify_embedding(complete_multipartite([2, 2, 2, 2]), emb)
    assert contains_squared_cycle(complete(7), 8) is None


def test_required_pairs_count():
    for ell in range(5, 15):
        assert len(required_pairs(ell)) == 2 * ell


def test_verify_examples():
    c8 = cycle_square(8)
    assert verify_embedding(c8, SquaredCycleEmbedding(8, tuple(range(8))))
    order = list(range(8))
    order[2], order[3] = order[3], order[2]
    assert verify_embedding(complete(8), SquaredCycleEmbedding(8, tuple(order)))
    missing = first_missing_pair(cycle_square(9).delete_edges([(0, 2)]), list(range(9)))
    assert missing == (0, 2)
    with pytest.raises(ParameterError):
        first_missing_pair(c8, [0, 0, 1, 2, 3, 4, 5, 6])


def test_generic_oracle_examples():
    assert generic_subgraph_oracle(cycle_square(9), cycle_square(9))
    assert not generic_subgraph_oracle(turan(12, 3), cycle_square(8))
    assert not generic_subgraph_oracle(complete(7), cycle_square(8))


def test_against_networkx(rng):
    for _ in range(120):
        n = rng.randint(6, 11)
        ell = rng.choice([6, 7, 8])
        g = random_graph(n, rng.uniform(0.5, 0.95), rng)
        emb = contains_squared_cycle(g, ell)
        assert (emb is not None) == nx_contains(g, ell)
        if emb is not None:
            assert verify_embedding(g, emb)


def _monos(g: Graph, ell: int):
    host = nx.Graph()
    host.add_nodes_from(range(g.n))
    host.add_edges_from(g.edges())
    pat = nx.Graph(cycle_square(ell).edges())
    for m in isomorphism.GraphMatcher(host, pat).subgraph_monomorphisms_iter():
        yield {p: h for h, p in m.items()}, pat


def nx_through_vertex(g: Graph, ell: int, v: int) -> bool:
    return any(v in inv.values() for inv, _ in _monos(g, ell))


def nx_through_edge(g: Graph, ell: int, a: int, b: int) -> bool:
    return any(any({inv[x], inv[y]} == {a, b} for x, y in pat.edges()) for inv, pat in _monos(g, ell))


def test_through_vertex_and_edge(rng):
    for _ in range(60):
        g = random_graph(rng.randint(7, 9), rng.uniform(0.6, 0.9), rng)
        ell = rng.choice([6, 7])
        v = rng.randrange(g.n)
        via = find_through_vertex(g, ell, v)
        assert (via is not None) == nx_through_vertex(g, ell, v)
        if via is not None:
            assert v in via.ordering and verify_embedding(g, via)
        if g.edges():
            a, b = rng.choice(g.edges())
            ve = find_through_edge(g, ell, a, b)
            assert (ve is not None) == nx_through_edge(g, ell, a, b)
            if ve is not None:
                pos = {u: i for i, u in enumerate(ve.ordering)}
                assert a in pos and b in pos and min((pos[a] - pos[b]) % ell, (pos[b] - pos[a]) % ell) <= 2


def test_budget_is_unknown_not_free():
    with pytest.raises(BudgetExceeded):
        contains_squared_cycle(gn(30), 8, node_limit=5)


@pytest.mark.parametrize("ell", [6, 9])
def test_bipartite_turan_is_free(ell):
    assert is_free(turan(20, 2), ell)


def test_witness_cycles_and_intra_part_edges():
    k = 2
    for name in WITNESS_NAMES:
        seq = witness_sequence(name, k)
        assert len(seq) == 3 * k + 2 and len(set(seq)) == len(seq)
        g, labels = squared_witness_graph(name, k)
        assert verify_embedding(g, SquaredCycleEmbedding(len(seq), tuple(labels[s] for s in seq)))
    # C* for k=2 uses exactly the two same-part pairs u*_{1,1}u_{1,1} and u*_{1,2}u_{1,2}
    assert sorted(witness_intra_part_pairs("Cstar", 2)) == [("s1,1", "u1,1"), ("s1,2", "u1,2")]
    assert witness_part("v3,2") == 3


DRAWN_POINTS = [(70, 120), (80, 120), (90, 110), (90, 100), (80, 90), (70, 90), (60, 100), (60, 110)]
H1_LABELS = ["s1,1", "u1,1", "u2,1", "u3,1", "s1,2", "u1,2", "u2,2", "u3,2"]


def test_drawn_h1_host():
    # the drawing joins each node to the next two around its 8-cycle of points
    edges = [(i, (i + d) % 8) for i in range(8) for d in (1, 2)]
    host = Graph.from_edges(8, edges)
    assert host.edge_count() == 16
    order = tuple(range(8))
    assert verify_embedding(host, SquaredCycleEmbedding(8, order))
    assert H1_LABELS == witness_sequence("C1", 2)
