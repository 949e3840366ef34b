from __future__ import annotations

from itertools import product

import pytest

from sqturan.coloring import (GoodPartition, chromatic_number, critical_edges, dsatur_greedy,
                              enumerate_colorings, good_partition_uniqueness_check, is_k_colorable,
                              explicit_coloring_cycle, explicit_coloring_edge_deleted, residue_coloring_path)
from sqturan.errors import CheckFailure, ParameterError
from sqturan.graph import Graph, complete, cycle, cycle_square, path_square, turan

from conftest import random_graph


def brute_chi(g: Graph) -> int:
    edges = g.edges()
    for k in range(1, g.n + 1):
        for colors in product(range(k), repeat=g.n):
            if all(colors[u] != colors[v] for u, v in edges):
                return k
    return g.n


@pytest.mark.parametrize("ell, chi", [(6, 3), (7, 4), (8, 4)])
def test_cycle_square_examples(ell, chi):
    got, cert = chromatic_number(cycle_square(ell))
    assert got == chi
    cert.check(cycle_square(ell))
    assert cert.num_colors == chi


def test_certificate_invariants():
    _, cert = chromatic_number(cycle(5))
    assert max(cert.colors) + 1 == cert.num_colors == 3
    assert set(cert.colors) == set(range(3))


def test_against_brute_force(rng):
    for _ in range(300):
        g = random_graph(rng.randint(1, 7), rng.random(), rng)
        chi, cert = chromatic_number(g)
        cert.check(g)
        assert chi == brute_chi(g)


def test_dsatur_is_proper_upper_bound(rng):
    for _ in range(50):
        g = random_graph(rng.randint(5, 30), 0.5, rng)
        colors = dsatur_greedy(g)
        assert all(colors[u] != colors[v] for u, v in g.edges())
        assert max(colors) + 1 >= chromatic_number(g)[0]


def test_turan_chromatic_and_enumeration_count():
    assert chromatic_number(turan(12, 3))[0] == 3
    # labelled proper 3-colourings of K_3: 3! = 6
    assert sum(1 for _ in enumerate_colorings(complete(3), 3)) == 6
    assert not is_k_colorable(cycle_square(8), 3)


def test_residue_partition_examples():
    assert residue_coloring_path(7).parts == ((0, 3, 6), (1, 4), (2, 5))
    assert residue_coloring_path(3).parts == ((0,), (1,), (2,))
    p9 = residue_coloring_path(9)
    assert [len(p) for p in p9.parts] == [3, 3, 3]
    p9.check(path_square(9))


def test_explicit_cycle_colorings():
    assert len(explicit_coloring_cycle(6)) == 3
    p7 = explicit_coloring_cycle(7)
    assert len(p7) == 4 and (6,) in p7.parts
    p8 = explicit_coloring_cycle(8)
    # V_4' = {v_4, v_8}; V_1' = {v_3, v_7}
    assert (3, 7) in p8.parts and (2, 6) in p8.parts and len(p8) == 4


def test_edge_deleted_colorings():
    for ell in (7, 8, 10, 11, 13, 14):
        part = explicit_coloring_edge_deleted(ell)
        assert len(part) == 3
    assert critical_edges(8) == [(7, 0), (2, 3)]
    with pytest.raises(ParameterError):
        critical_edges(9)


def test_partition_check_rejects():
    with pytest.raises(CheckFailure):
        GoodPartition.of([[0, 1], [2]]).check(complete(3))
    with pytest.raises(CheckFailure):
        GoodPartition.of([[0], [1]]).check(complete(3))


@pytest.mark.parametrize("ell", [4, 7, 12])
def test_good_partition_uniqueness(ell):
    assert good_partition_uniqueness_check(ell)
