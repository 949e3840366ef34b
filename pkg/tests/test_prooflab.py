from __future__ import annotations

import warnings
from fractions import Fraction

import numpy as np
import pytest

from sqturan.graph import complete, complete_multipartite, gn, star, turan
from sqturan.matching import matching_number
from sqturan.prooflab import (TriPartition, compute_proof_sets, eta_ceiling, is_move_optimal,
                              lemma_audit, max_cross_tripartition, partition_size_check)
from sqturan.spectral import spectral_radius

from conftest import random_graph


def by_name(reports):
    return {r.lemma: r for r in reports}


def natural_parts(sizes):
    out, start = [], 0
    for s in sizes:
        out.append(range(start, start + s))
        start += s
    return out


def test_maxcut_examples():
    tri = max_cross_tripartition(complete_multipartite([3, 3, 3]), "exact")
    assert tri.internal_edges == 0
    tri = max_cross_tripartition(complete(4), "exact")
    assert tri.internal_edges == 1
    assert tri.cross_edges + tri.internal_edges == 6


def test_exact_vs_brute_force(rng):
    from itertools import product
    for _ in range(20):
        g = random_graph(rng.randint(3, 8), 0.5, rng)
        best = max(TriPartition.from_assignment(g, a).cross_edges for a in product(range(3), repeat=g.n))
        assert max_cross_tripartition(g, "exact").cross_edges == best


def test_local_close_to_exact_and_move_optimal(rng):
    ok = 0
    for seed in range(100):
        g = random_graph(10, 0.5, rng)
        loc = max_cross_tripartition(g, "local", seed=seed)
        ex = max_cross_tripartition(g, "exact")
        assert is_move_optimal(g, loc)
        assert loc.cross_edges + loc.internal_edges == g.edge_count()
        ok += loc.cross_edges >= 0.95 * ex.cross_edges
    assert ok == 100


def test_local_is_deterministic(rng):
    g = random_graph(30, 0.4, rng)
    assert max_cross_tripartition(g, seed=3) == max_cross_tripartition(g, seed=3)


def test_low_degree_set_definition(rng):
    g = random_graph(40, 0.6, rng)
    tri = max_cross_tripartition(g)
    eta = 0.02
    sets = compute_proof_sets(g, tri, eta)
    thr = (Fraction(2, 3) - 6 * Fraction(eta)) * g.n
    assert sets.S == {v for v in range(g.n) if g.degree(v) <= thr}
    for lam in (1, 5):
        for i, p in enumerate(tri.parts):
            want = {v for v in p if sum(1 for u in p if g.has_edge(u, v)) >= 2 ** lam * Fraction(eta) * g.n}
            assert sets.W_parts[lam][i] == want


def test_proof_set_examples():
    tri = max_cross_tripartition(gn(60))
    assert compute_proof_sets(gn(60), tri, 0.001).S == frozenset()
    s = star(49)
    assert compute_proof_sets(s, max_cross_tripartition(s), 0.01).S == frozenset(range(1, 50))
    t = turan(60, 3)
    parts = TriPartition.from_parts(t, natural_parts([20, 20, 20]))
    for eta in (1 / 60, 0.05, 0.1):
        assert compute_proof_sets(t, parts, eta).W[1] == frozenset()


def test_partition_size_examples():
    t = turan(30, 3)
    assert partition_size_check(TriPartition.from_parts(t, natural_parts([10, 10, 10])), 0.01)
    assert not partition_size_check(TriPartition.from_parts(t, natural_parts([20, 5, 5])), 0.1)
    g = gn(31)
    assert partition_size_check(max_cross_tripartition(g), 0.05)


def test_audit_on_gn40():
    reps = by_name(lemma_audit(gn(40), 1e-4, 8))
    assert reps["extremal_structure"].quantities["sum_nu"] == 1
    # with eta = 1e-4 the W^5 threshold 32 eta n is below 1, so every vertex of the
    # dominating vertex's part (internal degree >= 1) lands in W^5
    assert reps["w5_at_most_one"].quantities["|W^5|"] == 14
    assert reps["perron_floor"].holds and reps["perron_floor"].quantities["ratio_floor"] > 3 / 5
    assert reps["no_low_degree"].holds


def test_audit_on_turan40():
    reps = by_name(lemma_audit(turan(40, 3), 1e-4))
    assert reps["extremal_structure"].quantities["sum_nu"] == 0
    assert reps["w5_at_most_one"].quantities["|W^5|"] == 0
    # parts 14, 13, 13 are not all equal, so the floor is below 1; compare to a dense solve
    w, v = np.linalg.eigh(turan(40, 3).to_numpy())
    x = np.abs(v[:, -1])
    assert reps["perron_floor"].quantities["ratio_floor"] == pytest.approx(x.min() / x.max(), abs=1e-9)
    balanced = by_name(lemma_audit(turan(42, 3), 1e-4))
    assert balanced["perron_floor"].quantities["ratio_floor"] == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("n", [40, 60, 80])
def test_characterization_with_larger_eta(n):
    with pytest.warns(UserWarning):
        reps = by_name(lemma_audit(gn(n), 1e-3, 8))
    assert reps["no_low_degree"].holds and reps["w5_at_most_one"].holds and reps["perron_floor"].holds and reps["extremal_structure"].holds
    assert reps["extremal_structure"].quantities["|W^5|"] == 1


def test_audit_quantities_recomputable():
    g = gn(24)
    reps = by_name(lemma_audit(g, 1e-3))
    assert reps["rho_lower"].quantities["rho"] == spectral_radius(g).rho
    assert reps["rho_lower"].quantities["e"] == g.edge_count()
    tri = max_cross_tripartition(g, "local")
    nus = [matching_number(g.induced_subgraph(sorted(p))) for p in tri.parts]
    assert sum(nus) == reps["extremal_structure"].quantities["sum_nu"]


def test_eta_ceiling_and_warning():
    assert eta_ceiling(2) == pytest.approx(1 / (9 * 288))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        lemma_audit(gn(20), 1e-4, 8)
