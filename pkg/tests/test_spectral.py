from __future__ import annotations

import math

import numpy as np
import pytest

from sqturan.graph import Graph, complete, cycle, cycle_square, gn, star, turan
from sqturan.jacobi import adjacency_matrix, dense_spectral_radius, jacobi_eigenvalues
from sqturan.spectral import (eigenvector_balance_check, eigenvector_profile, gn_rayleigh_bound,
                              rayleigh_lower_bound, spectral_comparisons, spectral_radius)

from conftest import random_graph


def connected_random(rng, n, p):
    while True:
        g = random_graph(n, p, rng)
        if g.is_connected():
            return g


def test_examples():
    assert abs(spectral_radius(complete(4)).rho - 3) <= 1e-10
    assert abs(spectral_radius(cycle_square(5)).rho - 4) <= 1e-10
    assert spectral_radius(gn(12)).rho >= 8


def test_rayleigh_examples():
    assert rayleigh_lower_bound(complete(4)) == 3
    assert rayleigh_lower_bound(gn(10)) == pytest.approx(7.2, abs=1e-12)
    assert rayleigh_lower_bound(star(4)) == pytest.approx(1.6)
    assert spectral_radius(star(4)).rho == pytest.approx(2.0, abs=1e-9)


def test_bipartite_converges():
    assert spectral_radius(cycle(6)).rho == pytest.approx(2.0, abs=1e-9)
    assert spectral_radius(turan(9, 2)).rho == pytest.approx(math.sqrt(20), abs=1e-9)


def test_result_invariants(rng):
    for _ in range(40):
        g = connected_random(rng, rng.randint(2, 30), 0.3)
        r = spectral_radius(g)
        assert r.residual <= 1e-10
        assert np.linalg.norm(r.vector) == pytest.approx(1.0, abs=1e-12)
        assert (r.vector > 0).all()
        prof = eigenvector_profile(r)
        assert 0 < prof.ratio_floor <= 1


def test_disconnected_graph():
    g = Graph.from_edges(7, [(0, 1), (2, 3), (3, 4), (2, 4), (4, 5), (2, 5), (3, 5)])
    r = spectral_radius(g)
    assert not r.connected and r.rho == pytest.approx(3.0, abs=1e-9)


def test_jacobi_matches_numpy(rng):
    for _ in range(30):
        a = rng.randint(1, 20)
        m = np.array([[rng.uniform(-1, 1) for _ in range(a)] for _ in range(a)])
        m = m + m.T
        np.testing.assert_allclose(jacobi_eigenvalues(m), np.linalg.eigvalsh(m), atol=1e-10)


def test_power_iteration_matches_jacobi(rng):
    for _ in range(200):
        g = connected_random(rng, rng.randint(2, 64), rng.choice([0.1, 0.3, 0.6]))
        assert abs(spectral_radius(g).rho - dense_spectral_radius(g)) <= 1e-8


def test_adjacency_builder_agrees():
    g = gn(9)
    np.testing.assert_array_equal(adjacency_matrix(g.n, g.rows), g.to_numpy())


def test_edge_addition_increases_rho(rng):
    done = 0
    while done < 100:
        g = connected_random(rng, rng.randint(3, 25), 0.3)
        non = [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.has_edge(u, v)]
        if not non:
            continue
        h = g.add_edges([rng.choice(non)])
        assert spectral_radius(h).rho > spectral_radius(g).rho
        done += 1


def test_gn_rayleigh_bound_values():
    assert gn_rayleigh_bound(30) == pytest.approx(20 + 2 / 3 - 1 / 15)
    for n in (30, 45, 60):
        assert spectral_radius(gn(n)).rho >= gn_rayleigh_bound(n)


def test_balance_examples():
    r = eigenvector_balance_check(3, 3, 3)
    assert r.holds
    assert max(r.part_values) - min(r.part_values) <= 1e-10
    r = eigenvector_balance_check(4, 3, 3)
    assert r.holds and r.part_values[0] < r.part_values[2]
    # independent dense oracle on the 11-vertex matrix
    from sqturan.spectral import dominated_tripartite
    w, v = np.linalg.eigh(dominated_tripartite(4, 3, 3).to_numpy())
    x = np.abs(v[:, -1])
    rho = w[-1]
    assert x[1] == pytest.approx((rho + 1) / (rho + 4) * x[0], abs=1e-10)
    assert x[8] == pytest.approx((rho + 1) / (rho + 3) * x[0], abs=1e-10)
    r = eigenvector_balance_check(5, 3, 3)
    assert r.checks["sign_positive"] and r.sign_quantity > 0


def test_comparisons():
    assert spectral_comparisons(12).holds
    r8 = spectral_comparisons(20, 8)
    assert r8.checks["gn_free"] and r8.holds
    r = spectral_comparisons(9)
    assert r.rho_t2 < r.rho_t3
    r6 = spectral_comparisons(6)
    assert r6.rho_gn >= r6.rayleigh_gn
    # dense oracle on the n=12 values
    assert r.rho_t3 == pytest.approx(dense_spectral_radius(turan(9, 3)), abs=1e-9)
