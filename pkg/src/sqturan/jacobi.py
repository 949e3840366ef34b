"""Dense symmetric eigenvalues by cyclic Jacobi rotations.

Used as an independent oracle for the power-iteration code in
:mod:`sqturan.spectral`; it shares nothing with that path beyond the input
matrix.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit


@njit(cache=True)
def _jacobi_sweeps(a, rel_tol, max_sweeps):
    n = a.shape[0]
    fro = 0.0
    for i in range(n):
        for j in range(n):
            fro += a[i, j] * a[i, j]
    fro = math.sqrt(fro)
    sweeps = 0
    while sweeps < max_sweeps:
        off = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                off += a[i, j] * a[i, j]
        if math.sqrt(2.0 * off) <= rel_tol * fro:
            break
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if theta >= 0.0:
                    t = 1.0 / (theta + math.sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
    return sweeps


def jacobi_eigenvalues(matrix, rel_tol: float = 1e-15, max_sweeps: int = 100) -> np.ndarray:
    """All eigenvalues of a real symmetric matrix, ascending."""
    a = np.array(matrix, dtype=np.float64, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.array_equal(a, a.T):
        raise ValueError("matrix is not symmetric")
    if a.shape[0] == 0:
        return np.zeros(0)
    _jacobi_sweeps(a, rel_tol, max_sweeps)
    return np.sort(np.diag(a).copy())


def adjacency_matrix(n: int, rows) -> np.ndarray:
    a = np.zeros((n, n), dtype=np.float64)
    for v, row in enumerate(rows):
        u = 0
        while row:
            if row & 1:
                a[v, u] = 1.0
            row >>= 1
            u += 1
    return a


def dense_spectral_radius(g) -> float:
    """Largest adjacency eigenvalue of ``g`` via Jacobi."""
    return float(jacobi_eigenvalues(adjacency_matrix(g.n, g.rows))[-1])
