"""Adjacency spectral radius by shifted power iteration, and the spectral
identities checked on concrete graphs (Rayleigh bound, eigenvector balance on
``K_1 + K_3(n1, n2, n3)``, Turán-versus-``G(n)`` comparisons).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NonConvergence, ParameterError
from .graph import Graph, complete, complete_multipartite, gn, join, turan

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 1_000_000


@dataclass(frozen=True)
class SpectralResult:
    rho: float
    vector: np.ndarray = field(repr=False)
    residual: float
    iterations: int
    connected: bool = True

    def profile(self) -> "EigenvectorProfile":
        return eigenvector_profile(self)


@dataclass(frozen=True)
class EigenvectorProfile:
    max_entry_vertex: int
    ratio_floor: float


def _power_iteration(a: np.ndarray, tol: float, max_iter: int) -> tuple[float, np.ndarray, float, int]:
    n = a.shape[0]
    x = np.full(n, 1.0 / np.sqrt(n))
    for it in range(1, max_iter + 1):
        y = a @ x
        rho = float(x @ y)
        residual = float(np.linalg.norm(y - rho * x))
        if residual <= tol:
            return rho, x, residual, it
        # Iterate with A + I so that -rho cannot tie with rho on bipartite graphs.
        z = y + x
        x = z / np.linalg.norm(z)
    raise NonConvergence(f"power iteration did not reach residual {tol} in {max_iter} iterations "
                         f"(last residual {residual:.3e})")


def spectral_radius(g: Graph, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER) -> SpectralResult:
    """Dominant adjacency eigenvalue and unit Perron vector.

    Disconnected graphs are handled per component; the vector is the Perron
    vector of the component attaining the maximum, zero elsewhere, and the
    result carries ``connected=False``.
    """
    comps = g.components()
    a = g.to_numpy()
    if len(comps) == 1:
        rho, x, res, it = _power_iteration(a, tol, max_iter)
        return SpectralResult(rho, x, res, it, True)
    best = None
    total_it = 0
    for comp in comps:
        sub = a[np.ix_(comp, comp)]
        rho, x, res, it = _power_iteration(sub, tol, max_iter)
        total_it += it
        if best is None or rho > best[0] + 1e-12:
            best = (rho, comp, x, res)
    rho, comp, x, res = best
    full = np.zeros(g.n)
    full[comp] = x
    residual = float(np.linalg.norm(a @ full - rho * full))
    return SpectralResult(rho, full, residual, total_it, False)


def eigenvector_profile(result: SpectralResult) -> EigenvectorProfile:
    x = result.vector
    u = int(np.argmax(x))
    return EigenvectorProfile(u, float(x.min() / x[u]))


def rayleigh_lower_bound(g: Graph) -> float:
    """``1^T A 1 / 1^T 1 = 2 e(G) / n``."""
    return 2.0 * g.edge_count() / g.n


def gn_rayleigh_bound(n: int) -> float:
    """``2n/3 + 2/3 - 2/n``, the lower bound on rho(G(n)) from its edge count."""
    return 2.0 * n / 3.0 + 2.0 / 3.0 - 2.0 / n


# -- K_1 + K_3(n1, n2, n3) -------------------------------------------------


@dataclass
class BalanceReport:
    sizes: tuple[int, int, int]
    rho: float
    x_dominating: float
    part_values: tuple[float, float, float]
    within_part_spread: float
    closed_form_errors: tuple[float, float, float]
    system_residual: float
    sign_quantity: float
    gap_identity_error: float
    tol: float
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return all(self.checks.values())


def dominated_tripartite(n1: int, n2: int, n3: int) -> Graph:
    """``K_1 + K_3(n1, n2, n3)``; vertex 0 dominates, then parts in the given order."""
    return join(complete(1), complete_multipartite([n1, n2, n3]))


def eigenvector_balance_check(n1: int, n2: int, n3: int, tol: float = 1e-8) -> BalanceReport:
    """Perron-vector balance on ``K_1 + K_3(n1, n2, n3)``.

    Checks that entries are constant on each part, that each part value is
    ``(rho + 1) / (rho + n_i)`` times the dominating entry, that the quotient
    eigen-equations hold, and evaluates ``(n1 - n3 - 1) rho - n3`` together with
    the identity ``(n1 - 1) x1 - n3 x3 = (rho+1)((n1-n3-1)rho - n3) / ((rho+n1)(rho+n3)) x_dom``.
    """
    sizes = (n1, n2, n3)
    if min(sizes) < 1:
        raise ParameterError(f"part sizes {sizes} must all be >= 1")
    g = dominated_tripartite(n1, n2, n3)
    res = spectral_radius(g, tol=min(DEFAULT_TOL, tol * 1e-2))
    x, rho = res.vector, res.rho
    xu = float(x[0])
    bounds = [1, 1 + n1, 1 + n1 + n2, 1 + n1 + n2 + n3]
    groups = [x[bounds[i]:bounds[i + 1]] for i in range(3)]
    vals = tuple(float(gr.mean()) for gr in groups)
    spread = max(float(gr.max() - gr.min()) for gr in groups)
    closed = tuple(abs(vals[i] - (rho + 1) / (rho + sizes[i]) * xu) for i in range(3))
    x1, x2, x3 = vals
    eqs = [
        rho * x1 - (n2 * x2 + n3 * x3 + xu),
        rho * x2 - (n1 * x1 + n3 * x3 + xu),
        rho * x3 - (n1 * x1 + n2 * x2 + xu),
        rho * xu - (n1 * x1 + n2 * x2 + n3 * x3),
    ]
    system = max(abs(e) for e in eqs)
    sign_q = (n1 - n3 - 1) * rho - n3
    lhs = (n1 - 1) * x1 - n3 * x3
    rhs = (rho + 1) * sign_q / ((rho + n1) * (rho + n3)) * xu
    report = BalanceReport(sizes, rho, xu, vals, spread, closed, system, sign_q, abs(lhs - rhs), tol)
    report.checks = {
        "within_part_equal": spread <= tol,
        "closed_form": max(closed) <= tol,
        "linear_system": system <= tol * max(1.0, rho),
        "gap_identity": abs(lhs - rhs) <= tol * max(1.0, rho),
        "dominating_is_max": int(np.argmax(x)) == 0,
    }
    if n1 >= n3 + 2:
        report.checks["sign_positive"] = sign_q > 0
    return report


# -- Turán versus G(n) -----------------------------------------------------


@dataclass
class ComparisonReport:
    n: int
    rho_t3: float
    rho_t2: float
    rho_gn: float
    rayleigh_gn: float
    ell: int | None = None
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return all(self.checks.values())


def spectral_comparisons(n: int, ell: int | None = None, tol: float = DEFAULT_TOL) -> ComparisonReport:
    """rho(T_{n,2}) < rho(T_{n,3}) < rho(G(n)) and the Rayleigh bounds at ``n``.

    With ``ell`` given, also records whether G(n) is C_ell^2-free (skipped if the
    detector runs out of budget).
    """
    if not 6 <= n <= 512:
        raise ParameterError(f"spectral comparisons need 6 <= n <= 512, got n={n}")
    t3 = spectral_radius(turan(n, 3), tol).rho
    t2 = spectral_radius(turan(n, 2), tol).rho
    g = gn(n)
    rg = spectral_radius(g, tol).rho
    ray = rayleigh_lower_bound(g)
    rep = ComparisonReport(n, t3, t2, rg, ray, ell)
    rep.checks = {
        "t3_below_gn": t3 < rg,
        "t2_below_t3": t2 < t3,
        "rayleigh_gn": ray <= rg + tol,
        "gn_at_least_2n_over_3": rg >= 2.0 * n / 3.0,
    }
    if ell is not None and ell % 3 == 2 and ell >= 8:
        from .detector import is_free
        from .errors import BudgetExceeded
        try:
            rep.checks["gn_free"] = is_free(g, ell)
        except BudgetExceeded:
            pass
    return rep
