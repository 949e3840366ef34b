"""Per-graph statistics for the stability-style argument on C_{3k+2}^2-free graphs.

Given a graph and a parameter ``eta``, this module computes a 3-partition
maximising the number of crossing edges, the low-degree set ``S``, the sets
``W^lambda`` of vertices with large degree inside their own part, the trimmed
parts, part-wise matching numbers, and evaluates each structural claim as a
measured predicate. Nothing here is asserted as a theorem: on small or
non-extremal graphs the predicates simply record what is true.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import BudgetExceeded, ParameterError
from .graph import Graph, _bits
from .matching import matching_number
from .spectral import eigenvector_profile, spectral_radius

LAMBDAS = (1, 5)
DEFAULT_ETA = 1e-4
DEFAULT_RESTARTS = 8


@dataclass(frozen=True)
class TriPartition:
    parts: tuple[frozenset, frozenset, frozenset]
    cross_edges: int
    internal_edges: int
    mode: str = "given"
    seed: int | None = None

    @classmethod
    def from_assignment(cls, g: Graph, assign: Sequence[int], mode: str = "given",
                        seed: int | None = None) -> "TriPartition":
        parts = tuple(frozenset(v for v in range(g.n) if assign[v] == i) for i in range(3))
        internal = sum(_internal_edges(g, p) for p in parts)
        return cls(parts, g.edge_count() - internal, internal, mode, seed)

    @classmethod
    def from_parts(cls, g: Graph, parts: Sequence[Sequence[int]]) -> "TriPartition":
        assign = [-1] * g.n
        for i, p in enumerate(parts):
            for v in p:
                assign[v] = i
        if len(parts) != 3 or -1 in assign or sum(len(p) for p in parts) != g.n:
            raise ParameterError("parts must be three disjoint sets covering every vertex")
        return cls.from_assignment(g, assign)

    def assignment(self, n: int) -> list[int]:
        out = [-1] * n
        for i, p in enumerate(self.parts):
            for v in p:
                out[v] = i
        return out

    def sizes(self) -> tuple[int, int, int]:
        return tuple(len(p) for p in self.parts)


def _mask(vs) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def _internal_edges(g: Graph, part) -> int:
    m = _mask(part)
    return sum((g.rows[v] & m).bit_count() for v in part) // 2


def part_degree(g: Graph, v: int, part) -> int:
    """``d_X(v)``: neighbours of ``v`` inside ``part``."""
    return (g.rows[v] & _mask(part)).bit_count()


# -- max-cut into three parts --------------------------------------------------


def _vertex_moves(rows, n, assign, masks) -> bool:
    """Single-vertex moves on strict improvement, scanning by vertex id."""
    any_move = False
    moved = True
    while moved:
        moved = False
        for v in range(n):
            i = assign[v]
            d = [(rows[v] & masks[j]).bit_count() for j in range(3)]
            j = min(range(3), key=lambda t: (d[t], t))
            if d[j] < d[i]:
                masks[i] &= ~(1 << v)
                masks[j] |= 1 << v
                assign[v] = j
                moved = any_move = True
    return any_move


def _first_swap(rows, n, assign, masks) -> bool:
    """Apply the first strictly improving exchange of two vertices in different parts."""
    for u in range(n):
        i = assign[u]
        du = [(rows[u] & masks[t]).bit_count() for t in range(3)]
        for w in range(u + 1, n):
            j = assign[w]
            if j == i:
                continue
            adj = rows[u] >> w & 1
            dw_i = (rows[w] & masks[i]).bit_count()
            dw_j = (rows[w] & masks[j]).bit_count()
            if du[j] - du[i] + dw_i - dw_j - 2 * adj < 0:
                masks[i] ^= (1 << u) | (1 << w)
                masks[j] ^= (1 << u) | (1 << w)
                assign[u], assign[w] = j, i
                return True
    return False


def _local_search(g: Graph, assign: list[int]) -> list[int]:
    # Vertex moves to a local optimum, then pair exchanges; the result is
    # always single-move optimal because vertex moves run last.
    rows = g.rows
    masks = [0, 0, 0]
    for v, p in enumerate(assign):
        masks[p] |= 1 << v
    _vertex_moves(rows, g.n, assign, masks)
    while _first_swap(rows, g.n, assign, masks):
        _vertex_moves(rows, g.n, assign, masks)
    return assign


def is_move_optimal(g: Graph, tri: TriPartition) -> bool:
    """No single vertex can move to another part and reduce its own-part degree."""
    masks = [_mask(p) for p in tri.parts]
    for i, p in enumerate(tri.parts):
        for v in p:
            own = (g.rows[v] & masks[i]).bit_count()
            if any((g.rows[v] & masks[j]).bit_count() < own for j in range(3) if j != i):
                return False
    return True


def _exact(g: Graph, node_limit: int, incumbent: list[int]) -> list[int]:
    n = g.n
    rows = g.rows
    order = sorted(range(n), key=lambda v: (-rows[v].bit_count(), v))
    best = list(incumbent)
    best_internal = sum(_internal_edges(g, [v for v in range(n) if best[v] == i]) for i in range(3))
    assign = [-1] * n
    masks = [0, 0, 0]
    nodes = 0

    def rec(k: int, used: int, internal: int):
        nonlocal best, best_internal, nodes
        nodes += 1
        if nodes > node_limit:
            raise BudgetExceeded(f"exact 3-partition search exceeded {node_limit} nodes", nodes=nodes)
        if k == n:
            if internal < best_internal:
                best_internal = internal
                best = list(assign)
            return
        # Each later vertex adds at least its smallest degree into an existing part.
        bound = internal
        for v in order[k + 1:]:
            bound += min((rows[v] & masks[j]).bit_count() for j in range(3))
            if bound >= best_internal:
                return
        v = order[k]
        costs = [((rows[v] & masks[j]).bit_count(), j) for j in range(min(3, used + 1))]
        for cost, j in sorted(costs):
            if internal + cost >= best_internal:
                continue
            assign[v] = j
            masks[j] |= 1 << v
            rec(k + 1, max(used, j + 1), internal + cost)
            masks[j] &= ~(1 << v)
            assign[v] = -1

    rec(0, 0, 0)
    return best


def max_cross_tripartition(g: Graph, mode: str = "local", restarts: int = DEFAULT_RESTARTS,
                           seed: int = 0, node_limit: int = 50_000_000) -> TriPartition:
    """3-partition with as many crossing edges as the chosen mode achieves.

    ``exact`` (n <= 15) returns a global maximiser; ``local`` runs seeded
    restarts from balanced shuffled assignments. Each restart applies
    single-vertex moves (strict improvement, scan by vertex id) and pair
    exchanges until neither improves, and the best restart is kept, ties
    going to the lowest restart.
    """
    if mode not in ("exact", "local"):
        raise ParameterError(f"mode must be 'exact' or 'local', got {mode!r}")
    best: list[int] | None = None
    best_cross = -1
    best_seed = None
    for r in range(max(1, restarts)):
        rng = random.Random(f"{seed}:{r}")
        perm = list(range(g.n))
        rng.shuffle(perm)
        assign = [0] * g.n
        for k, v in enumerate(perm):
            assign[v] = k % 3
        assign = _local_search(g, assign)
        tri = TriPartition.from_assignment(g, assign)
        if tri.cross_edges > best_cross:
            best, best_cross, best_seed = assign, tri.cross_edges, r
    if mode == "local":
        tri = TriPartition.from_assignment(g, best, "local", seed)
        if not is_move_optimal(g, tri):
            raise AssertionError("local search returned a partition that a single move improves")
        return tri
    if g.n > 15:
        raise ParameterError(f"exact mode is limited to n <= 15, got n={g.n}")
    return TriPartition.from_assignment(g, _exact(g, node_limit, best), "exact", None)


def partition_size_check(parts: TriPartition, eta: float) -> bool:
    """Every part size lies within ``eta * n`` of ``n / 3``."""
    n = sum(parts.sizes())
    e = Fraction(eta)
    return all(abs(Fraction(s) - Fraction(n, 3)) <= e * n for s in parts.sizes())


# -- S, W^lambda, trimmed parts ------------------------------------------------


@dataclass(frozen=True)
class ProofSets:
    eta: float
    S: frozenset
    W_parts: dict          # lambda -> (W_1, W_2, W_3)
    W: dict                # lambda -> union
    trimmed: dict          # lambda -> (V_1^lambda, V_2^lambda, V_3^lambda)


def low_degree_threshold(n: int, eta: float) -> Fraction:
    return (Fraction(2, 3) - 6 * Fraction(eta)) * n


def own_part_threshold(n: int, eta: float, lam: int) -> Fraction:
    return 2 ** lam * Fraction(eta) * n


def compute_proof_sets(g: Graph, parts: TriPartition, eta: float) -> ProofSets:
    """``S = {v : d(v) <= (2/3 - 6 eta) n}``, ``W_i^lam = {v in V_i : d_{V_i}(v) >= 2^lam eta n}``."""
    if not 0 < eta < 1 / 6:
        raise ParameterError(f"eta must satisfy 0 < eta < 1/6, got {eta}")
    n = g.n
    s_thr = low_degree_threshold(n, eta)
    S = frozenset(v for v in range(n) if g.degree(v) <= s_thr)
    masks = [_mask(p) for p in parts.parts]
    W_parts, W, trimmed = {}, {}, {}
    for lam in LAMBDAS:
        thr = own_part_threshold(n, eta, lam)
        wp = tuple(frozenset(v for v in p if (g.rows[v] & masks[i]).bit_count() >= thr)
                   for i, p in enumerate(parts.parts))
        W_parts[lam] = wp
        W[lam] = wp[0] | wp[1] | wp[2]
        trimmed[lam] = tuple(frozenset(p - W[lam] - S) for p in parts.parts)
    return ProofSets(eta, S, W_parts, W, trimmed)


# -- lemma audit -------------------------------------------------------------


@dataclass
class LemmaReport:
    lemma: str
    holds: bool
    quantities: dict = field(default_factory=dict)
    thresholds: dict = field(default_factory=dict)


def eta_ceiling(k: int) -> float:
    """Largest admissible eta for l = 3k + 2 is strictly below ``1 / (9 (120 k + 48))``."""
    return 1.0 / (9 * (120 * k + 48))


def _nu(g: Graph, vs) -> int:
    vs = sorted(vs)
    return matching_number(g.induced_subgraph(vs)) if len(vs) >= 2 else 0


def lemma_audit(g: Graph, eta: float = DEFAULT_ETA, length: int | None = None,
                parts: TriPartition | None = None, restarts: int = DEFAULT_RESTARTS,
                seed: int = 0) -> list[LemmaReport]:
    """Evaluate each structural claim about extremal graphs as a predicate on ``g``."""
    n = g.n
    if length is not None and length % 3 == 2 and length >= 8:
        k = (length - 2) // 3
        if eta >= eta_ceiling(k):
            warnings.warn(f"eta={eta} is not below 1/(9(120k+48)) = {eta_ceiling(k):.3e} for k={k}",
                          stacklevel=2)
    if parts is None:
        mode = "exact" if n <= 12 else "local"
        parts = max_cross_tripartition(g, mode=mode, restarts=restarts, seed=seed)
    sets = compute_proof_sets(g, parts, eta)
    spec = spectral_radius(g)
    prof = eigenvector_profile(spec)
    e = g.edge_count()
    fe = Fraction(eta)
    reports: list[LemmaReport] = []

    reports.append(LemmaReport("rho_lower", spec.rho >= 2 * n / 3,
                               {"rho": spec.rho, "e": e, "rayleigh": 2 * e / n},
                               {"rho_min": 2 * n / 3}))

    sizes = parts.sizes()
    reports.append(LemmaReport(
        "near_turan",
        e >= (Fraction(1, 3) - fe ** 3) * n * n and parts.internal_edges <= fe ** 3 * n * n
        and partition_size_check(parts, eta),
        {"e": e, "internal_edges": parts.internal_edges, "cross_edges": parts.cross_edges,
         "sizes": sizes},
        {"e_min": float((Fraction(1, 3) - fe ** 3) * n * n), "internal_max": float(fe ** 3 * n * n),
         "size_dev_max": eta * n}))

    reports.append(LemmaReport("few_low_degree", len(sets.S) <= fe * n,
                               {"|S|": len(sets.S)},
                               {"degree_max": float(low_degree_threshold(n, eta)), "|S|_max": eta * n}))

    w_ok = all(len(sets.W[lam]) <= fe ** 2 * n / 2 ** (lam - 1) for lam in LAMBDAS)
    reports.append(LemmaReport("w_size", w_ok,
                               {f"|W^{lam}|": len(sets.W[lam]) for lam in LAMBDAS},
                               {f"|W^{lam}|_max": float(fe ** 2 * n / 2 ** (lam - 1)) for lam in LAMBDAS}))

    nu_lam = {(i + 1, lam): _nu(g, sets.trimmed[lam][i]) for lam in LAMBDAS for i in range(3)}
    reports.append(LemmaReport("trimmed_matching", all(v <= 1 for v in nu_lam.values()),
                               {f"nu_{i}^{lam}": v for (i, lam), v in nu_lam.items()},
                               {"nu_max": 1}))

    reports.append(LemmaReport("no_low_degree", not sets.S, {"|S|": len(sets.S)}, {"|S|": 0}))

    w5 = len(sets.W[5])
    reports.append(LemmaReport("w5_at_most_one", w5 <= 1, {"|W^5|": w5},
                               {"|W^5|_max": 1, "own_degree_min": float(own_part_threshold(n, eta, 5))}))

    reports.append(LemmaReport("perron_floor", prof.ratio_floor > 3 / 5,
                               {"ratio_floor": prof.ratio_floor, "u_star": prof.max_entry_vertex,
                                "residual": spec.residual},
                               {"ratio_floor_min": 3 / 5}))

    nus = [_nu(g, p) for p in parts.parts]
    reports.append(LemmaReport("extremal_structure", w5 == 1 and sum(nus) == 1,
                               {"|W^5|": w5, "nu_1": nus[0], "nu_2": nus[1], "nu_3": nus[2],
                                "sum_nu": sum(nus)},
                               {"|W^5|": 1, "sum_nu": 1}))

    exch = all(3 * part_degree(g, v, p) <= g.degree(v) for p in parts.parts for v in p)
    reports.append(LemmaReport("own_part_degree", exch, {"mode": parts.mode},
                               {"own_degree_max": "d(v)/3"}))
    return reports


def audit_summary(reports: list[LemmaReport]) -> dict[str, bool]:
    return {r.lemma: r.holds for r in reports}
