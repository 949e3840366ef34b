"""Extremal search for C_l^2-free graphs.

``exhaustive_extremal`` walks the canonical-augmentation tree: every graph on
``m`` vertices is reached exactly once, as its canonical parent (delete the
canonical last vertex) plus one vertex. Freeness is hereditary, so only free
graphs are ever extended and each child only needs a search for copies
through its new vertex.

``hillclimb_extremal`` is the heuristic companion for sizes where exhaustive
enumeration is hopeless.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

from .canon import canonize
from .detector import contains_squared_cycle, find_through_edge, find_through_vertex
from .errors import BudgetExceeded, CheckFailure, ParameterError
from .graph import Graph, gn, turan, turan3_edge_count
from .io import to_graph6
from .spectral import spectral_radius

OBJECTIVES = ("edges", "spectral")
MAX_EXHAUSTIVE_N = 10
DEFAULT_BUDGET = 10 ** 9
SPECTRAL_TIE = 1e-8
PRUNE_SAMPLE_EVERY = 100
COMPARISONS = ("matches_Gn", "exceeds_Gn", "below_Gn")


@dataclass
class SearchReport:
    ell: int
    n: int
    objective: str
    best_value: float
    witnesses: list[str]
    graphs_enumerated: int
    exhaustive: bool
    candidates: int = 0
    gn_value: float | None = None
    comparison: str | None = None
    seed: int | None = None
    budget: int | None = None
    prune_samples: list[tuple[str, int]] = field(default_factory=list, repr=False)


def pattern_edge_count(length: int) -> int:
    return {3: 3, 4: 6}.get(length, 2 * length)


def stanley_bound(m: int) -> float:
    """``rho <= (-1 + sqrt(1 + 8m)) / 2`` for any graph with ``m`` edges."""
    return (-1.0 + math.sqrt(1.0 + 8.0 * m)) / 2.0


def compare_to_gn(value: float, gn_value: float, objective: str) -> str:
    tol = SPECTRAL_TIE if objective == "spectral" else 0
    if abs(value - gn_value) <= tol:
        return "matches_Gn"
    return "exceeds_Gn" if value > gn_value else "below_Gn"


def _gn_value(n: int, objective: str) -> float | None:
    if n < 4:
        return None
    g = gn(n)
    return float(g.edge_count()) if objective == "edges" else spectral_radius(g).rho


# -- canonical augmentation --------------------------------------------------


def _set_orbit_min(s: int, gens, n: int) -> int:
    """Smallest image of the vertex set ``s`` under the group generated by ``gens``."""
    seen = {s}
    todo = [s]
    while todo:
        t = todo.pop()
        for p in gens:
            img = 0
            x = t
            while x:
                low = x & -x
                img |= 1 << p[low.bit_length() - 1]
                x ^= low
            if img not in seen:
                seen.add(img)
                todo.append(img)
    return min(seen)


class _Budget:
    def __init__(self, limit: int | None):
        self.limit = limit
        self.used = 0

    def spend(self, k: int = 1):
        self.used += k
        if self.limit is not None and self.used > self.limit:
            raise BudgetExceeded(f"search budget of {self.limit} candidates exhausted", nodes=self.used)


def _children(rows: tuple, ell: int, budget: _Budget, samples: list | None, counter: list):
    """Free canonical children of the free graph ``rows``, as row tuples."""
    m = len(rows) + 1
    new = m - 1
    degs = [r.bit_count() for r in rows]
    maxd = max(degs) if degs else 0
    maxmask = sum(1 << v for v, d in enumerate(degs) if d == maxd)
    gens = canonize(Graph._trusted(m - 1, rows)).generators if rows else ()
    e0 = sum(degs) // 2
    need_e = pattern_edge_count(ell)
    out = []
    budget.spend(1 << (m - 1))
    for s in range(1 << (m - 1)):
        d = s.bit_count()
        old_max = maxd + 1 if s & maxmask else maxd
        if m > 1 and d < old_max:
            continue
        if gens and _set_orbit_min(s, gens, m - 1) != s:
            continue
        child = [r | (1 << new) if s >> v & 1 else r for v, r in enumerate(rows)]
        child.append(s)
        g = Graph._trusted(m, child)
        if m > 1 and d == old_max:
            c = canonize(g)
            if c.orbits[new] != c.orbits[c.last_vertex]:
                continue
        if m >= ell and e0 + d >= need_e:
            if sum(1 for r in child if r.bit_count() >= 4) >= min(ell, m) or ell < 5:
                if find_through_vertex(g, ell, new) is not None:
                    counter[0] += 1
                    if samples is not None and counter[0] % PRUNE_SAMPLE_EVERY == 0:
                        samples.append((to_graph6(g), new))
                    continue
        out.append(tuple(child))
    return out


def _canonical_g6(rows: tuple) -> str:
    g = Graph._trusted(len(rows), rows)
    return to_graph6(g.relabel(canonize(g).order))


def _score_last_level(parents, ell, objective, budget_limit):
    """Expand the given parents one level and keep the optimisers."""
    budget = _Budget(budget_limit)
    samples: list = []
    counter = [0]
    count = 0
    best = -1.0
    best_rows: list[tuple] = []
    best_key = None
    partial = False
    try:
        for p in parents:
            for child in _children(p, ell, budget, samples, counter):
                count += 1
                e = sum(r.bit_count() for r in child) // 2
                if objective == "edges":
                    if e > best:
                        best, best_rows = e, [child]
                    elif e == best:
                        best_rows.append(child)
                    continue
                if best_rows and stanley_bound(e) < best - SPECTRAL_TIE:
                    continue
                rho = spectral_radius(Graph._trusted(len(child), child)).rho
                if best_rows and rho < best - SPECTRAL_TIE:
                    continue
                if best_rows and rho <= best + SPECTRAL_TIE:
                    # tie: more edges wins, then the smaller canonical form
                    if best_key is None:
                        best_key = (best, sum(r.bit_count() for r in best_rows[0]) // 2,
                                    _canonical_g6(best_rows[0]))
                    cand = (rho, e, _canonical_g6(child))
                    if not _better(cand, best_key):
                        continue
                    best_key = cand
                else:
                    best_key = None
                best, best_rows = rho, [child]
    except BudgetExceeded:
        partial = True
    return count, best, best_rows, samples, budget.used, partial


def _expand_chunk(args):
    parents, ell, objective = args
    count, best, rows, samples, used, _ = _score_last_level(parents, ell, objective, None)
    return count, best, rows, samples, used


def exhaustive_extremal(ell: int, n: int, objective: str = "edges", budget: int | None = DEFAULT_BUDGET,
                        threads: int = 1) -> SearchReport:
    """Exact ex(n, C_ell^2) or spex(n, C_ell^2) by isomorph-free enumeration.

    ``budget`` caps the number of candidate neighbourhoods examined; when it
    runs out the report holds the best graph seen so far and
    ``exhaustive=False``. With ``threads > 1`` and no budget, the last level
    is split across worker processes.
    """
    if objective not in OBJECTIVES:
        raise ParameterError(f"objective must be one of {OBJECTIVES}, got {objective!r}")
    if not 1 <= n <= MAX_EXHAUSTIVE_N:
        raise ParameterError(f"exhaustive search needs 1 <= n <= {MAX_EXHAUSTIVE_N}, got n={n}")
    if ell < 3:
        raise ParameterError(f"cycle length {ell} must be >= 3")
    b = _Budget(budget)
    counter = [0]
    samples: list = []
    level: list[tuple] = [()]
    partial = False
    try:
        for m in range(1, n):
            nxt = []
            for p in level:
                nxt.extend(_children(p, ell, b, samples, counter))
            level = nxt
    except BudgetExceeded:
        partial = True
    if partial:
        count, best, best_rows, used = 0, math.nan, [], b.used
    elif threads > 1 and budget is None and len(level) > 1:
        chunks = [level[i::threads] for i in range(threads)]
        with ProcessPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(_expand_chunk, [(c, ell, objective) for c in chunks]))
        count = sum(r[0] for r in results)
        used = b.used + sum(r[4] for r in results)
        for r in results:
            samples.extend(r[3])
        best = max(r[1] for r in results)
        best_rows = [row for r in results if r[1] >= best - (SPECTRAL_TIE if objective == "spectral" else 0)
                     for row in r[2]]
    else:
        remaining = None if budget is None else max(0, budget - b.used)
        count, best, best_rows, s2, used2, partial = _score_last_level(level, ell, objective, remaining)
        samples.extend(s2)
        used = b.used + used2
    witnesses = sorted({_canonical_g6(r) for r in best_rows})
    if objective == "spectral" and len(witnesses) > 1:
        # keep the single optimiser: most edges, then smallest canonical form
        scored = []
        for w_rows in best_rows:
            g = Graph._trusted(len(w_rows), w_rows)
            scored.append((-spectral_radius(g).rho, -g.edge_count(), _canonical_g6(w_rows)))
        scored.sort()
        top = scored[0]
        tied = [s for s in scored if s[0] <= top[0] + SPECTRAL_TIE]
        tied.sort(key=lambda s: (s[1], s[2]))
        witnesses = [tied[0][2]]
    _reverify(witnesses, ell)
    gval = _gn_value(n, objective)
    value = float(best)
    return SearchReport(
        ell=ell, n=n, objective=objective, best_value=value, witnesses=witnesses,
        graphs_enumerated=count, exhaustive=not partial, candidates=used,
        gn_value=gval,
        comparison=None if gval is None or partial else compare_to_gn(value, gval, objective),
        budget=budget, prune_samples=samples,
    )


def _reverify(witnesses, ell: int):
    from .io import from_graph6
    for w in witnesses:
        if contains_squared_cycle(from_graph6(w), ell) is not None:
            raise CheckFailure(f"witness {w} contains C_{ell}^2")


def enumeration_tree_counts(n: int, ell: int | None = None) -> list[int]:
    """Number of nodes on each level 1..n of the augmentation tree."""
    ell = n + 1 if ell is None else ell
    b = _Budget(None)
    level: list[tuple] = [()]
    counts = []
    for m in range(1, n + 1):
        nxt = []
        for p in level:
            nxt.extend(_children(p, ell, b, None, [0]))
        level = nxt
        counts.append(len(level))
    return counts


def brute_force_class_count(n: int) -> int:
    """Isomorphism classes on ``n`` vertices by canonising all labelled graphs (n <= 5)."""
    if n > 5:
        raise ParameterError("brute-force class count is limited to n <= 5")
    pairs = list(combinations(range(n), 2))
    forms = set()
    for mask in range(1 << len(pairs)):
        rows = [0] * n
        for k, (u, v) in enumerate(pairs):
            if mask >> k & 1:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
        forms.add(canonize(Graph._trusted(n, rows)).code)
    return len(forms)


# -- hill climbing -----------------------------------------------------------


def random_free_graph(n: int, ell: int, rng: random.Random, node_limit: int = 200_000) -> Graph:
    """Greedy maximal-ish free graph: add edges in random order when certified free."""
    pairs = list(combinations(range(n), 2))
    rng.shuffle(pairs)
    rows = [0] * n
    for u, v in pairs:
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        if not _still_free(Graph._trusted(n, rows), ell, u, v, node_limit):
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
    return Graph._trusted(n, rows)


def _still_free(g: Graph, ell: int, u: int, v: int, node_limit: int) -> bool:
    # Unknown answers count as not free, so the climber never leaves the free set.
    try:
        return find_through_edge(g, ell, u, v, node_limit) is None
    except BudgetExceeded:
        return False


class _Climb:
    def __init__(self, ell, objective, budget, rng, node_limit):
        self.ell = ell
        self.objective = objective
        self.budget = budget
        self.rng = rng
        self.node_limit = node_limit
        self.calls = 0

    def value(self, g: Graph) -> float:
        return float(g.edge_count()) if self.objective == "edges" else spectral_radius(g).rho

    def try_add(self, g: Graph, u: int, v: int) -> Graph | None:
        if self.calls >= self.budget:
            return None
        self.calls += 1
        h = g.add_edges([(u, v)])
        return h if _still_free(h, self.ell, u, v, self.node_limit) else None

    def non_edges(self, g: Graph):
        out = [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.rows[u] >> v & 1]
        self.rng.shuffle(out)
        return out

    def add_all(self, g: Graph) -> Graph:
        progress = True
        while progress and self.calls < self.budget:
            progress = False
            for u, v in self.non_edges(g):
                h = self.try_add(g, u, v)
                if h is not None:
                    g, progress = h, True
        return g

    def swap(self, g: Graph, current: float) -> Graph | None:
        edges = list(g.edges())
        self.rng.shuffle(edges)
        non = self.non_edges(g)
        for a, b in edges:
            base = g.delete_edges([(a, b)])
            for u, v in non:
                if self.calls >= self.budget:
                    return None
                h = self.try_add(base, u, v)
                if h is None:
                    continue
                if self.objective == "spectral":
                    if self.value(h) > current + SPECTRAL_TIE:
                        return h
                    continue
                # an edge swap keeps e fixed; take it only if it unlocks an addition
                for x, y in self.non_edges(h):
                    if (x, y) in ((a, b),):
                        continue
                    h2 = self.try_add(h, x, y)
                    if h2 is not None:
                        return h2
                    if self.calls >= self.budget:
                        return None
        return None

    def run(self, g: Graph) -> Graph:
        g = self.add_all(g)
        cur = self.value(g)
        while self.calls < self.budget:
            h = self.swap(g, cur)
            if h is None:
                break
            g = self.add_all(h)
            cur = self.value(g)
        return g


def _better(a: tuple, b: tuple | None) -> bool:
    # a, b = (value, edges, graph6)
    if b is None:
        return True
    if abs(a[0] - b[0]) > SPECTRAL_TIE:
        return a[0] > b[0]
    if a[1] != b[1]:
        return a[1] > b[1]
    return a[2] < b[2]


def hillclimb_extremal(ell: int, n: int, objective: str = "edges", budget: int = 2000, seed: int = 0,
                       random_starts: int = 1, node_limit: int = 200_000) -> SearchReport:
    """Best free graph reached from G(n), T_{n,3}, T_{n,2} and seeded random free graphs.

    ``budget`` is the number of freeness checks each start may spend. Moves
    are single edge additions, then 1-swaps once no addition keeps the
    graph free. Deterministic for a fixed seed and budget.
    """
    if objective not in OBJECTIVES:
        raise ParameterError(f"objective must be one of {OBJECTIVES}, got {objective!r}")
    if not 3 <= n <= 512:
        raise ParameterError(f"hill climbing needs 3 <= n <= 512, got n={n}")
    rng = random.Random(seed)
    starts: list[Graph] = []
    # T_{n,2} is free for every l (chi(C_l^2) >= 3) and anchors the l = 0 mod 3 regime
    for g in ([gn(n)] if n >= 4 else []) + [turan(n, 3)] + ([turan(n, 2)] if n >= 2 else []):
        try:
            if contains_squared_cycle(g, ell, node_limit * 100) is None:
                starts.append(g)
        except BudgetExceeded:
            pass
    for _ in range(random_starts):
        starts.append(random_free_graph(n, ell, rng, node_limit))
    best = None
    best_g = None
    calls = 0
    for g in starts:
        climb = _Climb(ell, objective, budget, rng, node_limit)
        h = climb.run(g)
        calls += climb.calls
        key = (climb.value(h), h.edge_count(), _witness_g6(h))
        if _better(key, best):
            best, best_g = key, h
    witnesses = [best[2]]
    _reverify(witnesses, ell)
    gval = _gn_value(n, objective)
    return SearchReport(
        ell=ell, n=n, objective=objective, best_value=best[0], witnesses=witnesses,
        graphs_enumerated=len(starts), exhaustive=False, candidates=calls, gn_value=gval,
        comparison=None if gval is None else compare_to_gn(best[0], gval, objective),
        seed=seed, budget=budget,
    )


def _witness_g6(g: Graph) -> str:
    if g.n <= 12:
        return to_graph6(g.relabel(canonize(g).order))
    return to_graph6(g)


# -- theorem consistency -------------------------------------------------------


CONSISTENCY_COLUMNS = (
    "ell", "n", "ell_mod_3", "gn_free", "t3_free", "t2_free", "e_t3", "e_gn", "edges_strict",
    "rho_t3", "rho_gn", "rho_strict", "expected_ok",
)


def theorem_consistency(ell_list, n_range, node_limit: int = 10 ** 8) -> list[dict]:
    """Freeness of G(n), T_{n,3}, T_{n,2} and the strict comparisons, one row per (ell, n).

    ``expected_ok`` combines only the predicates the theory predicts at every
    n: G(n) free when ell = 2 mod 3, T_{n,3} free when chi(C_ell^2) = 4,
    T_{n,2} free always, and both strict comparisons.
    """
    rows = []
    for ell in sorted(set(ell_list)):
        for n in sorted(set(n_range)):
            if n < 4:
                raise ParameterError(f"G(n) needs n >= 4, got n={n}")
            g, t3, t2 = gn(n), turan(n, 3), turan(n, 2)
            gn_free = contains_squared_cycle(g, ell, node_limit) is None
            t3_free = contains_squared_cycle(t3, ell, node_limit) is None
            t2_free = contains_squared_cycle(t2, ell, node_limit) is None
            e_t3, e_gn = turan3_edge_count(n), g.edge_count()
            r_t3, r_gn = spectral_radius(t3).rho, spectral_radius(g).rho
            ok = e_t3 < e_gn and r_t3 < r_gn and t2_free
            if ell % 3 == 2:
                ok = ok and gn_free
            if ell % 3 != 0:
                ok = ok and t3_free
            rows.append({
                "ell": ell, "n": n, "ell_mod_3": ell % 3, "gn_free": gn_free, "t3_free": t3_free,
                "t2_free": t2_free, "e_t3": e_t3, "e_gn": e_gn, "edges_strict": e_t3 < e_gn,
                "rho_t3": r_t3, "rho_gn": r_gn, "rho_strict": r_t3 < r_gn, "expected_ok": ok,
            })
    return rows
