"""Canonical labelling by partition refinement and individualisation.

The canonical form of a graph is the smallest upper-triangle adjacency bit
string over the leaves of the refinement search tree. The tree is
label-invariant, so two graphs get the same form exactly when they are
isomorphic. Automorphisms found at equal leaves prune sibling branches and
generate the full automorphism group, whose orbits the enumerator needs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceeded, ParameterError
from .graph import Graph

MAX_CANON_N = 12


@dataclass(frozen=True)
class CanonicalForm:
    n: int
    bytes: bytes

    def __lt__(self, other: "CanonicalForm") -> bool:
        return (self.n, self.bytes) < (other.n, other.bytes)


@dataclass(frozen=True)
class Canonization:
    order: tuple[int, ...]      # order[k] = original vertex given canonical label k
    code: int
    generators: tuple[tuple[int, ...], ...]
    orbits: tuple[int, ...]     # orbit representative (minimum vertex) per vertex

    @property
    def last_vertex(self) -> int:
        return self.order[-1]

    @property
    def trivial_group(self) -> bool:
        return not self.generators


def _refine(rows, cells):
    cells = list(cells)
    changed = True
    while changed:
        changed = False
        s = 0
        while s < len(cells):
            smask = 0
            for v in cells[s]:
                smask |= 1 << v
            i = 0
            out = []
            split = False
            for cell in cells:
                if len(cell) == 1:
                    out.append(cell)
                    continue
                first = (rows[cell[0]] & smask).bit_count()
                same = True
                for v in cell:
                    if (rows[v] & smask).bit_count() != first:
                        same = False
                        break
                if same:
                    out.append(cell)
                    continue
                groups: dict[int, list[int]] = {}
                for v in cell:
                    groups.setdefault((rows[v] & smask).bit_count(), []).append(v)
                for key in sorted(groups):
                    out.append(groups[key])
                split = True
            if split:
                cells = out
                changed = True
            s += 1
    return cells


def _code(rows, order) -> int:
    n = len(order)
    code = 0
    for j in range(1, n):
        r = rows[order[j]]
        for i in range(j):
            code = code << 1 | (r >> order[i] & 1)
    return code


def _find(parent, v):
    while parent[v] != v:
        parent[v] = parent[parent[v]]
        v = parent[v]
    return v


def _orbits(n, gens):
    parent = list(range(n))
    for g in gens:
        for v in range(n):
            a, b = _find(parent, v), _find(parent, g[v])
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
    return [_find(parent, v) for v in range(n)]


def canonize(g: Graph, node_limit: int = 1_000_000) -> Canonization:
    n = g.n
    if n > MAX_CANON_N:
        raise ParameterError(f"exact canonizer is limited to n <= {MAX_CANON_N}, got n={n}")
    rows = g.rows
    by_deg: dict[int, list[int]] = {}
    for v in range(n):
        by_deg.setdefault(rows[v].bit_count(), []).append(v)
    start = [by_deg[d] for d in sorted(by_deg)]

    first_order = None
    first_code = None
    best_order = None
    best_code = None
    gens: list[tuple[int, ...]] = []
    nodes = 0

    def leaf(order):
        nonlocal first_order, first_code, best_order, best_code
        code = _code(rows, order)
        if first_order is None:
            first_order, first_code = order, code
            best_order, best_code = order, code
            return
        ref = None
        if code == first_code:
            ref = first_order
        elif code == best_code:
            ref = best_order
        if ref is not None:
            perm = [0] * n
            for a, b in zip(ref, order):
                perm[a] = b
            gens.append(tuple(perm))
        elif code < best_code:
            best_order, best_code = order, code

    def rec(cells, prefix):
        nonlocal nodes
        nodes += 1
        if nodes > node_limit:
            raise BudgetExceeded(f"canonizer exceeded {node_limit} nodes", nodes=nodes)
        cells = _refine(rows, cells)
        if len(cells) == n:
            leaf([c[0] for c in cells])
            return
        ti = 0
        while len(cells[ti]) == 1:
            ti += 1
        target = cells[ti]
        explored: list[int] = []
        seen_gens = -1
        orb = None
        for v in target:
            if explored:
                if len(gens) != seen_gens:
                    seen_gens = len(gens)
                    fixing = [p for p in gens if all(p[u] == u for u in prefix)]
                    orb = _orbits(n, fixing) if fixing else None
                if orb is not None and any(orb[v] == orb[w] for w in explored):
                    continue
            rest = [w for w in target if w != v]
            rec(cells[:ti] + [[v], rest] + cells[ti + 1:], prefix + [v])
            explored.append(v)

    rec(start, [])
    return Canonization(tuple(best_order), best_code, tuple(gens), tuple(_orbits(n, gens)))


def canonical_form(g: Graph) -> CanonicalForm:
    c = canonize(g)
    nbits = g.n * (g.n - 1) // 2
    return CanonicalForm(g.n, c.code.to_bytes((nbits + 7) // 8 or 1, "big"))


def canonical_graph(g: Graph) -> Graph:
    return g.relabel(canonize(g).order)
