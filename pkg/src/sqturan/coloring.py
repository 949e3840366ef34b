"""Exact chromatic numbers and the explicit colorings of squared paths and cycles.

Vertex ``j-1`` of ``cycle_square(l)`` / ``path_square(l)`` is the vertex
``v_j`` of the usual ``v_1 v_2 ... v_l`` naming.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import BudgetExceeded, CheckFailure, ParameterError
from .graph import Graph, _bits, cycle_square, path_square

DEFAULT_NODE_LIMIT = 10_000_000


@dataclass(frozen=True)
class ColoringCertificate:
    colors: tuple[int, ...]
    num_colors: int
    claim: str  # "equals_chi" or "upper_bound"

    def check(self, g: Graph) -> None:
        if len(self.colors) != g.n:
            raise CheckFailure(f"coloring has {len(self.colors)} entries for {g.n} vertices")
        used = set(self.colors)
        if used != set(range(self.num_colors)):
            raise CheckFailure(f"colors used {sorted(used)} are not exactly 0..{self.num_colors - 1}")
        for u, v in g.edges():
            if self.colors[u] == self.colors[v]:
                raise CheckFailure(f"edge ({u}, {v}) joins two vertices of color {self.colors[u]}")

    def partition(self) -> "GoodPartition":
        parts: list[list[int]] = [[] for _ in range(self.num_colors)]
        for v, c in enumerate(self.colors):
            parts[c].append(v)
        return GoodPartition.of(parts)


@dataclass(frozen=True)
class GoodPartition:
    """Vertex partition into independent sets, classes sorted by minimum vertex."""

    parts: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, parts: Sequence[Sequence[int]]) -> "GoodPartition":
        cleaned = [tuple(sorted(p)) for p in parts if p]
        return cls(tuple(sorted(cleaned)))

    def check(self, g: Graph) -> None:
        seen = [p for part in self.parts for p in part]
        if sorted(seen) != list(range(g.n)):
            raise CheckFailure("parts do not cover the vertex set exactly once")
        for part in self.parts:
            mask = sum(1 << v for v in part)
            for v in part:
                if g.rows[v] & mask:
                    bad = _bits(g.rows[v] & mask)[0]
                    raise CheckFailure(f"part {list(part)} contains the edge ({v}, {bad})")

    def colors(self, n: int) -> tuple[int, ...]:
        out = [0] * n
        for c, part in enumerate(self.parts):
            for v in part:
                out[v] = c
        return tuple(out)

    def __len__(self):
        return len(self.parts)


# -- exact chromatic number ------------------------------------------------


def greedy_clique(g: Graph) -> list[int]:
    """Largest clique found by greedy extension from every start vertex."""
    degs = g.degrees()
    best: list[int] = []
    for s in range(g.n):
        clique = [s]
        cand = g.rows[s]
        while cand:
            v = max(_bits(cand), key=lambda u: ((g.rows[u] & cand).bit_count(), degs[u], -u))
            clique.append(v)
            cand &= g.rows[v]
        if len(clique) > len(best):
            best = clique
    return best


def dsatur_greedy(g: Graph) -> list[int]:
    n = g.n
    colors = [-1] * n
    classes: list[int] = []
    uncolored = set(range(n))
    degs = g.degrees()
    while uncolored:
        def key(v):
            sat = sum(1 for cls in classes if g.rows[v] & cls)
            return (sat, degs[v], -v)

        v = max(uncolored, key=key)
        c = 0
        while c < len(classes) and g.rows[v] & classes[c]:
            c += 1
        if c == len(classes):
            classes.append(0)
        classes[c] |= 1 << v
        colors[v] = c
        uncolored.discard(v)
    return colors


class _Counter:
    def __init__(self, limit: int):
        self.limit = limit
        self.nodes = 0

    def tick(self):
        self.nodes += 1
        if self.nodes > self.limit:
            raise BudgetExceeded(f"coloring search exceeded {self.limit} nodes", nodes=self.nodes)


def _k_coloring(g: Graph, k: int, precolored: Sequence[int], counter: _Counter) -> list[int] | None:
    """DSATUR-ordered backtracking for a proper k-coloring, or None."""
    n = g.n
    rows = g.rows
    classes = [0] * k
    colors = [-1] * n
    for c, v in enumerate(precolored):
        colors[v] = c
        classes[c] |= 1 << v
    uncolored = (1 << n) - 1
    for v in precolored:
        uncolored &= ~(1 << v)
    degs = g.degrees()

    def rec(uncolored: int, used: int) -> bool:
        counter.tick()
        if not uncolored:
            return True
        best_v, best_key, best_allowed = -1, None, None
        for v in _bits(uncolored):
            allowed = [c for c in range(min(k, used + 1)) if not rows[v] & classes[c]]
            if not allowed:
                return False
            sat = sum(1 for c in range(used) if rows[v] & classes[c])
            key = (sat, (rows[v] & uncolored).bit_count(), degs[v])
            if best_key is None or key > best_key:
                best_v, best_key, best_allowed = v, key, allowed
        v = best_v
        for c in best_allowed:
            classes[c] |= 1 << v
            colors[v] = c
            if rec(uncolored & ~(1 << v), max(used, c + 1)):
                return True
            classes[c] &= ~(1 << v)
            colors[v] = -1
        return False

    if rec(uncolored, len(precolored)):
        return colors
    return None


def chromatic_number(g: Graph, node_limit: int = DEFAULT_NODE_LIMIT) -> tuple[int, ColoringCertificate]:
    """Exact chi(g) with a witness coloring.

    The lower bound comes from a greedy clique; colorability is decided for
    each k between that bound and the DSATUR upper bound.
    """
    if g.n > 64:
        raise ParameterError(f"exact chromatic number is limited to n <= 64, got n={g.n}")
    clique = greedy_clique(g)
    upper = dsatur_greedy(g)
    best = upper
    hi = max(upper) + 1
    counter = _Counter(node_limit)
    for k in range(len(clique), hi):
        found = _k_coloring(g, k, clique, counter)
        if found is not None:
            best = found
            break
    cert = _normalize(best, "equals_chi")
    cert.check(g)
    return cert.num_colors, cert


def _normalize(colors: Sequence[int], claim: str) -> ColoringCertificate:
    relabel: dict[int, int] = {}
    out = []
    for c in colors:
        if c not in relabel:
            relabel[c] = len(relabel)
        out.append(relabel[c])
    return ColoringCertificate(tuple(out), len(relabel), claim)


def is_k_colorable(g: Graph, k: int, node_limit: int = DEFAULT_NODE_LIMIT) -> bool:
    if k <= 0:
        return False
    return _k_coloring(g, k, (), _Counter(node_limit)) is not None


def enumerate_colorings(g: Graph, k: int, node_limit: int = DEFAULT_NODE_LIMIT) -> Iterator[tuple[int, ...]]:
    """Every proper coloring with colors ``0..k-1`` (labeled, not up to permutation)."""
    counter = _Counter(node_limit)
    n = g.n
    colors = [-1] * n
    lower = [_bits(g.rows[v] & ((1 << v) - 1)) for v in range(n)]

    def rec(v: int):
        counter.tick()
        if v == n:
            yield tuple(colors)
            return
        for c in range(k):
            if all(colors[u] != c for u in lower[v]):
                colors[v] = c
                yield from rec(v + 1)
        colors[v] = -1

    yield from rec(0)


# -- explicit constructions ---------------------------------------------------


def _residue_parts(length: int) -> list[list[int]]:
    # V_i = {v_j : 3 | (j - i)}, i = 1, 2, 3; vertex v_j is index j - 1.
    return [[j - 1 for j in range(1, length + 1) if (j - i) % 3 == 0] for i in (1, 2, 3)]


def residue_coloring_path(length: int) -> GoodPartition:
    if length < 3:
        raise ParameterError(f"squared path needs length >= 3, got {length}")
    part = GoodPartition.of(_residue_parts(length))
    part.check(path_square(length))
    return part


def _v(j: int) -> int:
    return j - 1


def explicit_coloring_cycle(length: int) -> GoodPartition:
    """Explicit chi(C_l^2)-coloring: residue classes when 3 | l, else a 4-partition."""
    if length < 6:
        raise ParameterError(f"cycle coloring construction needs length >= 6, got {length}")
    v1, v2, v3 = (set(p) for p in _residue_parts(length))
    r = length % 3
    if r == 0:
        parts = [v1, v2, v3]
    elif r == 1:
        last = _v(length)
        parts = [v1 - {last}, v2, v3, {last}]
    else:
        parts = [
            (v1 - {_v(1), _v(4)}) | {_v(3)},
            (v2 - {_v(2), _v(length)}) | {_v(1)},
            (v3 - {_v(3)}) | {_v(2)},
            {_v(4), _v(length)},
        ]
    part = GoodPartition.of([sorted(p) for p in parts])
    part.check(cycle_square(length))
    return part


def critical_edges(length: int) -> list[tuple[int, int]]:
    """Edges whose removal from C_l^2 drops chi to 3 (l not divisible by 3).

    l = 1 (mod 3): the single edge v_1 v_l. l = 2 (mod 3): the pair v_l v_1, v_3 v_4.
    """
    if length % 3 == 1:
        return [(_v(1), _v(length))]
    if length % 3 == 2:
        return [(_v(length), _v(1)), (_v(3), _v(4))]
    raise ParameterError(f"no critical edge set for length {length} divisible by 3")


def explicit_coloring_edge_deleted(length: int) -> GoodPartition:
    """Explicit 3-coloring of ``C_l^2`` minus :func:`critical_edges`."""
    if length < 6 or length % 3 == 0:
        raise ParameterError(f"needs length >= 6 not divisible by 3, got {length}")
    v1, v2, v3 = (set(p) for p in _residue_parts(length))
    if length % 3 == 1:
        parts = [v1, v2, v3]
    else:
        parts = [(v1 - {_v(1)}) | {_v(3)}, (v2 - {_v(2)}) | {_v(1)}, (v3 - {_v(3)}) | {_v(2)}]
    part = GoodPartition.of([sorted(p) for p in parts])
    part.check(cycle_square(length).delete_edges(critical_edges(length)))
    return part


def good_partition_uniqueness_check(length: int, node_limit: int = DEFAULT_NODE_LIMIT) -> bool:
    """True iff every proper 3-coloring of P_l^2 induces the residue partition."""
    if not 4 <= length <= 20:
        raise ParameterError(f"uniqueness check supports 4 <= length <= 20, got {length}")
    target = GoodPartition.of(_residue_parts(length))
    g = path_square(length)
    found = False
    for colors in enumerate_colorings(g, 3, node_limit):
        found = True
        parts: list[list[int]] = [[], [], []]
        for v, c in enumerate(colors):
            parts[c].append(v)
        if GoodPartition.of(parts) != target:
            return False
    return found
