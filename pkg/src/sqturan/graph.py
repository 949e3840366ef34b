"""Simple undirected graphs stored as bitset adjacency rows, plus the graph
families used throughout the package (cycles, paths, powers, Turán graphs,
complete multipartite graphs, joins, and ``G(n) = K_1 + T_{n-1,3}``).

Vertices are ``0..n-1``. Row ``v`` is a Python int whose bit ``u`` is set iff
``uv`` is an edge. Graphs are immutable; every "modifying" operation returns
a new graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .errors import ParameterError

MAX_VERTICES = 512


def _bits(mask: int) -> list[int]:
    """Indices of set bits in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            raise ParameterError(f"vertex count n={self.n} outside 1..{MAX_VERTICES}")
        if len(self.rows) != self.n:
            raise ParameterError(f"expected {self.n} rows, got {len(self.rows)}")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise ParameterError(f"row {v} has bits outside 0..{self.n - 1}")
            if row >> v & 1:
                raise ParameterError(f"loop at vertex {v}")
            for u in _bits(row):
                if not self.rows[u] >> v & 1:
                    raise ParameterError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def _trusted(cls, n: int, rows: Sequence[int]) -> "Graph":
        # Skips validation; only for rows produced by code that keeps the invariants.
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "rows", tuple(rows))
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if not 1 <= n <= MAX_VERTICES:
            raise ParameterError(f"vertex count n={n} outside 1..{MAX_VERTICES}")
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge ({u}, {v}) has a vertex outside 0..{n - 1}")
            if u == v:
                raise ParameterError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls._trusted(n, rows)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls.from_edges(n, ())

    # -- queries ---------------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return _bits(self.rows[v])

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.rows[u] >> (u + 1) << (u + 1))]

    def min_degree(self) -> int:
        return min(self.degrees())

    def max_degree(self) -> int:
        return max(self.degrees())

    def components(self) -> list[list[int]]:
        seen = 0
        comps = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp = 1 << s
            frontier = 1 << s
            while frontier:
                nxt = 0
                for v in _bits(frontier):
                    nxt |= self.rows[v]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(_bits(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def distances_from(self, s: int) -> list[int]:
        """BFS distances from ``s``; unreachable vertices get -1."""
        dist = [-1] * self.n
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in _bits(self.rows[v]):
                if dist[u] < 0:
                    dist[u] = dist[v] + 1
                    queue.append(u)
        return dist

    def to_numpy(self):
        import numpy as np

        a = np.zeros((self.n, self.n), dtype=np.float64)
        for v, row in enumerate(self.rows):
            a[v, _bits(row)] = 1.0
        return a

    # -- derived graphs --------------------------------------------------

    def induced_subgraph(self, vertices: Iterable[int]) -> "Graph":
        """``G[X]`` relabeled order-preservingly onto ``0..|X|-1``."""
        vs = sorted(set(vertices))
        if not vs:
            raise ParameterError("induced subgraph on an empty vertex set (n=0 is not a graph)")
        for v in vs:
            if not 0 <= v < self.n:
                raise ParameterError(f"vertex {v} outside 0..{self.n - 1}")
        index = {v: i for i, v in enumerate(vs)}
        mask = sum(1 << v for v in vs)
        rows = []
        for v in vs:
            r = 0
            for u in _bits(self.rows[v] & mask):
                r |= 1 << index[u]
            rows.append(r)
        return Graph._trusted(len(vs), rows)

    def delete_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = list(self.rows)
        for u, v in edges:
            if not (0 <= u < self.n and 0 <= v < self.n) or not rows[u] >> v & 1:
                raise ParameterError(f"edge ({u}, {v}) is not in the graph")
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
        return Graph._trusted(self.n, rows)

    def add_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = list(self.rows)
        for u, v in edges:
            if not (0 <= u < self.n and 0 <= v < self.n) or u == v:
                raise ParameterError(f"pair ({u}, {v}) is not a valid non-loop pair")
            if rows[u] >> v & 1:
                raise ParameterError(f"edge ({u}, {v}) already present")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph._trusted(self.n, rows)

    def delete_vertex(self, v: int) -> "Graph":
        if not 0 <= v < self.n:
            raise ParameterError(f"vertex {v} outside 0..{self.n - 1}")
        return self.induced_subgraph(u for u in range(self.n) if u != v)

    def relabel(self, order: Sequence[int]) -> "Graph":
        """Graph whose vertex ``i`` is old vertex ``order[i]``."""
        pos = [0] * self.n
        for i, v in enumerate(order):
            pos[v] = i
        rows = []
        for v in order:
            r = 0
            for u in _bits(self.rows[v]):
                r |= 1 << pos[u]
            rows.append(r)
        return Graph._trusted(self.n, rows)

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        return Graph._trusted(self.n, [full & ~r & ~(1 << v) for v, r in enumerate(self.rows)])

    def __repr__(self):
        return f"Graph(n={self.n}, e={self.edge_count()})"


# -- families ------------------------------------------------------------


def complete(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def cycle(length: int) -> Graph:
    if length < 3:
        raise ParameterError(f"cycle length {length} must be >= 3")
    return Graph.from_edges(length, ((i, (i + 1) % length) for i in range(length)))


def path(length: int) -> Graph:
    if length < 1:
        raise ParameterError(f"path order {length} must be >= 1")
    return Graph.from_edges(length, ((i, i + 1) for i in range(length - 1)))


def star(leaves: int) -> Graph:
    if leaves < 1:
        raise ParameterError(f"star needs >= 1 leaf, got {leaves}")
    return Graph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def power(base: Graph, k: int) -> Graph:
    """Join every pair at distance <= k in ``base``."""
    if k < 1:
        raise ParameterError(f"power exponent k={k} must be >= 1")
    edges = []
    for s in range(base.n):
        dist = base.distances_from(s)
        edges.extend((s, t) for t in range(s + 1, base.n) if 0 < dist[t] <= k)
    return Graph.from_edges(base.n, edges)


def cycle_square(length: int) -> Graph:
    return power(cycle(length), 2)


def path_square(length: int) -> Graph:
    return power(path(length), 2)


def complete_multipartite(sizes: Sequence[int]) -> Graph:
    """Parts are numbered in the given order, vertices part by part."""
    if not sizes:
        raise ParameterError("complete multipartite graph needs at least one part")
    if any(s < 1 for s in sizes):
        raise ParameterError(f"part sizes {list(sizes)} must all be >= 1")
    n = sum(sizes)
    if n > MAX_VERTICES:
        raise ParameterError(f"complete multipartite graph has {n} vertices, above {MAX_VERTICES}")
    full = (1 << n) - 1
    rows, start = [], 0
    for s in sizes:
        part = ((1 << s) - 1) << start
        rows.extend([full & ~part] * s)
        start += s
    return Graph._trusted(n, rows)


def turan_part_sizes(n: int, r: int) -> list[int]:
    if r < 1:
        raise ParameterError(f"Turán graph needs r >= 1, got r={r}")
    if n < r:
        raise ParameterError(f"Turán graph T(n={n}, r={r}) would have an empty part (need n >= r)")
    q, extra = divmod(n, r)
    return [q + 1] * extra + [q] * (r - extra)


def turan(n: int, r: int) -> Graph:
    """Balanced complete r-partite graph, larger parts first."""
    return complete_multipartite(turan_part_sizes(n, r))


def join(a: Graph, b: Graph) -> Graph:
    """``a + b``: disjoint union plus all edges between them; ``a`` comes first."""
    n = a.n + b.n
    if n > MAX_VERTICES:
        raise ParameterError(f"join has {n} vertices, above {MAX_VERTICES}")
    low, high = (1 << a.n) - 1, ((1 << b.n) - 1) << a.n
    rows = [r | high for r in a.rows] + [(r << a.n) | low for r in b.rows]
    return Graph._trusted(n, rows)


def gn(n: int) -> Graph:
    """``K_1 + T_{n-1,3}``; vertex 0 is the dominating vertex."""
    if n < 4:
        raise ParameterError(f"G(n) needs n >= 4 so that T(n-1, 3) has no empty part, got n={n}")
    return join(complete(1), turan(n - 1, 3))


def gn_edge_count(n: int) -> int:
    """Closed form ``floor((n-1)^2 / 3) + (n-1)``."""
    return (n - 1) ** 2 // 3 + (n - 1)


def turan3_edge_count(n: int) -> int:
    """Closed form ``floor(n^2 / 3)``."""
    return n * n // 3


def edge_count(g: Graph) -> int:
    return g.edge_count()


# -- family specs ----------------------------------------------------------


FAMILY_KINDS = ("cycle", "path", "power", "turan", "complete_multipartite", "join", "gn",
                "complete", "empty", "star")


@dataclass(frozen=True)
class GraphFamilySpec:
    """Declarative description of a named graph.

    ``params`` by kind: cycle/path ``(length,)``; power ``(base_spec, k)``;
    turan ``(n, r)``; complete_multipartite ``(n1, ..., nr)``;
    join ``(spec_a, spec_b)``; gn/complete/empty ``(n,)``; star ``(leaves,)``.
    """

    kind: str
    params: tuple = field(default_factory=tuple)


def build(spec: GraphFamilySpec) -> Graph:
    kind, p = spec.kind, spec.params
    if kind == "cycle":
        return cycle(*p)
    if kind == "path":
        return path(*p)
    if kind == "power":
        base, k = p
        return power(build(base) if isinstance(base, GraphFamilySpec) else base, k)
    if kind == "turan":
        return turan(*p)
    if kind == "complete_multipartite":
        return complete_multipartite(p)
    if kind == "join":
        a, b = (build(x) if isinstance(x, GraphFamilySpec) else x for x in p)
        return join(a, b)
    if kind == "gn":
        return gn(*p)
    if kind == "complete":
        return complete(*p)
    if kind == "empty":
        return Graph.empty(*p)
    if kind == "star":
        return star(*p)
    raise ParameterError(f"unknown graph family {kind!r}; expected one of {', '.join(FAMILY_KINDS)}")
