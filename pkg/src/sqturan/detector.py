"""Squared-cycle containment: search, verification, and named witness cycles.

The search places the cycle position by position. Position ``i`` must be
adjacent to every earlier position at cyclic distance 1 or 2, so candidates
are a bitwise AND of a few adjacency rows. Three reductions keep dense hosts
tractable:

* only the ``min(4, l-1)``-core can host a copy (every vertex of ``C_l^2``
  has that degree);
* the start vertex is removed once exhausted, together with its twins, so
  later starts never revisit its copies;
* among unused vertices with identical neighbourhoods (twins) only the first
  is tried, since swapping twins is an automorphism fixing the placed prefix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import BudgetExceeded, ParameterError
from .graph import Graph, _bits, cycle_square

DEFAULT_NODE_LIMIT = 100_000_000


@dataclass(frozen=True)
class SquaredCycleEmbedding:
    length: int
    ordering: tuple[int, ...]


def required_pairs(length: int) -> list[tuple[int, int]]:
    """Position pairs ``(i, j)``, ``i < j``, that must be host edges."""
    pairs = set()
    for i in range(length):
        for d in (1, 2):
            j = (i + d) % length
            if i != j:
                pairs.add((min(i, j), max(i, j)))
    return sorted(pairs)


def _back_links(length: int) -> list[list[int]]:
    links: list[list[int]] = [[] for _ in range(length)]
    for i, j in required_pairs(length):
        links[j].append(i)
    return links


def first_missing_pair(g: Graph, ordering: Sequence[int]) -> tuple[int, int] | None:
    """First required host pair absent from ``g``, or None when all are present."""
    length = len(ordering)
    if length < 3:
        raise ParameterError(f"ordering must have at least 3 vertices, got {length}")
    if len(set(ordering)) != length:
        raise ParameterError(f"ordering {list(ordering)} repeats a vertex")
    for v in ordering:
        if not 0 <= v < g.n:
            raise ParameterError(f"vertex {v} outside 0..{g.n - 1}")
    for i, j in required_pairs(length):
        u, v = ordering[i], ordering[j]
        if not g.has_edge(u, v):
            return (u, v)
    return None


def verify_embedding(g: Graph, emb: SquaredCycleEmbedding) -> bool:
    if len(emb.ordering) != emb.length:
        raise ParameterError(f"ordering has {len(emb.ordering)} vertices, expected {emb.length}")
    return first_missing_pair(g, emb.ordering) is None


def _core(rows: Sequence[int], alive: int, k: int) -> int:
    changed = True
    while changed:
        changed = False
        for v in _bits(alive):
            if (rows[v] & alive).bit_count() < k:
                alive &= ~(1 << v)
                changed = True
    return alive


def _twin_masks(rows: Sequence[int], alive: int, pinned: int = 0) -> list[int]:
    """For each alive vertex, the mask of lower-numbered twins (0 for pinned ones)."""
    n = len(rows)
    smaller = [0] * n
    open_groups: dict[int, int] = {}
    closed_groups: dict[int, int] = {}
    for v in _bits(alive & ~pinned):
        nb = rows[v] & alive
        smaller[v] = open_groups.get(nb, 0) | closed_groups.get(nb | 1 << v, 0)
        open_groups[nb] = open_groups.get(nb, 0) | 1 << v
        closed_groups[nb | 1 << v] = closed_groups.get(nb | 1 << v, 0) | 1 << v
    return smaller


class _Search:
    def __init__(self, rows: Sequence[int], length: int, node_limit: int):
        self.rows = rows
        self.length = length
        self.links = _back_links(length)
        self.node_limit = node_limit
        self.nodes = 0

    def run(self, alive: int, start: int, pins: dict[int, int] | None = None,
            reflect: bool = True) -> list[int] | None:
        """Search for a copy through ``start`` at position 0 inside ``alive``.

        ``pins`` maps positions to forced vertices. ``reflect`` enables the
        direction rule: when the vertices at positions 1 and l-1 have no twins,
        the one at position 1 is the smaller.
        """
        pins = pins or {}
        pinned = sum(1 << v for v in pins.values())
        smaller = _twin_masks(self.rows, alive, pinned | 1 << start)
        rows, links, length = self.rows, self.links, self.length
        order = [start] + [-1] * (length - 1)
        reflect = reflect and not pins
        has_twin = 0
        for v in _bits(alive):
            if smaller[v]:
                has_twin |= 1 << v | smaller[v]

        def rec(i: int, used: int) -> bool:
            self.nodes += 1
            if self.nodes > self.node_limit:
                raise BudgetExceeded(
                    f"squared-cycle search exceeded {self.node_limit} nodes", nodes=self.nodes)
            if i == length:
                return True
            if (alive & ~used).bit_count() < length - i:
                return False
            cand = alive & ~used
            for j in links[i]:
                cand &= rows[order[j]]
            if i in pins:
                cand &= 1 << pins[i]
            else:
                cand &= ~pinned
            if reflect and i == length - 1 and not has_twin >> order[1] & 1:
                # Reversal fixes position 0 and swaps positions 1 and l-1.
                cand &= has_twin | ~((2 << order[1]) - 1)
            free = ~used
            while cand:
                low = cand & -cand
                cand ^= low
                v = low.bit_length() - 1
                if smaller[v] & free:
                    continue
                order[i] = v
                if rec(i + 1, used | low):
                    return True
            order[i] = -1
            return False

        if rec(1, 1 << start):
            return order
        return None


def contains_squared_cycle(g: Graph, length: int, node_limit: int = DEFAULT_NODE_LIMIT,
                           return_stats: bool = False):
    """An embedding of ``C_length^2`` into ``g`` as a subgraph, or None.

    None is an exhaustive answer. Raises :class:`BudgetExceeded` when the
    node limit trips (the answer is then unknown).
    """
    if length < 3:
        raise ParameterError(f"cycle length {length} must be >= 3")
    search = _Search(g.rows, length, node_limit)
    emb = None
    if length <= g.n:
        k = min(4, length - 1)
        alive = _core(g.rows, (1 << g.n) - 1, k)
        while alive.bit_count() >= length:
            start = min(_bits(alive), key=lambda v: ((g.rows[v] & alive).bit_count(), v))
            order = search.run(alive, start)
            if order is not None:
                emb = SquaredCycleEmbedding(length, tuple(order))
                break
            nb = g.rows[start] & alive
            drop = 1 << start
            for w in _bits(alive & ~drop):
                wn = g.rows[w] & alive
                if wn & ~(1 << start) == nb & ~(1 << w):
                    drop |= 1 << w
            alive = _core(g.rows, alive & ~drop, k)
    if emb is not None:
        assert verify_embedding(g, emb), "search produced an invalid embedding"
    if return_stats:
        return emb, search.nodes
    return emb


def is_free(g: Graph, length: int, node_limit: int = DEFAULT_NODE_LIMIT) -> bool:
    return contains_squared_cycle(g, length, node_limit) is None


def find_through_vertex(g: Graph, length: int, v: int,
                        node_limit: int = DEFAULT_NODE_LIMIT) -> SquaredCycleEmbedding | None:
    """A copy of ``C_length^2`` that uses vertex ``v``."""
    if length > g.n:
        return None
    alive = _core(g.rows, (1 << g.n) - 1, min(4, length - 1))
    if not alive >> v & 1:
        return None
    order = _Search(g.rows, length, node_limit).run(alive, v)
    return None if order is None else SquaredCycleEmbedding(length, tuple(order))


def find_through_edge(g: Graph, length: int, a: int, b: int,
                      node_limit: int = DEFAULT_NODE_LIMIT) -> SquaredCycleEmbedding | None:
    """A copy of ``C_length^2`` that uses the edge ``ab``."""
    if not g.has_edge(a, b):
        raise ParameterError(f"({a}, {b}) is not an edge")
    if length > g.n:
        return None
    alive = _core(g.rows, (1 << g.n) - 1, min(4, length - 1))
    if not (alive >> a & 1 and alive >> b & 1):
        return None
    search = _Search(g.rows, length, node_limit)
    # Up to rotation and reflection, edge ab sits at positions (0,1) or (0,2).
    for pos in (1, 2):
        if pos >= length:
            continue
        order = search.run(alive, a, pins={pos: b})
        if order is not None:
            return SquaredCycleEmbedding(length, tuple(order))
    return None


# -- generic subgraph oracle -----------------------------------------------


def generic_subgraph_oracle(host: Graph, pattern: Graph, max_host: int = 16) -> bool:
    """Plain backtracking subgraph-monomorphism test.

    Independent of :func:`contains_squared_cycle`; used only to cross-check it.
    """
    if host.n > max_host:
        raise ParameterError(f"oracle limited to hosts with n <= {max_host}, got n={host.n}")
    if pattern.n > host.n or pattern.edge_count() > host.edge_count():
        return False
    pdeg = pattern.degrees()
    hdeg = host.degrees()
    order: list[int] = []
    placed = set()
    while len(order) < pattern.n:
        rest = [p for p in range(pattern.n) if p not in placed]
        p = max(rest, key=lambda q: (sum(1 for r in placed if pattern.has_edge(q, r)), pdeg[q], -q))
        order.append(p)
        placed.add(p)
    back = [[q for q in order[:i] if pattern.has_edge(order[i], q)] for i in range(len(order))]
    image = [-1] * pattern.n
    used = [False] * host.n

    def rec(i: int) -> bool:
        if i == len(order):
            return True
        p = order[i]
        for h in range(host.n):
            if used[h] or hdeg[h] < pdeg[p]:
                continue
            if all(host.has_edge(h, image[q]) for q in back[i]):
                image[p] = h
                used[h] = True
                if rec(i + 1):
                    return True
                used[h] = False
        image[p] = -1
        return False

    return rec(0)


# -- named witness cycles ---------------------------------------------------


def witness_sequence(name: str, k: int) -> list[str]:
    """Vertex names, in cycle order, of the witness cycles C*, C1..C5 for l = 3k+2.

    Names: ``u{i}{j}`` is u_{i,j}, ``s{i}{j}`` is the starred u*_{i,j},
    ``v{i}{j}`` is v_{i,j}; the first index is the part the vertex lies in.
    """
    if k < 2:
        raise ParameterError(f"witness cycles need k >= 2, got {k}")

    def triples(prefix: str, first: int, last: int, parts=(1, 2, 3)) -> list[str]:
        return [f"{prefix}{i},{j}" for j in range(first, last + 1) for i in parts]

    if name == "Cstar":
        return ["s1,1", "u1,1", "u2,1", "u3,1", "s1,2", "u1,2", "u2,2", "u3,2"] + triples("u", 3, k)
    if name == "C1":
        return ["s1,1", "u1,1", "u2,1", "u3,1", "s1,2", "u1,2", "u2,2", "u3,2"] + triples("v", 1, k - 2)
    if name == "C2":
        return ["s1,1", "u1,1", "u2,1", "u3,1", "s3,1", "u1,2", "u2,2", "u3,2"] + triples("v", 1, k - 2)
    if name == "C3":
        return ["s3,1", "u3,1", "u1,1", "s1,1", "u2,1"] + triples("v", 1, k - 1, parts=(3, 1, 2))
    if name == "C4":
        return ["u1,1", "s1,1", "u2,1", "u3,1", "u1,2", "s1,2", "u2,2", "u3,2"] + triples("u", 3, k)
    if name == "C5":
        return ["s1,1", "u1,1", "u2,1", "s3,1", "u3,1"] + triples("u", 2, k)
    raise ParameterError(f"unknown witness {name!r}; expected Cstar, C1..C5")


WITNESS_NAMES = ("Cstar", "C1", "C2", "C3", "C4", "C5")


def witness_part(vertex_name: str) -> int:
    """Part index (1..3) encoded in a witness vertex name."""
    return int(vertex_name[1:].split(",")[0])


def witness_intra_part_pairs(name: str, k: int) -> list[tuple[str, str]]:
    """Edges of the squared witness cycle joining two vertices of the same part."""
    seq = witness_sequence(name, k)
    out = []
    for i, j in required_pairs(len(seq)):
        a, b = seq[i], seq[j]
        if witness_part(a) == witness_part(b):
            out.append((a, b))
    return out


def embed_named(g: Graph, labels: dict[str, int], sequence: Sequence[str]) -> SquaredCycleEmbedding:
    return SquaredCycleEmbedding(len(sequence), tuple(labels[s] for s in sequence))


def squared_witness_graph(name: str, k: int) -> tuple[Graph, dict[str, int]]:
    """The squared witness cycle as a host graph, with its name-to-vertex map."""
    seq = witness_sequence(name, k)
    g = cycle_square(len(seq))
    return g, {s: i for i, s in enumerate(seq)}
