"""graph6 and DIMACS edge-list reading and writing."""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

from .errors import ParameterError
from .graph import Graph

G6_HEADER = ">>graph6<<"


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return chr(126) + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    raise ParameterError(f"graph6 cannot encode n={n}")


def to_graph6(g: Graph) -> str:
    bits = []
    for j in range(1, g.n):
        row = g.rows[j]
        bits.extend(row >> i & 1 for i in range(j))
    bits.extend([0] * (-len(bits) % 6))
    body = "".join(
        chr(63 + (bits[k] << 5 | bits[k + 1] << 4 | bits[k + 2] << 3 | bits[k + 3] << 2 | bits[k + 4] << 1 | bits[k + 5]))
        for k in range(0, len(bits), 6)
    )
    return _encode_n(g.n) + body


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(G6_HEADER):
        s = s[len(G6_HEADER):]
    if not s:
        raise ParameterError("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    if any(not 0 <= d <= 63 for d in data):
        raise ParameterError(f"graph6 string {text!r} has characters outside '?'..'~'")
    if data[0] != 63:
        n, pos = data[0], 1
    elif len(data) >= 4 and data[1] != 63:
        n, pos = data[1] << 12 | data[2] << 6 | data[3], 4
    else:
        raise ParameterError("graph6 strings with n > 258047 are not supported")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(data) - pos != need:
        raise ParameterError(f"graph6 body has {len(data) - pos} bytes, expected {need} for n={n}")
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = data[pos + k // 6]
            if byte >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, tuple(rows))


def read_graph6_file(path: str | Path) -> list[Graph]:
    lines = Path(path).read_text().splitlines()
    return [from_graph6(line) for line in lines if line.strip() and not line.startswith("#")]


def write_graph6_file(path: str | Path, graphs: Iterable[Graph]) -> None:
    Path(path).write_text("".join(to_graph6(g) + "\n" for g in graphs))


def to_dimacs(g: Graph, comment: str | None = None) -> str:
    """DIMACS edge format, vertices 1-indexed."""
    lines = []
    if comment:
        lines += [f"c {line}" for line in comment.splitlines()]
    edges = g.edges()
    lines.append(f"p edge {g.n} {len(edges)}")
    lines += [f"e {u + 1} {v + 1}" for u, v in edges]
    return "\n".join(lines) + "\n"


def from_dimacs(text: str) -> Graph:
    n = None
    edges = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) < 3:
                raise ParameterError(f"line {lineno}: malformed problem line {raw!r}")
            n = int(parts[2])
        elif parts[0] == "e":
            if n is None:
                raise ParameterError(f"line {lineno}: edge before the 'p' line")
            u, v = int(parts[1]) - 1, int(parts[2]) - 1
            edges.add((min(u, v), max(u, v)))
        else:
            raise ParameterError(f"line {lineno}: unknown record {raw!r}")
    if n is None:
        raise ParameterError("DIMACS input has no 'p' line")
    return Graph.from_edges(n, sorted(edges))
