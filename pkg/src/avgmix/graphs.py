"""Weighted graphs, standard families, and graph6 input/output.

A graph is a symmetric integer weight matrix; diagonal entries are loop
weights.  Vertices are 0-based everywhere.  The Laplacian uses absolute
weights on the diagonal (for an unweighted graph that is the ordinary
degree) and is only defined for loop-free graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .exact import ExactMatrix


class Graph6Error(ValueError):
    """Malformed graph6 input; carries the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class WeightedGraph:
    """Finite graph with symmetric integer edge weights and integer loops."""

    n: int
    weights: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("graph needs at least one vertex")
        if len(self.weights) != self.n or any(
            len(row) != self.n for row in self.weights
        ):
            raise ValueError("weight matrix shape does not match n")
        for row in self.weights:
            for w in row:
                if not isinstance(w, int) or isinstance(w, bool):
                    raise ValueError("weights must be integers")
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if self.weights[i][j] != self.weights[j][i]:
                    raise ValueError("weight matrix must be symmetric")

    @classmethod
    def from_weights(cls, rows: Iterable[Iterable[int]]) -> "WeightedGraph":
        data = tuple(tuple(int(w) for w in row) for row in rows)
        return cls(len(data), data)

    # -- basic structure ---------------------------------------------------

    def weight(self, u: int, v: int) -> int:
        return self.weights[u][v]

    def edges(self) -> list[tuple[int, int, int]]:
        """(u, v, weight) for u <= v with nonzero weight; u == v are loops."""
        return [
            (u, v, self.weights[u][v])
            for u in range(self.n)
            for v in range(u, self.n)
            if self.weights[u][v] != 0
        ]

    def is_simple(self) -> bool:
        """0/1 off-diagonal weights and no loops."""
        return all(
            self.weights[u][v] in (0, 1)
            for u in range(self.n)
            for v in range(self.n)
            if u != v
        ) and all(self.weights[u][u] == 0 for u in range(self.n))

    def is_loop_free(self) -> bool:
        return all(self.weights[u][u] == 0 for u in range(self.n))

    def degrees(self) -> tuple[int, ...]:
        """Sum of absolute off-diagonal weights at each vertex."""
        return tuple(
            sum(abs(w) for v, w in enumerate(row) if v != u)
            for u, row in enumerate(self.weights)
        )

    def is_regular(self) -> bool:
        return len(set(self.degrees())) == 1

    def components(self) -> list[list[int]]:
        """Connected components of the nonzero off-diagonal support."""
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            stack = [start]
            seen[start] = True
            comp = []
            while stack:
                u = stack.pop()
                comp.append(u)
                for v in range(self.n):
                    if v != u and self.weights[u][v] != 0 and not seen[v]:
                        seen[v] = True
                        stack.append(v)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return len(self.components()) == 1


# ---------------------------------------------------------------------------
# families
# ---------------------------------------------------------------------------


def path_graph(n: int) -> WeightedGraph:
    """Path on n vertices in line order, P_1 being a single vertex."""
    if n < 1:
        raise ValueError("path needs n >= 1")
    rows = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        rows[i][i + 1] = rows[i + 1][i] = 1
    return WeightedGraph.from_weights(rows)


def cycle_graph(n: int) -> WeightedGraph:
    """Cycle on n >= 3 vertices in cyclic order."""
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        j = (i + 1) % n
        rows[i][j] = rows[j][i] = 1
    return WeightedGraph.from_weights(rows)


def complete_graph(n: int) -> WeightedGraph:
    if n < 1:
        raise ValueError("complete graph needs n >= 1")
    rows = [[0 if i == j else 1 for j in range(n)] for i in range(n)]
    return WeightedGraph.from_weights(rows)


def circulant_graph(n: int, connections: Iterable[int]) -> WeightedGraph:
    """Circulant with vertex i adjacent to i +- s for each connection s."""
    if n < 1:
        raise ValueError("circulant needs n >= 1")
    conns = sorted(set(int(s) for s in connections))
    if any(s < 1 or s > n // 2 for s in conns):
        raise ValueError("connections must lie in 1..n//2")
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for s in conns:
            rows[i][(i + s) % n] = 1
            rows[i][(i - s) % n] = 1
    return WeightedGraph.from_weights(rows)


def family(descriptor: str) -> WeightedGraph:
    """Build a graph from a descriptor such as 'path:6' or 'circulant:5:1,2'."""
    parts = descriptor.strip().split(":")
    name = parts[0].lower()
    try:
        if name == "path" and len(parts) == 2:
            return path_graph(int(parts[1]))
        if name == "cycle" and len(parts) == 2:
            return cycle_graph(int(parts[1]))
        if name == "complete" and len(parts) == 2:
            return complete_graph(int(parts[1]))
        if name == "circulant" and len(parts) == 3:
            conn = parts[2].strip().lstrip("{").rstrip("}")
            return circulant_graph(
                int(parts[1]), [int(s) for s in conn.split(",") if s.strip()]
            )
    except ValueError as exc:
        raise ValueError(f"bad family descriptor {descriptor!r}: {exc}") from exc
    raise ValueError(f"unknown family descriptor {descriptor!r}")


# ---------------------------------------------------------------------------
# modification and derived matrices
# ---------------------------------------------------------------------------


def add_loops(g: WeightedGraph, loops: Mapping[int, int]) -> WeightedGraph:
    """Set diagonal weights from a vertex -> weight map."""
    for v in loops:
        if not (0 <= v < g.n):
            raise IndexError(f"vertex {v} out of range for n={g.n}")
    rows = [list(row) for row in g.weights]
    for v, w in loops.items():
        rows[v][v] = int(w)
    return WeightedGraph.from_weights(rows)


def complement(g: WeightedGraph) -> WeightedGraph:
    """Simple-graph complement; weighted graphs and loops are unsupported."""
    if not g.is_simple():
        raise ValueError("complement is only defined for simple graphs")
    rows = [
        [0 if i == j else 1 - g.weights[i][j] for j in range(g.n)]
        for i in range(g.n)
    ]
    return WeightedGraph.from_weights(rows)


def matrix_of(g: WeightedGraph, basis: str = "adjacency") -> ExactMatrix:
    """Adjacency or Laplacian matrix of the graph, with exact entries."""
    if basis == "adjacency":
        return ExactMatrix(g.weights)
    if basis == "laplacian":
        if not g.is_loop_free():
            raise ValueError("Laplacian requires a loop-free graph")
        degs = g.degrees()
        return ExactMatrix(
            [
                [
                    degs[i] if i == j else -g.weights[i][j]
                    for j in range(g.n)
                ]
                for i in range(g.n)
            ]
        )
    raise ValueError(f"unknown basis {basis!r}")


# ---------------------------------------------------------------------------
# graph6
# ---------------------------------------------------------------------------


def _g6_read_n(data: bytes) -> tuple[int, int]:
    """Decode the graph6 order field; returns (n, bytes consumed)."""
    if not data:
        raise Graph6Error("empty graph6 string", 0)
    first = data[0]
    if first != 126:  # '~'
        if not 63 <= first <= 125:
            raise Graph6Error(f"invalid order byte {first}", 0)
        return first - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise Graph6Error("truncated 8-byte order field", len(data))
        value = 0
        for k in range(2, 8):
            b = data[k]
            if not 63 <= b <= 126:
                raise Graph6Error(f"invalid order byte {b}", k)
            value = (value << 6) | (b - 63)
        return value, 8
    if len(data) < 4:
        raise Graph6Error("truncated 4-byte order field", len(data))
    value = 0
    for k in range(1, 4):
        b = data[k]
        if not 63 <= b <= 126:
            raise Graph6Error(f"invalid order byte {b}", k)
        value = (value << 6) | (b - 63)
    if value < 63:
        raise Graph6Error("overlong order encoding", 1)
    return value, 4


def parse_graph6(text: str) -> WeightedGraph:
    """Decode a graph6 string to a simple unweighted graph."""
    data = text.strip().encode("ascii", errors="replace")
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    n, consumed = _g6_read_n(data)
    if n < 1:
        raise Graph6Error("graph6 order must be >= 1", 0)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[consumed:]
    if len(body) != nbytes:
        raise Graph6Error(
            f"expected {nbytes} body bytes, found {len(body)}",
            consumed + min(len(body), nbytes),
        )
    bits = []
    for k, b in enumerate(body):
        if not 63 <= b <= 126:
            raise Graph6Error(f"invalid body byte {b}", consumed + k)
        v = b - 63
        bits.extend((v >> shift) & 1 for shift in range(5, -1, -1))
    if any(bits[nbits:]):
        raise Graph6Error("nonzero padding bits", consumed + nbytes - 1)
    rows = [[0] * n for _ in range(n)]
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                rows[i][j] = rows[j][i] = 1
            idx += 1
    return WeightedGraph.from_weights(rows)


def emit_graph6(g: WeightedGraph) -> str:
    """Encode a simple unweighted graph as graph6."""
    if not g.is_simple():
        raise ValueError("graph6 encodes simple unweighted graphs only")
    n = g.n
    if n <= 62:
        head = [n + 63]
    elif n <= 258047:
        head = [126, (n >> 12) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63]
    else:
        head = [126, 126] + [
            ((n >> shift) & 63) + 63 for shift in (30, 24, 18, 12, 6, 0)
        ]
    bits = [
        g.weights[i][j] for j in range(1, n) for i in range(j)
    ]
    while len(bits) % 6:
        bits.append(0)
    body = [
        sum(bit << shift for bit, shift in zip(bits[k : k + 6], range(5, -1, -1)))
        + 63
        for k in range(0, len(bits), 6)
    ]
    return bytes(head + body).decode("ascii")
