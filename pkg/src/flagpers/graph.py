"""Simple undirected graphs stored as adjacency bit rows.

Row ``adj[v]`` is an int whose bit ``w`` is set iff ``{v, w}`` is an edge.
Vertices are labeled ``0..n-1``. Every operation returns a new graph.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence


class CapacityError(ValueError):
    """Raised when a graph would exceed the configured vertex capacity."""


class PreconditionError(ValueError):
    """Raised when an input violates an operation's documented precondition."""


def _read_capacity() -> int:
    raw = os.environ.get("FLAGPERS_MAX_VERTICES", "64")
    limit = int(raw)
    if limit not in (64, 128):
        raise ValueError(f"FLAGPERS_MAX_VERTICES must be 64 or 128, got {raw}")
    return limit


MAX_VERTICES = _read_capacity()


def set_max_vertices(limit: int) -> None:
    """Switch the vertex capacity between one-word (64) and two-word (128) rows."""
    global MAX_VERTICES
    if limit not in (64, 128):
        raise ValueError("vertex capacity must be 64 or 128")
    MAX_VERTICES = limit


def _check_capacity(n: int) -> None:
    if n > MAX_VERTICES:
        raise CapacityError(f"{n} vertices exceeds capacity {MAX_VERTICES}")


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        _check_capacity(self.n)
        if len(self.adj) != self.n:
            raise ValueError("need exactly one adjacency row per vertex")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"row {v} references a vertex >= n")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for w in iter_bits(row):
                if not self.adj[w] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {w}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        _check_capacity(n)
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v``, sorted lexicographically."""
        return [(u, w) for u in range(self.n) for w in iter_bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)


@dataclass(frozen=True)
class VertexPartition:
    classes: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for cls in self.classes:
            if not cls:
                raise ValueError("partition classes must be non-empty")
            if seen.intersection(cls):
                raise ValueError("partition classes must be disjoint")
            seen.update(cls)
        if seen != set(range(len(seen))):
            raise ValueError("partition must cover vertices 0..n-1")

    @property
    def n(self) -> int:
        return sum(len(c) for c in self.classes)

    def masks(self) -> list[int]:
        return [sum(1 << v for v in cls) for cls in self.classes]

    def class_of(self, v: int) -> int:
        for i, cls in enumerate(self.classes):
            if v in cls:
                return i
        raise KeyError(v)


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------

def empty(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << v) for v in range(n)))


def complete_bipartite(a: int, b: int) -> Graph:
    return join(empty(a), empty(b))


def star(p: int) -> Graph:
    """K_{1,p-1}: center 0 joined to leaves 1..p-1."""
    if p < 1:
        raise ValueError("a star needs at least one vertex")
    return Graph.from_edges(p, [(0, v) for v in range(1, p)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(v, (v + 1) % n) for v in range(n)])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(v, v + 1) for v in range(n - 1)])


def complement(g: Graph) -> Graph:
    full = g.vertex_mask
    return Graph(g.n, tuple(full ^ row ^ (1 << v) for v, row in enumerate(g.adj)))


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    _check_capacity(g1.n + g2.n)
    return Graph(g1.n + g2.n, g1.adj + tuple(row << g1.n for row in g2.adj))


def join(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union plus every edge between the two vertex sets; g2 is shifted by g1.n."""
    _check_capacity(g1.n + g2.n)
    left = g1.vertex_mask
    right = g2.vertex_mask << g1.n
    rows = tuple(row | right for row in g1.adj)
    rows += tuple((row << g1.n) | left for row in g2.adj)
    return Graph(g1.n + g2.n, rows)


def turan_class_sizes(n: int, k: int) -> list[int]:
    """Class sizes of T_{n,k}: the first n' classes get ceil(n/k), n' in 1..k."""
    if k < 1 or n < 0:
        raise ValueError("need n >= 0 and k >= 1")
    return [len(range(c, n, k)) for c in range(k)]


def turan(n: int, k: int) -> tuple[Graph, VertexPartition]:
    """Complete k-partite Turán graph with vertex i in class i mod k."""
    sizes = turan_class_sizes(n, k)
    classes = tuple(tuple(range(c, n, k)) for c in range(k) if sizes[c])
    masks = [sum(1 << v for v in cls) for cls in classes]
    rows = [0] * n
    full = (1 << n) - 1
    for mask, cls in zip(masks, classes):
        for v in cls:
            rows[v] = full ^ mask
    return Graph(n, tuple(rows)), VertexPartition(classes)


def turan_edge_count(n: int, k: int) -> int:
    return comb(n, 2) - sum(comb(s, 2) for s in turan_class_sizes(n, k))


def turan_edge_delta(m: int, k: int) -> int:
    """e_{m,k} - e_{m-1,k}: edges gained when T_{m-1,k} grows to T_{m,k}."""
    if m < 1:
        raise ValueError("m must be at least 1")
    return turan_edge_count(m, k) - turan_edge_count(m - 1, k)


def to_block_layout(g: Graph, partition: VertexPartition) -> tuple[Graph, list[int]]:
    """Relabel so each partition class occupies a contiguous label range.

    Returns the relabeled graph and ``order`` with ``order[new] = old``.
    """
    order = [v for cls in partition.classes for v in cls]
    return relabel(g, order), order


def relabel(g: Graph, order: Sequence[int]) -> Graph:
    """Graph whose vertex ``i`` is vertex ``order[i]`` of ``g``."""
    pos = {old: new for new, old in enumerate(order)}
    return Graph.from_edges(len(order), [(pos[u], pos[v]) for u, v in g.edges() if u in pos and v in pos])


# ---------------------------------------------------------------------------
# Queries and vertex deletion
# ---------------------------------------------------------------------------

def connected_component_count(g: Graph, restrict: Iterable[int] | int | None = None) -> int:
    """Number of components of the subgraph induced on ``restrict`` (all vertices by default)."""
    if restrict is None:
        remaining = g.vertex_mask
    elif isinstance(restrict, int):
        remaining = restrict
    else:
        remaining = 0
        for v in restrict:
            remaining |= 1 << v
    if remaining & ~g.vertex_mask:
        raise ValueError("restriction contains vertices outside the graph")
    count = 0
    while remaining:
        frontier = remaining & -remaining
        seen = frontier
        while frontier:
            reach = 0
            for v in iter_bits(frontier):
                reach |= g.adj[v]
            frontier = reach & remaining & ~seen
            seen |= frontier
        remaining &= ~seen
        count += 1
    return count


def induced(g: Graph, vertices: Iterable[int] | int) -> Graph:
    """Induced subgraph, relabeled to 0..|S|-1 preserving label order."""
    if isinstance(vertices, int):
        keep = list(iter_bits(vertices))
    else:
        keep = sorted(set(vertices))
    if keep and (keep[0] < 0 or keep[-1] >= g.n):
        raise ValueError("vertex out of range")
    pos = {v: i for i, v in enumerate(keep)}
    rows = []
    for v in keep:
        row = 0
        for w in iter_bits(g.adj[v]):
            if w in pos:
                row |= 1 << pos[w]
        rows.append(row)
    return Graph(len(keep), tuple(rows))


def delete_vertex(g: Graph, v: int) -> Graph:
    return induced(g, g.vertex_mask & ~(1 << v))


def remove_closed_neighborhood(g: Graph, v: int) -> Graph:
    """G - N_G[v], relabeled; has n - deg(v) - 1 vertices."""
    if not 0 <= v < g.n:
        raise ValueError("vertex out of range")
    return induced(g, g.vertex_mask & ~(g.adj[v] | (1 << v)))


def min_degree_vertex(g: Graph) -> tuple[int, int]:
    if g.n == 0:
        raise ValueError("graph has no vertices")
    return min(((g.degree(v), v) for v in range(g.n)))[::-1]


def link_graph(g: Graph, v: int) -> Graph:
    """Graph whose flag complex is the link of v in X(g)."""
    return induced(g, g.adj[v])


# ---------------------------------------------------------------------------
# Text and JSON formats
# ---------------------------------------------------------------------------

class FormatError(ValueError):
    """Malformed input file; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def parse_edge_lines(text: str, *, ordered: bool = False) -> tuple[int, list[tuple[int, int]]]:
    """Parse the ``n m`` header plus ``m`` lines of ``u v``.

    With ``ordered=False`` (graphs) edges must satisfy ``u < v``; filtrations
    accept either orientation and keep the given line order.
    """
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise FormatError("missing 'n m' header", 1)
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or not all(p.lstrip("-").isdigit() for p in parts):
        raise FormatError("header must be two integers 'n m'", lineno)
    n, m = int(parts[0]), int(parts[1])
    if n < 0 or m < 0:
        raise FormatError("n and m must be non-negative", lineno)
    body = lines[1:]
    if len(body) != m:
        last = body[-1][0] if body else lineno
        raise FormatError(f"expected {m} edge lines, found {len(body)}", last)
    edges = []
    first_seen: dict[tuple[int, int], int] = {}
    for lineno, ln in body:
        parts = ln.split()
        if len(parts) != 2 or not all(p.lstrip("-").isdigit() for p in parts):
            raise FormatError("edge line must be two integers 'u v'", lineno)
        u, v = int(parts[0]), int(parts[1])
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise FormatError(f"invalid edge ({u}, {v}) for n={n}", lineno)
        if not ordered and u > v:
            raise FormatError("edge endpoints must satisfy u < v", lineno)
        key = (min(u, v), max(u, v))
        if key in first_seen:
            raise FormatError(f"edge {key} repeats line {first_seen[key]}", lineno)
        first_seen[key] = lineno
        edges.append((u, v))
    return n, edges


def to_edge_list(g: Graph) -> str:
    edges = g.edges()
    return "".join([f"{g.n} {len(edges)}\n"] + [f"{u} {v}\n" for u, v in edges])


def from_edge_list(text: str) -> Graph:
    n, edges = parse_edge_lines(text)
    return Graph.from_edges(n, edges)


def to_json(g: Graph) -> str:
    return json.dumps({"n": g.n, "edges": [list(e) for e in g.edges()]}, separators=(",", ":")) + "\n"


def from_json(text: str) -> Graph:
    data = json.loads(text)
    return Graph.from_edges(int(data["n"]), [tuple(e) for e in data["edges"]])
