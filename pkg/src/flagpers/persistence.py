"""Edgewise filtrations of flag complexes and their degree-k barcodes.

A filtration adds one edge per index, starting at 1. Every vertex is present
from index 1 and a clique enters at the largest index among its edges.
Intervals ``[a, b)`` mean the class is alive in ``G_a, ..., G_{b-1}``; classes
that never die get ``b = inf``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .graph import Graph, iter_bits, parse_edge_lines
from .homology import GF2, FieldSpec, betti, boundary_columns, clique_masks, reduce_columns
from .report import FAIL, PASS, VerificationReport

INF = math.inf


@dataclass(frozen=True)
class EdgewiseFiltration:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        norm = []
        for u, v in self.edges:
            if u == v or not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"invalid edge ({u}, {v}) for n={self.n}")
            norm.append((min(u, v), max(u, v)))
        if len(set(norm)) != len(norm):
            raise ValueError("filtration repeats an edge")
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def m(self) -> int:
        return len(self.edges)

    def prefix(self, i: int) -> Graph:
        """G_i, the graph with the first i edges."""
        if not 0 <= i <= self.m:
            raise IndexError(f"prefix index {i} outside 0..{self.m}")
        return Graph.from_edges(self.n, self.edges[:i])

    def graph(self) -> Graph:
        return self.prefix(self.m)

    def index_of(self) -> dict[tuple[int, int], int]:
        return {e: i + 1 for i, e in enumerate(self.edges)}

    def extend(self, edges: Sequence[tuple[int, int]]) -> "EdgewiseFiltration":
        return EdgewiseFiltration(self.n, self.edges + tuple(edges))


@dataclass(frozen=True)
class Barcode:
    degree: int
    intervals: tuple[tuple[int, float], ...]

    def __post_init__(self) -> None:
        for a, b in self.intervals:
            if a < 1 or not a < b:
                raise ValueError(f"bad interval [{a}, {b})")
        object.__setattr__(self, "intervals", tuple(sorted(self.intervals)))

    def __len__(self) -> int:
        return len(self.intervals)

    def rank_at(self, i: int) -> int:
        return sum(1 for a, b in self.intervals if a <= i < b)

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "intervals": [[a, "inf" if b == INF else b] for a, b in self.intervals],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":")) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Barcode":
        data = json.loads(text)
        return cls(int(data["degree"]), tuple((a, INF if b == "inf" else b) for a, b in data["intervals"]))


# ---------------------------------------------------------------------------
# Reduction in filtration order
# ---------------------------------------------------------------------------

def _filtered_levels(f: EdgewiseFiltration, max_dim: int) -> list[list[tuple[int, int]]]:
    """Per dimension, ``(index, mask)`` pairs sorted by entry index then mask."""
    g = f.graph()
    masks = clique_masks(f.n, g.adj, max_dim)
    values: list[dict[int, int]] = [{m: 1 for m in masks[0]}]
    if max_dim >= 1:
        values.append({(1 << u) | (1 << v): i + 1 for i, (u, v) in enumerate(f.edges)})
    for d in range(2, max_dim + 1):
        prev = values[d - 1]
        values.append({s: max(prev[s ^ (1 << v)] for v in iter_bits(s)) for s in masks[d]})
    return [sorted((values[d][s], s) for s in masks[d]) for d in range(max_dim + 1)]


@dataclass
class _Pairing:
    levels: list[list[tuple[int, int]]]
    low_red: object  # reduction of the degree-k boundary
    high_red: object  # reduction of the degree-(k+1) boundary
    positive: list[int]
    pairs: list[tuple[int, int]]  # (k-simplex position, (k+1)-simplex position)


def _pairing(f: EdgewiseFiltration, k: int, p: int, track: bool = False) -> _Pairing:
    levels = _filtered_levels(f, k + 1)
    simplices_k = [s for _, s in levels[k]]
    if k == 0:
        low_cols = boundary_columns(simplices_k, None, p)
    else:
        row_index = {s: i for i, (_, s) in enumerate(levels[k - 1])}
        low_cols = boundary_columns(simplices_k, row_index, p)
    low_red = reduce_columns(low_cols, p, track=track)
    positive = [j for j, col in enumerate(low_red.reduced) if not col]
    row_index = {s: i for i, s in enumerate(simplices_k)}
    high_red = reduce_columns(boundary_columns([s for _, s in levels[k + 1]], row_index, p), p)
    pairs = sorted((low, j) for low, j in high_red.pivots.items())
    return _Pairing(levels, low_red, high_red, positive, pairs)


def flag_persistence(f: EdgewiseFiltration, k: int, field: FieldSpec = GF2) -> Barcode:
    """Degree-k barcode of the flag filtration; zero-length intervals are dropped."""
    if k < 0:
        raise ValueError("homology degree must be non-negative")
    if f.m == 0:
        return Barcode(k, ())
    pr = _pairing(f, k, field.p)
    born = {i: pr.levels[k][i][0] for i in pr.positive}
    intervals = []
    for i, j in pr.pairs:
        a, b = born.pop(i), pr.levels[k + 1][j][0]
        if a < b:
            intervals.append((a, b))
    intervals.extend((a, INF) for a in born.values())
    return Barcode(k, tuple(intervals))


def betti_curve(f: EdgewiseFiltration, k: int, field: FieldSpec = GF2) -> list[int]:
    """Entry i-1 is beta_k(X(G_i)), read off the barcode."""
    bc = flag_persistence(f, k, field)
    return [bc.rank_at(i) for i in range(1, f.m + 1)]


def total_persistence(b: Barcode, horizon: int) -> int:
    """Sum of interval lengths with infinite deaths cut at horizon + 1."""
    for _, d in b.intervals:
        if d != INF and d > horizon:
            raise ValueError(f"death {d} beyond horizon {horizon}")
    return sum(int(min(d, horizon + 1)) - a for a, d in b.intervals)


# ---------------------------------------------------------------------------
# Representative cycles and the triangle-free support
# ---------------------------------------------------------------------------

Cycle = dict[tuple[int, int], int]


def _edge_of(mask: int) -> tuple[int, int]:
    u = (mask & -mask).bit_length() - 1
    return u, mask.bit_length() - 1


def _as_cycle(col, edges: list[int], p: int) -> Cycle:
    if p == 2:
        return {_edge_of(edges[i]): 1 for i in iter_bits(col)}
    return {_edge_of(edges[i]): c for i, c in sorted(col.items()) if c}


def representative_cycles(f: EdgewiseFiltration, field: FieldSpec = GF2) -> list[tuple[tuple[int, float], Cycle]]:
    """One 1-cycle per degree-1 interval, born at the interval's birth index.

    Finite intervals use the reduced boundary column that kills them; infinite
    ones use the chain that reduced the edge's own boundary column to zero.
    """
    if f.m == 0:
        return []
    p = field.p
    pr = _pairing(f, 1, p, track=True)
    edges = [s for _, s in pr.levels[1]]
    out = []
    paired = set()
    for i, j in pr.pairs:
        paired.add(i)
        a, b = pr.levels[1][i][0], pr.levels[2][j][0]
        if a < b:
            out.append(((a, b), _as_cycle(pr.high_red.reduced[j], edges, p)))
    for i in pr.positive:
        if i not in paired:
            out.append(((pr.levels[1][i][0], INF), _as_cycle(pr.low_red.chains[i], edges, p)))
    out.sort(key=lambda item: item[0])
    return out


def triangle_free_reduction(f: EdgewiseFiltration, field: FieldSpec = GF2) -> tuple[Graph, list[Cycle]]:
    """Shrink the union of representative supports until it has no triangle.

    Triangles are taken in lexicographic order of their vertex triples. For the
    triangle ``v1 < v2 < v3`` every cycle using ``{v2, v3}`` is adjusted by a
    multiple of the triangle's boundary, then that edge is deleted.
    """
    p = field.p
    cycles = [dict(c) for _, c in representative_cycles(f, field)]
    support = set()
    for c in cycles:
        support.update(c)
    while True:
        h = Graph.from_edges(f.n, support)
        tri = _first_triangle(h)
        if tri is None:
            return h, cycles
        a, b, c = tri
        # boundary of [a, b, c] is (b,c) - (a,c) + (a,b)
        bd = {(b, c): 1, (a, c): p - 1, (a, b): 1}
        for cyc in cycles:
            lam = cyc.get((b, c), 0)
            if not lam:
                continue
            for e, coef in bd.items():
                val = (cyc.get(e, 0) - lam * coef) % p
                if val:
                    cyc[e] = val
                else:
                    cyc.pop(e, None)
        support.discard((b, c))


def _first_triangle(g: Graph) -> tuple[int, int, int] | None:
    for a in range(g.n):
        up = g.adj[a] >> (a + 1) << (a + 1)
        for b in iter_bits(up):
            common = up & g.adj[b] >> (b + 1) << (b + 1)
            if common:
                return a, b, (common & -common).bit_length() - 1
    return None


def triangle_free_support(f: EdgewiseFiltration, field: FieldSpec = GF2) -> Graph:
    return triangle_free_reduction(f, field)[0]


# ---------------------------------------------------------------------------
# Vietoris-Rips realization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MetricRealization:
    """Distance matrix; pairs at distance >= ``cutoff`` are not filtration edges."""

    n: int
    dist: tuple[tuple[Fraction, ...], ...]
    cutoff: Fraction | None = Fraction(2)

    def __post_init__(self) -> None:
        if len(self.dist) != self.n or any(len(row) != self.n for row in self.dist):
            raise ValueError("distance matrix must be n x n")
        for i in range(self.n):
            if self.dist[i][i] != 0:
                raise ValueError("diagonal must be zero")
            for j in range(i):
                if self.dist[i][j] != self.dist[j][i]:
                    raise ValueError("distance matrix must be symmetric")

    def triangle_violation(self) -> tuple[int, int, int] | None:
        """First triple (i, j, l) with d(i, j) > d(i, l) + d(l, j), if any."""
        d = self.dist
        for i in range(self.n):
            for j in range(self.n):
                for l in range(self.n):
                    if d[i][j] > d[i][l] + d[l][j]:
                        return i, j, l
        return None

    def is_metric(self) -> bool:
        positive = all(self.dist[i][j] > 0 for i in range(self.n) for j in range(self.n) if i != j)
        return positive and self.triangle_violation() is None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "cutoff": None if self.cutoff is None else format_fraction(self.cutoff),
            "dist": [[format_fraction(x) for x in row] for row in self.dist],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":")) + "\n"


def format_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def metric_realization(f: EdgewiseFiltration) -> MetricRealization:
    """d(u, v) = 2 - 1/I(u, v) for the edge added at index I; other pairs get 2."""
    d = [[Fraction(0) if i == j else Fraction(2) for j in range(f.n)] for i in range(f.n)]
    for idx, (u, v) in enumerate(f.edges, start=1):
        d[u][v] = d[v][u] = 2 - Fraction(1, idx)
    return MetricRealization(f.n, tuple(tuple(r) for r in d))


def vietoris_rips_filtration(mr: MetricRealization) -> EdgewiseFiltration:
    """Edges in increasing distance order, keeping pairs below the cutoff."""
    pairs = [
        (mr.dist[u][v], (u, v))
        for u in range(mr.n)
        for v in range(u + 1, mr.n)
        if mr.cutoff is None or mr.dist[u][v] < mr.cutoff
    ]
    pairs.sort()
    for (d1, e1), (d2, e2) in zip(pairs, pairs[1:]):
        if d1 == d2:
            raise ValueError(f"edges {e1} and {e2} tie at distance {d1}; no edgewise order")
    return EdgewiseFiltration(mr.n, tuple(e for _, e in pairs))


# ---------------------------------------------------------------------------
# Bar position bounds
# ---------------------------------------------------------------------------

def bar_bounds_check(b: Barcode, n: int, k: int, horizon: int | None = None) -> VerificationReport:
    """Check births against 2k(k+1) and last-alive indices against C(n-1, 2) + k.

    A finite interval [a, b) is last alive at b - 1; an infinite one at the
    horizon, when given. Raw deaths are reported but not bounded.
    """
    birth_floor = 2 * k * (k + 1)
    alive_ceiling = comb(n - 1, 2) + k
    early = [iv for iv in b.intervals if iv[0] < birth_floor]
    last_alive = [d - 1 for _, d in b.intervals if d != INF]
    if horizon is not None:
        last_alive += [horizon for _, d in b.intervals if d == INF]
    late = [x for x in last_alive if x > alive_ceiling]
    finite = [d for _, d in b.intervals if d != INF]
    details = {
        "birth_floor": birth_floor,
        "alive_ceiling": alive_ceiling,
        "min_birth": min((a for a, _ in b.intervals), default=None),
        "max_death": max(finite, default=None),
        "max_last_alive": max(last_alive, default=None),
    }
    ok = not early and not late
    witness = None if ok else {"early": early, "late_last_alive": late}
    return VerificationReport(
        "bar-bounds", {"n": n, "k": k, "horizon": horizon}, PASS if ok else FAIL, witness, details
    )


# ---------------------------------------------------------------------------
# File formats
# ---------------------------------------------------------------------------

def to_filtration_text(f: EdgewiseFiltration) -> str:
    return "".join([f"{f.n} {f.m}\n"] + [f"{u} {v}\n" for u, v in f.edges])


def from_filtration_text(text: str) -> EdgewiseFiltration:
    n, edges = parse_edge_lines(text, ordered=True)
    return EdgewiseFiltration(n, tuple(edges))


def prefix_betti_oracle(f: EdgewiseFiltration, k: int, field: FieldSpec = GF2) -> list[int]:
    """beta_k of every prefix recomputed from scratch, independent of the barcode."""
    return [betti(f.prefix(i), k, field) for i in range(1, f.m + 1)]
