"""Reduced homology of flag complexes over a prime field.

Simplices are bit masks over the vertex set. Within one dimension they are
sorted by mask value, which is colexicographic order and therefore the order
of their combinatorial-number-system rank.

Columns are reduced left to right with a pivot map ``lowest row -> column``.
Over GF(2) a column is an int whose set bits are row indices; for odd p it is
a dict ``row -> coefficient``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Union

from .graph import Graph, PreconditionError, VertexPartition, complement, connected_component_count, iter_bits

Column = Union[int, dict]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    p: int = 2

    def __post_init__(self) -> None:
        if not (2 <= self.p < 1 << 16) or not is_prime(self.p):
            raise ValueError(f"field characteristic must be a prime below 2^16, got {self.p}")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(a, self.p - 2, self.p)


GF2 = FieldSpec(2)


def combinatorial_rank(mask: int) -> int:
    """Rank of a vertex set in the combinatorial number system."""
    return sum(comb(v, i + 1) for i, v in enumerate(iter_bits(mask)))


@dataclass(frozen=True)
class CliqueTable:
    n: int
    max_dim: int
    simplices: tuple[tuple[int, ...], ...]
    _index: dict = field(default_factory=dict, compare=False, repr=False)

    def count(self, d: int) -> int:
        if d == -1:
            return 1
        if d < 0 or d > self.max_dim:
            return 0
        return len(self.simplices[d])

    def index(self, d: int) -> dict[int, int]:
        if d not in self._index:
            self._index[d] = {s: i for i, s in enumerate(self.simplices[d])}
        return self._index[d]

    def ranks(self, d: int) -> list[int]:
        return [combinatorial_rank(s) for s in self.simplices[d]]


def clique_masks(n: int, adj: tuple[int, ...], max_dim: int) -> list[list[int]]:
    """All cliques of size <= max_dim + 1 grouped by dimension, each list sorted."""
    out: list[list[int]] = [[] for _ in range(max_dim + 1)]
    if max_dim < 0:
        return out
    out[0] = [1 << v for v in range(n)]
    if max_dim == 0:
        return out
    # extend each clique only by vertices above its current maximum
    stack = [(1 << v, adj[v] >> (v + 1) << (v + 1), 0) for v in range(n)]
    while stack:
        mask, cand, d = stack.pop()
        while cand:
            low = cand & -cand
            cand ^= low
            w = low.bit_length() - 1
            new = mask | low
            out[d + 1].append(new)
            if d + 1 < max_dim:
                stack.append((new, cand & adj[w], d + 1))
    for lst in out:
        lst.sort()
    return out


def enumerate_cliques(g: Graph, max_dim: int) -> CliqueTable:
    if max_dim < 0:
        raise ValueError("max_dim must be non-negative")
    masks = clique_masks(g.n, g.adj, max_dim)
    return CliqueTable(g.n, max_dim, tuple(tuple(m) for m in masks))


# ---------------------------------------------------------------------------
# Boundary matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SparseMatrix:
    n_rows: int
    columns: tuple[tuple[tuple[int, int], ...], ...]
    p: int = 2

    @property
    def n_cols(self) -> int:
        return len(self.columns)

    def to_dense(self) -> list[list[int]]:
        rows = [[0] * self.n_cols for _ in range(self.n_rows)]
        for j, col in enumerate(self.columns):
            for i, c in col:
                rows[i][j] = c
        return rows

    def compose(self, other: "SparseMatrix") -> "SparseMatrix":
        """Matrix product ``self @ other`` mod p."""
        if other.n_rows != self.n_cols or other.p != self.p:
            raise ValueError("incompatible matrices")
        cols = []
        for col in other.columns:
            acc: dict[int, int] = {}
            for mid, c in col:
                for row, c2 in self.columns[mid]:
                    acc[row] = (acc.get(row, 0) + c * c2) % self.p
            cols.append(tuple(sorted((r, c) for r, c in acc.items() if c)))
        return SparseMatrix(self.n_rows, tuple(cols), self.p)


def face_signs(mask: int):
    """Yield ``(face, sign)`` for each codimension-one face; sign is +1/-1."""
    sign = 1
    for v in iter_bits(mask):
        yield mask ^ (1 << v), sign
        sign = -sign


def boundary_columns(simplices, row_index: dict[int, int] | None, p: int) -> list[Column]:
    """Internal columns of the boundary of ``simplices``.

    ``row_index=None`` means the augmentation map onto the single empty simplex.
    """
    cols: list[Column] = []
    if row_index is None:
        return [1 if p == 2 else {0: 1} for _ in simplices]
    if p == 2:
        for s in simplices:
            col = 0
            m = s
            while m:
                low = m & -m
                m ^= low
                col |= 1 << row_index[s ^ low]
            cols.append(col)
    else:
        for s in simplices:
            cols.append({row_index[f]: sg % p for f, sg in face_signs(s)})
    return cols


def boundary_matrix(table: CliqueTable, d: int, field: FieldSpec = GF2) -> SparseMatrix:
    """Boundary from dimension d to d-1; d=0 maps onto the empty simplex (one row)."""
    if not 0 <= d <= table.max_dim:
        raise ValueError(f"dimension {d} outside 0..{table.max_dim}")
    p = field.p
    if d == 0:
        n_rows, cols = 1, boundary_columns(table.simplices[0], None, p)
    else:
        n_rows = table.count(d - 1)
        cols = boundary_columns(table.simplices[d], table.index(d - 1), p)
    return SparseMatrix(n_rows, tuple(_column_pairs(c, p) for c in cols), p)


def _column_pairs(col: Column, p: int) -> tuple[tuple[int, int], ...]:
    if p == 2:
        return tuple((i, 1) for i in iter_bits(col))
    return tuple(sorted((i, c) for i, c in col.items() if c))


def _from_pairs(pairs, p: int) -> Column:
    if p == 2:
        col = 0
        for i, c in pairs:
            if c % 2:
                col ^= 1 << i
        return col
    return {i: c % p for i, c in pairs if c % p}


# ---------------------------------------------------------------------------
# Column reduction
# ---------------------------------------------------------------------------

def _low(col: Column, p: int) -> int:
    if p == 2:
        return col.bit_length() - 1
    return max(col) if col else -1


@dataclass
class Reduction:
    reduced: list[Column]
    pivots: dict[int, int]  # lowest row -> column index
    chains: list[Column] | None = None  # column j of V with R = D V

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def low(self, j: int, p: int) -> int:
        return _low(self.reduced[j], p)


def reduce_columns(columns: list[Column], p: int = 2, track: bool = False) -> Reduction:
    """Standard left-to-right reduction; ``track`` also records the chain matrix V."""
    reduced: list[Column] = []
    pivots: dict[int, int] = {}
    chains: list[Column] | None = [] if track else None
    if p == 2:
        for j, col in enumerate(columns):
            v = 1 << j
            while col:
                low = col.bit_length() - 1
                other = pivots.get(low)
                if other is None:
                    pivots[low] = j
                    break
                col ^= reduced[other]
                if track:
                    v ^= chains[other]
            reduced.append(col)
            if track:
                chains.append(v)
        return Reduction(reduced, pivots, chains)
    for j, col in enumerate(columns):
        col = dict(col)
        v = {j: 1}
        while col:
            low = max(col)
            other = pivots.get(low)
            if other is None:
                pivots[low] = j
                break
            ocol = reduced[other]
            factor = col[low] * pow(ocol[low], p - 2, p) % p
            for r, c in ocol.items():
                nc = (col.get(r, 0) - factor * c) % p
                if nc:
                    col[r] = nc
                else:
                    col.pop(r, None)
            if track:
                for r, c in chains[other].items():
                    nc = (v.get(r, 0) - factor * c) % p
                    if nc:
                        v[r] = nc
                    else:
                        v.pop(r, None)
        reduced.append(col)
        if track:
            chains.append(v)
    return Reduction(reduced, pivots, chains)


def matrix_rank(mat: SparseMatrix) -> int:
    return reduce_columns([_from_pairs(c, mat.p) for c in mat.columns], mat.p).rank


# ---------------------------------------------------------------------------
# Betti numbers
# ---------------------------------------------------------------------------

def betti_from_adjacency(n: int, adj: tuple[int, ...], k: int, p: int = 2) -> int:
    """Reduced beta_k of the flag complex of the graph given by raw bit rows."""
    if k < -1:
        raise ValueError("homology degree must be >= -1")
    if k == -1:
        return 1 if n == 0 else 0
    masks = clique_masks(n, adj, k + 1)
    simplices_k = masks[k]
    if not simplices_k:
        return 0
    if k == 0:
        rank_k = 1
    else:
        index = {s: i for i, s in enumerate(masks[k - 1])}
        rank_k = reduce_columns(boundary_columns(simplices_k, index, p), p).rank
    rank_k1 = 0
    if masks[k + 1]:
        index = {s: i for i, s in enumerate(simplices_k)}
        rank_k1 = reduce_columns(boundary_columns(masks[k + 1], index, p), p).rank
    return len(simplices_k) - rank_k - rank_k1


def betti(g: Graph, k: int, field: FieldSpec = GF2) -> int:
    """Reduced beta_k(X(g)); beta_{-1} is 1 exactly for the empty complex."""
    return betti_from_adjacency(g.n, g.adj, k, field.p)


def betti_numbers(g: Graph, max_degree: int, field: FieldSpec = GF2) -> list[int]:
    """[beta_0, ..., beta_max_degree] of X(g)."""
    return [betti(g, k, field) for k in range(max_degree + 1)]


def betti_independence(g: Graph, k: int, field: FieldSpec = GF2) -> int:
    """beta_k of the independence complex Ind(g) = X(complement g)."""
    return betti(complement(g), k, field)


# ---------------------------------------------------------------------------
# Closed forms and bounds
# ---------------------------------------------------------------------------

def turan_betti_closed_form(n: int, k: int, i: int) -> int:
    """beta_i(T_{n,k}) as a product over class sizes; zero off degree k-1."""
    if k < 1 or n < 0 or i < 0:
        raise ValueError("need n >= 0, k >= 1, i >= 0")
    if n == 0 or i != k - 1:
        return 0
    n_big = (n - 1) % k + 1
    return (-(-n // k) - 1) ** n_big * (n // k - 1) ** (k - n_big)


def max_betti_upper_bound(n: int, k: int) -> int:
    """Largest beta_k over all flag complexes on n vertices (attained by T_{n,k+1})."""
    if n < 1 or k < 0:
        raise ValueError("need n >= 1, k >= 0")
    return turan_betti_closed_form(n, k + 1, k)


def balanced_partition(total: int, parts: int) -> list[int]:
    if not total >= parts >= 1:
        raise ValueError("need total >= parts >= 1")
    q, r = divmod(total, parts)
    return [q + 1] * r + [q] * (parts - r)


def bipartite_betti1(g: Graph, partition: VertexPartition) -> int:
    """beta_1 of a graph containing all edges across a two-class partition."""
    if len(partition.classes) != 2 or partition.n != g.n:
        raise PreconditionError("need a two-class partition of the graph's vertices")
    left, right = partition.masks()
    for v in partition.classes[0]:
        missing = right & ~g.adj[v]
        if missing:
            w = (missing & -missing).bit_length() - 1
            raise PreconditionError(f"missing cross edge ({v}, {w})")
    d1 = connected_component_count(g, left)
    d2 = connected_component_count(g, right)
    return (d1 - 1) * (d2 - 1)


def vanishing_edge_threshold(n: int, k: int) -> int:
    """Graphs on n vertices with more edges than this have beta_k = 0."""
    if n < 1:
        raise ValueError("n must be positive")
    return comb(n - 1, 2) + k
