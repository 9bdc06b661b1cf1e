"""Extremal filtrations and their closed-form Betti numbers.

Post-Turán filtrations grow one clique inside each class of T_{n,2}. They are
encoded as a word over ``L``/``R`` (one unit clique growth per letter on the
larger / smaller class), or as the coarser tuple representation
``(l_1, r_1), (l_2, r_2), ...`` of clique sizes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import comb

from .graph import Graph, complement, disjoint_union, empty, star, turan, turan_edge_count
from .homology import turan_betti_closed_form
from .persistence import INF, EdgewiseFiltration, flag_persistence


class DomainError(ValueError):
    pass


def colex_key(edge: tuple[int, int]) -> tuple[int, int]:
    u, v = edge
    return max(u, v), min(u, v)


# ---------------------------------------------------------------------------
# The fiberwise optimal filtration of T_{n,k+1}
# ---------------------------------------------------------------------------

def h_filtration(n: int, k: int) -> EdgewiseFiltration:
    """Edges of T_{n,k+1} (class of i is i mod k+1) in co-lexicographic order."""
    if n < 1 or k < 1:
        raise DomainError("need n >= 1 and k >= 1")
    g, _ = turan(n, k + 1)
    return EdgewiseFiltration(n, tuple(sorted(g.edges(), key=colex_key)))


def h_betti_closed_form(n: int, k: int, e: int) -> int:
    """beta_k(H_e) = beta_k(T_{m,k+1}) + beta_{k-1}(T_{e - e_m, k}), m maximal with e_m <= e."""
    if n < 1 or k < 1:
        raise DomainError("need n >= 1 and k >= 1")
    if not 0 <= e <= turan_edge_count(n, k + 1):
        raise DomainError(f"e={e} outside 0..{turan_edge_count(n, k + 1)}")
    m = 1
    while m < n and turan_edge_count(m + 1, k + 1) <= e:
        m += 1
    rest = e - turan_edge_count(m, k + 1)
    return turan_betti_closed_form(m, k + 1, k) + turan_betti_closed_form(rest, k, k - 1)


def h_increments_monotone(n: int, k: int, curve: list[int] | None = None) -> bool:
    """Within each vertex block of H, per-edge Betti increments never shrink.

    ``curve[i-1]`` is beta_k(H_i); the closed form is used when omitted.
    """
    total = turan_edge_count(n, k + 1)
    if curve is None:
        curve = [h_betti_closed_form(n, k, e) for e in range(1, total + 1)]
    values = [0] + list(curve)
    for m in range(1, n):
        lo, hi = turan_edge_count(m, k + 1), turan_edge_count(m + 1, k + 1)
        steps = [values[e + 1] - values[e] for e in range(lo, hi)]
        if any(a > b for a, b in zip(steps, steps[1:])):
            return False
    return True


# ---------------------------------------------------------------------------
# Post-Turán representations
# ---------------------------------------------------------------------------

def clique_targets(n: int) -> tuple[int, int]:
    """Final clique sizes (left, right) of the boundary graph on n vertices."""
    if n < 4:
        raise DomainError("post-Turán representations need n >= 4")
    return (n + 1) // 2 - 1, n // 2 - 1


@dataclass(frozen=True)
class MovePath:
    n: int
    word: str

    def __post_init__(self) -> None:
        left, right = clique_targets(self.n)
        if set(self.word) - {"L", "R"}:
            raise DomainError("move words use only 'L' and 'R'")
        if self.word.count("L") != left - 1 or self.word.count("R") != right - 1:
            raise DomainError(f"n={self.n} needs {left - 1} L moves and {right - 1} R moves")

    def states(self) -> list[tuple[int, int]]:
        """Clique sizes after each move, starting from (1, 1)."""
        l, r = 1, 1
        out = [(l, r)]
        for mv in self.word:
            if mv == "L":
                l += 1
            else:
                r += 1
            out.append((l, r))
        return out

    @classmethod
    def from_states(cls, n: int, states: list[tuple[int, int]]) -> "MovePath":
        word = []
        for (l0, r0), (l1, r1) in zip(states, states[1:]):
            if (l1 - l0, r1 - r0) == (1, 0):
                word.append("L")
            elif (l1 - l0, r1 - r0) == (0, 1):
                word.append("R")
            else:
                raise DomainError(f"states {(l0, r0)} -> {(l1, r1)} are not a unit move")
        return cls(n, "".join(word))

    def __str__(self) -> str:
        return self.word


@dataclass(frozen=True)
class Representation:
    n: int
    tuples: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        ts = self.tuples
        if not ts or ts[0] != (1, 1):
            raise DomainError("a representation starts at (1, 1)")
        if ts[-1] != clique_targets(self.n):
            raise DomainError(f"a representation for n={self.n} ends at {clique_targets(self.n)}")
        for (l0, r0), (l1, r1) in zip(ts, ts[1:]):
            if l1 < l0 or r1 < r0 or (l1, r1) == (l0, r0):
                raise DomainError(f"step {(l0, r0)} -> {(l1, r1)} is not a strict monotone step")

    def to_path(self) -> MovePath:
        """Expand each step left growth first, then right."""
        word = "".join("L" * (l1 - l0) + "R" * (r1 - r0) for (l0, r0), (l1, r1) in zip(self.tuples, self.tuples[1:]))
        return MovePath(self.n, word)

    @classmethod
    def from_path(cls, path: MovePath) -> "Representation":
        """Shortest representation: one tuple per maximal L-run followed by R-run."""
        tuples = [(1, 1)]
        l, r = 1, 1
        for block in re.findall(r"L*R*", path.word):
            if not block:
                continue
            l += block.count("L")
            r += block.count("R")
            tuples.append((l, r))
        return cls(path.n, tuple(tuples))

    def __str__(self) -> str:
        return "".join(f"({l},{r})" for l, r in self.tuples)


def parse_representation(text: str, n: int) -> Representation:
    body = text.replace(" ", "")
    pairs = re.findall(r"\((\d+),(\d+)\)", body)
    if not pairs or "".join(f"({a},{b})" for a, b in pairs) != body:
        raise DomainError(f"cannot parse representation {text!r}")
    return Representation(n, tuple((int(a), int(b)) for a, b in pairs))


def as_path(rep: Representation | MovePath) -> MovePath:
    return rep if isinstance(rep, MovePath) else rep.to_path()


def parse_moves(text: str, n: int) -> MovePath:
    """Accept a bare L/R word or a tuple representation."""
    text = text.strip()
    if text.startswith("("):
        return parse_representation(text, n).to_path()
    return MovePath(n, text.upper())


def enumerate_paths(n: int) -> list[MovePath]:
    """Every move path for n, in lexicographic word order."""
    left, right = clique_targets(n)
    a, b = left - 1, right - 1
    words = []

    def grow(prefix: str, la: int, rb: int) -> None:
        if la == 0 and rb == 0:
            words.append(prefix)
            return
        if la:
            grow(prefix + "L", la - 1, rb)
        if rb:
            grow(prefix + "R", la, rb - 1)

    grow("", a, b)
    return [MovePath(n, w) for w in words]


def representation_to_filtration(rep: Representation | MovePath, complete: bool = False) -> EdgewiseFiltration:
    """H^{n,2} followed by the clique growths; optionally padded to K_n co-lexicographically.

    Left cliques live on the even labels, right cliques on the odd labels. A
    growing clique takes the smallest unused label of its class and connects it
    to the existing clique in ascending label order.
    """
    path = as_path(rep)
    n = path.n
    edges = list(h_filtration(n, 1).edges)
    sides = {"L": list(range(0, n, 2)), "R": list(range(1, n, 2))}
    size = {"L": 1, "R": 1}
    for mv in path.word:
        cls, s = sides[mv], size[mv]
        edges.extend((cls[i], cls[s]) for i in range(s))
        size[mv] = s + 1
    if complete:
        have = set(edges)
        edges.extend(sorted(((u, v) for v in range(n) for u in range(v) if (u, v) not in have), key=colex_key))
    return EdgewiseFiltration(n, tuple(edges))


def post_turan_coefficients(rep: Representation | MovePath) -> tuple[dict[int, int], dict[int, int]]:
    """Component-count factors (a_i, b_i) for growing the left / right clique from i to i+1."""
    path = as_path(rep)
    n, p = path.n, path.n // 2
    left_size = (n + 1) // 2
    a: dict[int, int] = {}
    b: dict[int, int] = {}
    l, r = 1, 1
    for mv in path.word:
        if mv == "L":
            a[l] = p - r
            l += 1
        else:
            b[r] = left_size - l
            r += 1
    return a, b


def post_turan_total_persistence(rep: Representation | MovePath) -> int:
    """Sum of beta_1 over indices e_n + 1 .. C(n-1, 2) + 1 of the realized filtration."""
    path = as_path(rep)
    n, p = path.n, path.n // 2
    a, b = post_turan_coefficients(path)
    left_room = p - 1 if n % 2 == 0 else p
    total = sum(coef * i * (left_room - i) for i, coef in a.items())
    total += sum(coef * i * (p - i - 1) for i, coef in b.items())
    return total


def optimal_representations(n: int) -> list[Representation]:
    """The total-persistence-optimal post-Turán representations for degree 1."""
    if n < 4:
        raise DomainError("optimal representations are defined for n >= 4")
    left, right = clique_targets(n)
    if n % 2:
        start = (3 * n + 7) // 8
        chains = [[(s, s - 1) for s in range(start, left + 1)]]
    else:
        start = (3 * n - 2) // 8
        chains = [[(s, s) for s in range(start, left + 1)]]
        if n % 8 == 0:
            chains.append([(s, s) for s in range(start + 1, left + 1)])
    reps = []
    for chain in chains:
        tuples = [(1, 1)]
        for t in chain:
            if t != tuples[-1]:
                tuples.append(t)
        reps.append(Representation(n, tuple(tuples)))
    return reps


@dataclass(frozen=True)
class AlternationDepth:
    d: int


def alternation_depth(rep: Representation | MovePath) -> AlternationDepth:
    """Smallest left clique size from which the path is strict LR lockstep to the end.

    Lockstep starts from a state (d, d) for even n and (d, d - 1) for odd n.
    """
    path = as_path(rep)
    offset = path.n % 2
    states = path.states()
    word = path.word
    for pos, (l, r) in enumerate(states):
        if l - r == offset and r >= 1:
            tail = word[pos:]
            if tail == "LR" * (len(tail) // 2):
                return AlternationDepth(l)
    raise AssertionError("the final state always starts an empty lockstep")


def left_ahead_normalize(rep: Representation | MovePath) -> Representation:
    """Swap left/right on every stretch where the right clique is larger."""
    path = as_path(rep)
    states = [(r, l) if r > l else (l, r) for l, r in path.states()]
    return Representation.from_path(MovePath.from_states(path.n, states))


def fiberwise_key(rep: Representation | MovePath) -> tuple:
    """Equal keys iff the realized filtrations are fiberwise isomorphic.

    For even n the two classes have equal size, so a state is only defined up
    to swapping sides. For odd n the classes are distinguishable.
    """
    path = as_path(rep)
    if path.n % 2:
        return tuple(path.states())
    return tuple(tuple(sorted(s, reverse=True)) for s in path.states())


# ---------------------------------------------------------------------------
# Total-persistence differences of the two path transformations
# ---------------------------------------------------------------------------

def delta_alternation(p: int, w: int, d: int) -> int:
    """TP gain from inserting one more lockstep level before depth d (n = 2p)."""
    if not 1 <= w <= d - 1 <= p - 1:
        raise DomainError("need 1 <= w <= d-1 <= p-1")
    num = (d - 1 - w) * (d - w) * (4 * d + 2 * w - 3 * p - 2)
    assert num % 6 == 0, "alternation delta numerator not divisible by 6"
    return num // 6


def delta_start(p: int, j: int, k: int) -> int:
    """TP gain from moving the first left growth after the right run ahead of it (n = 2p)."""
    if not 1 <= k <= j <= p - 1:
        raise DomainError("need 1 <= k <= j <= p-1")
    tail = (k - 1) * k * (3 * p - 2 * k - 2)
    assert tail % 6 == 0, "start delta tail not divisible by 6"
    return (k - 1) * j * (p - j - 1) - tail // 6


def deepen_alternation(rep: Representation | MovePath) -> tuple[MovePath, tuple[int, int, int]] | None:
    """Rewrite ``P L^a R^b (LR)^s`` to ``P L^(a-1) R^(b-1) L R (LR)^s``.

    Applies to even n with alternation depth d >= 2. Returns the new path and
    the parameters ``(p, w, d)`` of the predicted gain, or None.
    """
    path = as_path(rep)
    if path.n % 2:
        return None
    d = alternation_depth(path).d
    if d == 1:
        return None
    word = path.word
    cut = path.states().index((d, d))
    head, tail = word[:cut], word[cut:]
    stripped = head.rstrip("R")
    b = len(head) - len(stripped)
    core = stripped.rstrip("L")
    a = len(stripped) - len(core)
    if a == 0 or b == 0:
        return None
    new = core + "L" * (a - 1) + "R" * (b - 1) + "LR" + tail
    return MovePath(path.n, new), (path.n // 2, d - b, d)


def advance_start(rep: Representation | MovePath) -> tuple[MovePath, tuple[int, int, int]] | None:
    """Rewrite ``L^(j-1) R^(k-1) L rest`` to ``L^j R^(k-1) rest`` for even n.

    Returns the new path and ``(p, j, k)``, or None when no left growth follows
    the first right run.
    """
    path = as_path(rep)
    if path.n % 2:
        return None
    word = path.word
    lefts = len(word) - len(word.lstrip("L"))
    rights = len(word[lefts:]) - len(word[lefts:].lstrip("R"))
    cut = lefts + rights
    if rights == 0 or cut == len(word):
        return None
    j, k = lefts + 1, rights + 1
    new = "L" * j + "R" * (k - 1) + word[cut + 1:]
    return MovePath(path.n, new), (path.n // 2, j, k)


# ---------------------------------------------------------------------------
# Longest-bar witness
# ---------------------------------------------------------------------------

def stars_complement(n: int, k: int) -> Graph:
    """Complement of k+1 disjoint stars K_{1,p-1}, p = n/(k+1); star i uses labels i*p..i*p+p-1."""
    if k < 0 or n % (k + 1):
        raise DomainError("need (k+1) | n")
    p = n // (k + 1)
    if p < 2:
        raise DomainError("stars need at least two vertices")
    h = empty(0)
    for _ in range(k + 1):
        h = disjoint_union(h, star(p))
    return complement(h)


def max_bar_witness(n: int, k: int) -> tuple[Graph, EdgewiseFiltration]:
    """A graph with C(n-1, 2) + k edges and beta_k >= 1, plus a filtration of it.

    The filtration first builds T_{2(k+1),k+1} on each star's center and first
    leaf, then adds the remaining edges co-lexicographically. The returned
    filtration is checked to carry a degree-k bar from 2k(k+1) to the end.
    """
    g = stars_complement(n, k)
    p = n // (k + 1)
    reps = {i * p + j for i in range(k + 1) for j in (0, 1)}
    first = sorted((e for e in g.edges() if e[0] in reps and e[1] in reps), key=colex_key)
    rest = sorted((e for e in g.edges() if not (e[0] in reps and e[1] in reps)), key=colex_key)
    f = EdgewiseFiltration(n, tuple(first + rest))
    birth = 2 * k * (k + 1)
    if f.m != comb(n - 1, 2) + k or len(first) != birth:
        raise AssertionError("witness edge counts disagree with the construction")
    # vertices exist from index 1, so a degree-0 class cannot be born earlier
    start = max(birth, 1)
    if (start, INF) not in flag_persistence(f, k).intervals:
        raise AssertionError(f"no degree-{k} bar [{start}, inf) in the witness filtration")
    return g, f
