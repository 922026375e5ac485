"""Vertex shifts: symbol graphs, eventually periodic points, shift dynamics.

Points of a vertex shift are one-sided infinite vertex sequences following
the edges of a finite digraph.  This module works with the eventually
periodic points only: they are dense in the shift space, have finite
canonical descriptions (head + primitive cycle), and make every comparison
exact.  The metric is 2^(-k) where k is the first index at which two
sequences differ; it is our fixed choice of sequence-space metric and all
stated tolerances are relative to it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InvalidPoint, NoConvergence, SpecError


@dataclass(frozen=True)
class SftGraph:
    """Symbol graph of a vertex shift: square 0/1 adjacency matrix."""

    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.adjacency)
        if n == 0 or any(len(row) != n for row in self.adjacency):
            raise SpecError("adjacency must be a nonempty square matrix")
        if any(x not in (0, 1) for row in self.adjacency for x in row):
            raise SpecError("adjacency entries must be 0 or 1")
        for v in range(n):
            if not any(self.adjacency[v]):
                raise SpecError(f"vertex {v} has no outgoing edge")
            if not any(row[v] for row in self.adjacency):
                raise SpecError(f"vertex {v} has no incoming edge")

    @property
    def vertex_count(self) -> int:
        return len(self.adjacency)

    def is_edge(self, a: int, b: int) -> bool:
        return self.adjacency[a][b] == 1

    def successors(self, v: int) -> tuple[int, ...]:
        return tuple(w for w, bit in enumerate(self.adjacency[v]) if bit)


def full_shift(symbols: int) -> SftGraph:
    return SftGraph(tuple(tuple(1 for _ in range(symbols)) for _ in range(symbols)))


def canonical_form(head, cycle) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Reduce (head, cycle) so the cycle is primitive and the head minimal.

    A description is canonical when the cycle is not a power of a shorter
    word and the last head symbol cannot be absorbed by rotating the cycle.
    Canonical descriptions are unique, so point equality is syntactic.
    """
    head = tuple(head)
    cycle = tuple(cycle)
    if not cycle:
        raise InvalidPoint("cycle must be nonempty")
    p = len(cycle)
    for d in range(1, p):
        if p % d == 0 and cycle == cycle[:d] * (p // d):
            cycle = cycle[:d]
            p = d
            break
    while head and head[-1] == cycle[-1]:
        head = head[:-1]
        cycle = cycle[-1:] + cycle[:-1]
    return head, cycle


@dataclass(frozen=True)
class SftPoint:
    """Eventually periodic point: symbols head[0..] then cycle repeated.

    The constructor canonicalizes, so equal points compare equal.
    """

    head: tuple[int, ...]
    cycle: tuple[int, ...]

    def __post_init__(self):
        h, c = canonical_form(self.head, self.cycle)
        object.__setattr__(self, "head", h)
        object.__setattr__(self, "cycle", c)

    def symbol(self, i: int) -> int:
        if i < len(self.head):
            return self.head[i]
        return self.cycle[(i - len(self.head)) % len(self.cycle)]

    def expand(self, n: int) -> list[int]:
        return [self.symbol(i) for i in range(n)]

    def __str__(self) -> str:
        h = " ".join(map(str, self.head))
        c = " ".join(map(str, self.cycle))
        return f"{h}|{c}"


def parse_point(text: str) -> SftPoint:
    """Parse 'h0 h1 ... | c0 c1 ...' (head may be empty)."""
    if "|" not in text:
        raise SpecError(f"point text needs a '|' separator: {text!r}")
    head_s, cycle_s = text.split("|", 1)
    try:
        head = tuple(int(t) for t in head_s.split())
        cycle = tuple(int(t) for t in cycle_s.split())
    except ValueError as exc:
        raise SpecError(f"bad point text {text!r}") from exc
    return SftPoint(head, cycle)


def validate_point(g: SftGraph, p: SftPoint) -> None:
    """Check that head + two turns of the cycle is an admissible path."""
    n = g.vertex_count
    word = list(p.head) + list(p.cycle) * 2
    for s in word:
        if not 0 <= s < n:
            raise InvalidPoint(f"symbol {s} outside vertex range of the graph")
    for a, b in zip(word, word[1:]):
        if not g.is_edge(a, b):
            raise InvalidPoint(f"forbidden transition {a}->{b} in {p}")


def sft_shift(g: SftGraph, x: SftPoint) -> SftPoint:
    """Drop the first symbol and re-canonicalize."""
    validate_point(g, x)
    if x.head:
        return SftPoint(x.head[1:], x.cycle)
    return SftPoint((), x.cycle[1:] + x.cycle[:1])


def shift_by(x: SftPoint, k: int) -> SftPoint:
    """Shift k times without graph revalidation (used in hot loops)."""
    if k <= len(x.head):
        return SftPoint(x.head[k:], x.cycle)
    r = (k - len(x.head)) % len(x.cycle)
    return SftPoint((), x.cycle[r:] + x.cycle[:r])


def first_difference(x: SftPoint, y: SftPoint) -> int | None:
    """Index of the first differing symbol, or None when the points are equal.

    A difference, if any, shows up before max(head lengths) + lcm(cycle
    lengths): beyond the heads both sequences are periodic with the lcm as a
    common period.
    """
    if x == y:
        return None
    bound = max(len(x.head), len(y.head)) + math.lcm(len(x.cycle), len(y.cycle))
    for i in range(bound):
        if x.symbol(i) != y.symbol(i):
            return i
    raise AssertionError("distinct canonical points must differ within the bound")


def sft_distance(g: SftGraph, x: SftPoint, y: SftPoint) -> Fraction:
    """Exact 2^(-first difference) metric; 0 for equal points."""
    validate_point(g, x)
    validate_point(g, y)
    k = first_difference(x, y)
    if k is None:
        return Fraction(0)
    return Fraction(1, 2**k)


# -- graph structure -----------------------------------------------------------

def strongly_connected_components(adj: dict[int, tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Iterative Tarjan; components are emitted sinks-first."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    onstack: set[int] = set()
    stack: list[int] = []
    sccs: list[tuple[int, ...]] = []
    counter = 0
    for root in sorted(adj):
        if root in index:
            continue
        work = [(root, iter(adj[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        onstack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    onstack.add(w)
                    work.append((w, iter(adj[w])))
                    advanced = True
                    break
                if w in onstack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    onstack.remove(w)
                    comp.append(w)
                    if w == v:
                        break
                sccs.append(tuple(sorted(comp)))
    return sccs


@lru_cache(maxsize=None)
def _graph_sccs(g: SftGraph) -> tuple[tuple[int, ...], ...]:
    adj = {v: g.successors(v) for v in range(g.vertex_count)}
    return tuple(strongly_connected_components(adj))


def is_irreducible(g: SftGraph) -> bool:
    return len(_graph_sccs(g)) == 1


@lru_cache(maxsize=None)
def graph_period(g: SftGraph) -> int:
    """gcd of the cycle lengths of an irreducible graph.

    BFS levels from vertex 0; every edge contributes |lvl(u)+1-lvl(v)| to the
    gcd accumulator.
    """
    if not is_irreducible(g):
        raise SpecError("graph period is defined for irreducible graphs")
    lvl = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for u in frontier:
            for w in g.successors(u):
                if w not in lvl:
                    lvl[w] = lvl[u] + 1
                    nxt.append(w)
        frontier = nxt
    m = 0
    for u in range(g.vertex_count):
        for w in g.successors(u):
            m = math.gcd(m, abs(lvl[u] + 1 - lvl[w]))
    return m


@lru_cache(maxsize=None)
def vertex_classes(g: SftGraph) -> tuple[int, ...]:
    """Cyclic class (BFS level mod period) of each vertex."""
    period = graph_period(g)
    lvl = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for u in frontier:
            for w in g.successors(u):
                if w not in lvl:
                    lvl[w] = lvl[u] + 1
                    nxt.append(w)
        frontier = nxt
    return tuple(lvl[v] % period for v in range(g.vertex_count))


def path_length_cap(g: SftGraph) -> int:
    """Safe search cap: beyond it, every class-compatible length is realizable."""
    n = g.vertex_count
    return graph_period(g) * ((n - 1) * (n - 1) + 2) + n + 2


def find_exact_path(g: SftGraph, a: int, b: int, length: int) -> list[int] | None:
    """Lexicographically smallest path from a to b with exactly ``length`` edges."""
    if length == 0:
        return [a] if a == b else None
    # backward layers: blayer[j] = vertices that reach b in exactly j edges
    blayer = [set() for _ in range(length + 1)]
    blayer[0].add(b)
    preds = [tuple(u for u in range(g.vertex_count) if g.is_edge(u, v)) for v in range(g.vertex_count)]
    for j in range(1, length + 1):
        for v in blayer[j - 1]:
            blayer[j].update(preds[v])
    if a not in blayer[length]:
        return None
    path = [a]
    v = a
    for j in range(length, 0, -1):
        v = min(w for w in g.successors(v) if w in blayer[j - 1])
        path.append(v)
    return path


def find_connecting_path(g: SftGraph, a: int, b: int, *, min_length: int = 0,
                         residue: int | None = None) -> list[int]:
    """Shortest path a -> b with length >= min_length, optionally constrained
    to a residue class of the graph period; lexicographic tie-break.

    Raises SpecError when no such path exists within the structural cap (only
    possible when the class constraint is unsatisfiable).
    """
    period = graph_period(g)
    cap = path_length_cap(g) + min_length
    reach = {a}
    length = 0
    while length <= cap:
        ok_len = length >= min_length and (residue is None or length % period == residue % period)
        if ok_len and b in reach:
            return find_exact_path(g, a, b, length)
        reach = {w for v in reach for w in g.successors(v)}
        length += 1
    raise SpecError(f"no admissible connecting path {a}->{b} under the given constraints")


# -- entropy --------------------------------------------------------------------

def _block_radius_bracket(g: SftGraph, nodes: list[int], tol: float,
                          max_iter: int) -> tuple[float, float]:
    """Bracket the spectral radius of one strongly connected block.

    Power iteration runs on (block + identity): the shift makes the matrix
    primitive, and for every positive vector the min/max component ratios of
    one multiplication enclose the shifted radius.
    """
    size = len(nodes)
    rows = [[(1 if g.is_edge(u, v) else 0) + (1 if u == v else 0) for v in nodes]
            for u in nodes]
    vec = [1.0] * size
    lo, hi = 0.0, float("inf")
    for _ in range(max_iter):
        nxt = [sum(rows[i][j] * vec[j] for j in range(size)) for i in range(size)]
        ratios = [nxt[i] / vec[i] for i in range(size)]
        lo = max(lo, min(ratios))
        hi = min(hi, max(ratios))
        if lo > 1.0 and math.log(hi - 1.0) - math.log(lo - 1.0) <= tol:
            return lo - 1.0, hi - 1.0
        top = max(nxt)
        vec = [x / top for x in nxt]
    raise NoConvergence(f"entropy bracket did not close in {max_iter} iterations")


def sft_entropy(g: SftGraph, tol: float = 1e-9, max_iter: int = 500_000) -> float:
    """Topological entropy of the vertex shift: ln of the adjacency spectral
    radius, with absolute error at most tol.

    The radius is the max over strongly connected blocks.  Single-cycle
    blocks have radius exactly 1; the rest are bracketed by power iteration.
    """
    if tol <= 0:
        raise SpecError("tol must be positive")
    lo_all, hi_all = 1.0, 1.0  # every valid graph contains a cycle
    for comp in _graph_sccs(g):
        nodes = list(comp)
        internal = sum(1 for u in nodes for v in nodes if g.is_edge(u, v))
        if internal <= len(nodes):
            continue  # transient singleton or a single cycle (radius 0 or 1)
        lo, hi = _block_radius_bracket(g, nodes, tol, max_iter)
        lo_all = max(lo_all, lo)
        hi_all = max(hi_all, hi)
    # width of [max lo_b, max hi_b] never exceeds the widest block bracket
    return 0.5 * (math.log(lo_all) + math.log(hi_all))
