"""Graphs with an online arrival order, colorings, and exact desk-scale oracles.

Vertices are 1..n and the vertex id *is* the arrival position. Color ids are
opaque: plain non-negative integers for regular colors, with the string
namespace "s:<step>" reserved for the pool simulation's special colors.

The exact oracles (chromatic number, fractional chromatic number) are meant
for small instances and refuse loudly above their size limits rather than
silently blowing up.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Hashable, Iterable

from . import kernels, ratlp
from .errors import InputError, ResourceLimitError

ColorId = Hashable
Coloring = dict[int, ColorId]

DEFAULT_EXACT_COLOR_LIMIT = 16
DEFAULT_EXACT_LP_LIMIT = 12


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 1..n, arrival order = id order."""

    n: int
    edges: frozenset[tuple[int, int]]

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        """Neighbor sets indexed by vertex id (index 0 unused)."""
        nbrs: list[set[int]] = [set() for _ in range(self.n + 1)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    def neighbors(self, v: int) -> frozenset[int]:
        if not 1 <= v <= self.n:
            raise InputError(f"vertex {v} out of range 1..{self.n}")
        return self.adjacency[v]

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)


def graph_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Normalized graph: endpoints checked, pairs deduplicated, self-loops rejected."""
    if n < 0:
        raise InputError("vertex count must be nonnegative")
    normalized = set()
    for u, v in edges:
        if not (1 <= u <= n and 1 <= v <= n):
            raise InputError(f"edge ({u},{v}) has an endpoint outside 1..{n}")
        if u == v:
            raise InputError(f"self-loop ({u},{v}) not allowed")
        normalized.add((u, v) if u < v else (v, u))
    return Graph(n=n, edges=frozenset(normalized))


def is_independent_set(graph: Graph, vertices: Iterable[int]) -> bool:
    """True iff no edge of the graph has both endpoints in the set."""
    s = set(vertices)
    for v in s:
        if not 1 <= v <= graph.n:
            raise InputError(f"vertex {v} out of range 1..{graph.n}")
    for v in s:
        if graph.adjacency[v] & s:
            return False
    return True


def validate_coloring(graph: Graph, coloring: Coloring) -> bool:
    """True iff the coloring is total and endpoints of every edge differ."""
    for v in graph.vertices:
        if v not in coloring:
            raise InputError(f"coloring is partial: vertex {v} unassigned")
    return all(coloring[u] != coloring[v] for u, v in graph.edges)


def is_connected(graph: Graph) -> bool:
    if graph.n <= 1:
        return True
    seen = {1}
    stack = [1]
    while stack:
        v = stack.pop()
        for u in graph.adjacency[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == graph.n


# --- online arrival events -------------------------------------------------

@dataclass(frozen=True)
class OnlineVertexEvent:
    """Arrival of a vertex together with its edges to earlier vertices."""

    vertex: int
    back_edges: frozenset[int]


def events_from_graph(graph: Graph) -> list[OnlineVertexEvent]:
    return [
        OnlineVertexEvent(v, frozenset(u for u in graph.adjacency[v] if u < v))
        for v in graph.vertices
    ]


class GreedyColoring:
    """Online First-Fit coloring: the smallest color unused by earlier neighbors."""

    deterministic = True

    def start(self, n: int) -> None:
        self.assigned: Coloring = {}

    def color_vertex(self, vertex: int, back_edges: frozenset[int]) -> int:
        used = {self.assigned[u] for u in back_edges}
        c = 0
        while c in used:
            c += 1
        self.assigned[vertex] = c
        return c


def greedy_online_coloring(graph: Graph) -> Coloring:
    """Color vertices in arrival order with the First-Fit rule."""
    algo = GreedyColoring()
    algo.start(graph.n)
    out: Coloring = {}
    for ev in events_from_graph(graph):
        out[ev.vertex] = algo.color_vertex(ev.vertex, ev.back_edges)
    return out


# --- exact chromatic number ------------------------------------------------

def _adjacency0(graph: Graph) -> list[list[int]]:
    return [sorted(u - 1 for u in graph.adjacency[v]) for v in graph.vertices]


def _greedy_clique_size(adj0: list[list[int]]) -> int:
    n = len(adj0)
    if n == 0:
        return 0
    adjsets = [set(a) for a in adj0]
    clique: list[int] = []
    for v in sorted(range(n), key=lambda w: (-len(adj0[w]), w)):
        if all(u in adjsets[v] for u in clique):
            clique.append(v)
    return len(clique)


def _greedy_assignment(adj0: list[list[int]]) -> list[int]:
    # First-Fit in degree-descending order; only used to seed the search.
    n = len(adj0)
    col = [-1] * n
    for v in sorted(range(n), key=lambda w: (-len(adj0[w]), w)):
        used = {col[u] for u in adj0[v] if col[u] >= 0}
        c = 0
        while c in used:
            c += 1
        col[v] = c
    return col


def chromatic_number_exact(
    graph: Graph, limit: int = DEFAULT_EXACT_COLOR_LIMIT
) -> tuple[int, Coloring]:
    """chi(G) with a witness coloring, by branch and bound.

    Raises ResourceLimitError when n exceeds the exact-search limit.
    """
    if graph.n > limit:
        raise ResourceLimitError(
            f"exact coloring limited to n <= {limit}, got n = {graph.n}"
        )
    if graph.n == 0:
        return 0, {}
    adj0 = _adjacency0(graph)
    chi, colors = kernels.chromatic_bnb(
        adj0, _greedy_clique_size(adj0), _greedy_assignment(adj0)
    )
    return chi, {v + 1: colors[v] for v in range(graph.n)}


# --- fractional chromatic number -------------------------------------------

@dataclass(frozen=True)
class FractionalColoring:
    """Nonnegative rational weights on independent sets covering each vertex."""

    weights: dict[frozenset[int], Fraction]

    @property
    def value(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))


def validate_fractional_coloring(graph: Graph, fc: FractionalColoring) -> bool:
    """Check independence of every weighted set and coverage >= 1, exactly."""
    cover = {v: Fraction(0) for v in graph.vertices}
    for s, w in fc.weights.items():
        if w < 0:
            return False
        if not is_independent_set(graph, s):
            return False
        for v in s:
            cover[v] += w
    return all(cover[v] >= 1 for v in graph.vertices)


def maximal_independent_sets(graph: Graph) -> list[frozenset[int]]:
    """All maximal independent sets (Bron-Kerbosch with pivoting, bitmasks)."""
    n = graph.n
    if n == 0:
        return []
    full = (1 << n) - 1
    # complement adjacency: candidates that can extend an independent set
    comp = []
    for v in range(n):
        nb = 0
        for u in graph.adjacency[v + 1]:
            nb |= 1 << (u - 1)
        comp.append(full & ~nb & ~(1 << v))

    found: list[int] = []

    def bits(mask: int):
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def bk(r: int, p: int, x: int) -> None:
        if p == 0 and x == 0:
            found.append(r)
            return
        pivot = max(bits(p | x), key=lambda w: (p & comp[w]).bit_count())
        cand = p & ~comp[pivot]
        for v in bits(cand):
            vb = 1 << v
            bk(r | vb, p & comp[v], x & comp[v])
            p &= ~vb
            x |= vb

    bk(0, full, 0)
    sets = [frozenset(i + 1 for i in bits(mask)) for mask in found]
    sets.sort(key=lambda s: tuple(sorted(s)))
    return sets


def fractional_chromatic_exact(
    graph: Graph, limit: int = DEFAULT_EXACT_LP_LIMIT
) -> tuple[Fraction, FractionalColoring]:
    """chi_f(G) as an exact rational, with a witness fractional coloring.

    Solves the packing dual (max sum y_v with y(S) <= 1 per maximal
    independent set) by exact simplex and reads the covering weights off
    the optimal reduced costs. Both sides of the resulting strong-duality
    certificate are re-verified before returning, so the value is exact by
    construction, not by trust in the pivoting.
    """
    if graph.n > limit:
        raise ResourceLimitError(
            f"exact fractional coloring limited to n <= {limit}, got n = {graph.n}"
        )
    if graph.n == 0:
        return Fraction(0), FractionalColoring({})
    sets = maximal_independent_sets(graph)
    one = Fraction(1)
    zero = Fraction(0)
    a = [[one if v in s else zero for v in graph.vertices] for s in sets]
    value, y, duals = ratlp.simplex_max([one] * graph.n, a, [one] * len(sets))

    weights = {s: duals[i] for i, s in enumerate(sets) if duals[i] != 0}
    fc = FractionalColoring(weights)
    packing_ok = (
        all(yi >= 0 for yi in y)
        and all(sum((y[v - 1] for v in s), zero) <= 1 for s in sets)
        and sum(y, zero) == value
    )
    if not (packing_ok and fc.value == value and validate_fractional_coloring(graph, fc)):
        raise RuntimeError("fractional chromatic LP certificate failed")
    return value, fc


# --- text format -----------------------------------------------------------
# line 1: "g <n> <m>", then m lines "e <u> <v>" (1-based, arrival order = id
# order); copies instances add a "t <value>" line. "#" starts a comment.

def parse_instance_text(text: str) -> tuple[Graph, int | None]:
    """Parse the graph text format; t is None unless a copies header is present."""
    n = m = None
    t = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "g" and len(parts) == 3:
                if n is not None:
                    raise InputError(f"line {lineno}: duplicate 'g' header")
                n, m = int(parts[1]), int(parts[2])
            elif parts[0] == "t" and len(parts) == 2:
                if t is not None:
                    raise InputError(f"line {lineno}: duplicate 't' header")
                t = int(parts[1])
                if t < 1:
                    raise InputError(f"line {lineno}: t must be >= 1")
            elif parts[0] == "e" and len(parts) == 3:
                edges.append((int(parts[1]), int(parts[2])))
            else:
                raise InputError(f"line {lineno}: unrecognized line {raw!r}")
        except ValueError as exc:
            raise InputError(f"line {lineno}: {exc}") from exc
    if n is None:
        raise InputError("missing 'g <n> <m>' header")
    if m != len(edges):
        raise InputError(f"header declares {m} edges but {len(edges)} found")
    return graph_from_edges(n, edges), t


def parse_graph_text(text: str) -> Graph:
    graph, t = parse_instance_text(text)
    if t is not None:
        raise InputError("unexpected 't' header in a plain graph file")
    return graph


def format_graph_text(graph: Graph, t: int | None = None) -> str:
    lines = [f"g {graph.n} {graph.m}"]
    if t is not None:
        lines.append(f"t {t}")
    lines.extend(f"e {u} {v}" for u, v in sorted(graph.edges))
    return "\n".join(lines) + "\n"


def read_graph_file(path: str | Path) -> Graph:
    return parse_graph_text(Path(path).read_text())


def write_graph_file(graph: Graph, path: str | Path) -> None:
    Path(path).write_text(format_graph_text(graph))
