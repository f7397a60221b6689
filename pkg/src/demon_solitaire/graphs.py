"""Simple undirected graphs: parsing, bipartiteness, and small factories.

Vertices are 0-based integers.  Edges are stored as (low, high) pairs, so
self-loops and parallel edges are impossible after construction; the parsers
reject them explicitly with line numbers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

from .errors import ParseError

Edge = tuple[int, int]


def edge(u: int, v: int) -> Edge:
    """Canonical (low, high) form of an undirected edge."""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        for u, v in self.edges:
            if u == v:
                raise ParseError(f"self-loop at vertex {u}")
            if not (0 <= u < v < self.n):
                raise ParseError(f"edge ({u}, {v}) is not canonical for n={self.n}")

    @classmethod
    def of(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "Graph":
        return cls(n=n, edges=frozenset(edge(u, v) for u, v in pairs))

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        neighbors: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            neighbors[u].add(v)
            neighbors[v].add(u)
        return tuple(frozenset(s) for s in neighbors)

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def max_degree(self) -> int:
        if self.n == 0:
            return 0
        return max(self.degree(v) for v in range(self.n))

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)


def induced_subgraph(g: Graph, keep: set[int]) -> Graph:
    """Same vertex ids; edges restricted to `keep`.  Dropped vertices simply
    become isolated, which keeps indices stable across peeling."""
    return Graph(n=g.n, edges=frozenset(e for e in g.edges if e[0] in keep and e[1] in keep))


def parse_graph(text: str) -> Graph:
    """Read "u v" edge lines; '#' starts a comment; blank lines are skipped.

    The vertex count is one past the largest id mentioned.
    """
    pairs: list[Edge] = []
    seen: set[Edge] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected two vertex ids, got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: vertex ids must be integers") from None
        if u < 0 or v < 0:
            raise ParseError(f"line {lineno}: vertex ids must be non-negative")
        if u == v:
            raise ParseError(f"line {lineno}: self-loop at vertex {u}")
        e = edge(u, v)
        if e in seen:
            raise ParseError(f"line {lineno}: duplicate edge {e[0]} {e[1]}")
        seen.add(e)
        pairs.append(e)
    n = 1 + max((max(e) for e in pairs), default=-1)
    return Graph(n=n, edges=frozenset(pairs))


def write_graph(g: Graph) -> str:
    return "".join(f"{u} {v}\n" for u, v in g.sorted_edges())


def bipartition(g: Graph) -> Optional[tuple[set[int], set[int]]]:
    """Two-color by BFS per component; None when an odd cycle shows up.

    The lowest unvisited vertex of each component lands in the first group.
    """
    side: dict[int, int] = {}
    for start in range(g.n):
        if start in side:
            continue
        side[start] = 0
        frontier = [start]
        while frontier:
            nxt: list[int] = []
            for u in frontier:
                for w in g.neighbors(u):
                    if w not in side:
                        side[w] = 1 - side[u]
                        nxt.append(w)
                    elif side[w] == side[u]:
                        return None
            frontier = nxt
    left = {v for v, s in side.items() if s == 0}
    right = {v for v, s in side.items() if s == 1}
    return left, right


# --- small named graphs for tests and demos ----------------------------------


def path_graph(n: int) -> Graph:
    return Graph.of(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.of(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.of(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.of(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star_graph(leaves: int) -> Graph:
    return Graph.of(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.of(10, outer + spokes + inner)
