"""Edge coloring driven by the solitaire engine.

The bridge works vertex by vertex.  Suppose every edge of the graph is
properly colored except those touching one vertex v.  Each neighbor x of v
then has a set of *free* colors, the ones missing from x's colored edges;
treat that set as a card stack.  Coloring v's edges amounts to winning the
game on those stacks: a winning hand picks a distinct free color for each
neighbor, and painting edge v-x with stack x's pick keeps the coloring
proper.

The player's swap (stack x: color a out, color b in) is realized on the
graph by walking the unique maximal path from x whose edges alternate
colors b, a, b, ... and exchanging the two colors along it.  Vertex x ends
up with an a-colored edge and no b-colored edge, exactly the requested
stack change.  Interior vertices of the path keep both colors, so their
stacks never move.  The far endpoint y trades one color for the other; when
y happens to be another neighbor of v, its stack changes in one of the two
shapes the principled demons are allowed, so the graph itself plays the
demon:

  - path of even length: y loses color b and gains a (the tight demon's
    only swap shape);
  - path of odd length: y loses a and gains b (the extra shape the loose
    demon enjoys).

On a bipartite graph with m = max degree, a path from x to another
neighbor of v has even length (both endpoints adjacent to v rules out odd),
so the tight-demon strategy suffices and max-degree-many colors are enough.
In general m = max degree + 1 gives every stack at least two cards, the
profile the loose-demon strategy needs, and it wins with one extra color.

Coloring a whole graph peels vertices off one at a time, then re-inserts
them in reverse order, winning one game per vertex that returns with
uncolored edges.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

from .errors import DemonNonconformance, NotBipartite, ParseError, PreconditionViolated, TooLarge
from .game import (
    DemonKind,
    DemonResponse,
    DemonSwap,
    GameConfig,
    GameState,
    Outcome,
    PASS,
    PlayerMove,
    demon_legal_responses,
)
from .graphs import Edge, Graph, bipartition, edge, induced_subgraph
from .strategies import konig_play, vizing_play


@dataclass(frozen=True)
class EdgeColoring:
    """Partial proper edge coloring with palette 1..m."""

    m: int
    assignment: dict[Edge, int]

    def color_of(self, u: int, v: int) -> Optional[int]:
        return self.assignment.get(edge(u, v))


@dataclass(frozen=True)
class KempeSwapReport:
    """What one color exchange did: the path walked, where it stopped, and
    the stack change it forced at the far end (None until a caller relates
    the endpoint to a neighborhood)."""

    path: tuple[Edge, ...]
    endpoint: int
    induced: Optional[DemonResponse] = None


class ColoringMode(Enum):
    KONIG = "konig"
    VIZING = "vizing"


def free_colors(c: EdgeColoring, x: int, g: Graph) -> set[int]:
    """Colors of 1..m not used on any colored edge at x."""
    used = set()
    for y in g.neighbors(x):
        col = c.color_of(x, y)
        if col is not None:
            used.add(col)
    return set(range(1, c.m + 1)) - used


def kempe_swap(
    g: Graph, c: EdgeColoring, x: int, a: int, b: int
) -> tuple[EdgeColoring, KempeSwapReport]:
    """Exchange colors a and b along the maximal alternating path from x.

    Requires a free at x and b not free (so the path starts with x's unique
    b-colored edge), and a != b.  Each vertex carries at most one edge of
    each color, so the walk never branches and never revisits a vertex;
    properness survives because only the path's own edges trade colors.
    """
    if a == b:
        raise PreconditionViolated("swap colors must differ")
    free_x = free_colors(c, x, g)
    if a not in free_x:
        raise PreconditionViolated(f"color {a} is not free at vertex {x}")
    if b in free_x:
        raise PreconditionViolated(f"color {b} is free at vertex {x}; no path to walk")

    by_color: dict[int, dict[int, int]] = {a: {}, b: {}}
    for (u, v), col in c.assignment.items():
        if col in by_color:
            by_color[col][u] = v
            by_color[col][v] = u

    path: list[Edge] = []
    cur = x
    want = b
    while cur in by_color[want]:
        nxt = by_color[want][cur]
        path.append(edge(cur, nxt))
        # leave via the one want-colored edge, then look for the other color
        del by_color[want][cur]
        del by_color[want][nxt]
        cur = nxt
        want = a if want == b else b

    assignment = dict(c.assignment)
    for e in path:
        assignment[e] = a if assignment[e] == b else b
    report = KempeSwapReport(path=tuple(path), endpoint=cur)
    return EdgeColoring(m=c.m, assignment=assignment), report


class GraphDemon:
    """Demon policy computed from the graph during extend_at_vertex.

    Holds the evolving coloring; respond() performs the player's swap on the
    graph and reports the far endpoint's stack change (or a pass) as the
    demon's reply, refusing with DemonNonconformance if that reply would
    fall outside the mode's rule.
    """

    def __init__(self, g: Graph, c: EdgeColoring, v: int, neighbors: list[int], mode: ColoringMode):
        self.g = g
        self.coloring = c
        self.v = v
        self.neighbors = neighbors
        self.mode = mode
        self.kind = DemonKind.KONIG if mode is ColoringMode.KONIG else DemonKind.VIZING
        self.reports: list[KempeSwapReport] = []

    def respond(self, state_after_move: GameState, mv: PlayerMove) -> DemonResponse:
        x = self.neighbors[mv.stack - 1]
        a, b = mv.out_card, mv.in_card
        self.coloring, report = kempe_swap(self.g, self.coloring, x, a, b)
        assert report.endpoint != x, "alternating path returned to its start"

        induced: DemonResponse = PASS
        if report.endpoint in self.neighbors and report.endpoint != self.v:
            j = self.neighbors.index(report.endpoint) + 1
            if len(report.path) % 2 == 0:
                # even: y's a-edge turned b, so y's stack swaps b out, a in
                induced = DemonSwap(stack=j, out_card=b, in_card=a)
            else:
                # odd: y's b-edge turned a, so y's stack swaps a out, b in
                induced = DemonSwap(stack=j, out_card=a, in_card=b)
                if self.mode is ColoringMode.KONIG:
                    raise DemonNonconformance(
                        f"odd alternating path reached neighbor {report.endpoint} "
                        "in tight mode; the graph cannot have been bipartite"
                    )
        if induced not in demon_legal_responses(state_after_move, mv, self.kind):
            raise DemonNonconformance(
                f"graph-induced response {induced} is outside the {self.kind.value} rule"
            )
        self.reports.append(replace(report, induced=induced))
        return induced


def extend_at_vertex(
    g: Graph, c: EdgeColoring, v: int, mode: ColoringMode
) -> EdgeColoring:
    """Color v's edges by winning one game on its neighbors' free sets.

    Requires every edge not touching v to be colored and every edge at v to
    be uncolored.  The per-round observer checks that the game stacks and
    the neighbors' free sets stay identical, which is the whole reduction.
    """
    neighbors = sorted(g.neighbors(v))
    k = len(neighbors)
    if k == 0:
        return c
    for e in g.sorted_edges():
        colored = e in c.assignment
        if v in e:
            if colored:
                raise PreconditionViolated(f"edge {e} at vertex {v} is already colored")
        elif not colored:
            raise PreconditionViolated(f"edge {e} away from vertex {v} is uncolored")

    stacks = tuple(frozenset(free_colors(c, x, g)) for x in neighbors)
    state = GameState(config=GameConfig(k=k, m=c.m), stacks=stacks)
    demon = GraphDemon(g, c, v, neighbors, mode)

    def observer(round_idx, before, mv, after_move, resp, after_resp) -> None:
        for idx, x in enumerate(neighbors):
            want = frozenset(free_colors(demon.coloring, x, g))
            got = after_resp.stack(idx + 1)
            assert got == want, (
                f"round {round_idx}: stack {idx + 1} desynced from vertex {x}: "
                f"{sorted(got)} vs free {sorted(want)}"
            )

    if mode is ColoringMode.KONIG:
        transcript = konig_play(state, demon, observer=observer)
    else:
        transcript = vizing_play(state, demon, observer=observer)
    assert transcript.outcome is Outcome.WON, "strategy failed to win its game"
    assert transcript.winning_hand is not None

    assignment = dict(demon.coloring.assignment)
    for i, card in transcript.winning_hand.items():
        assignment[edge(v, neighbors[i - 1])] = card
    return EdgeColoring(m=c.m, assignment=assignment)


def edge_color(g: Graph, mode: ColoringMode) -> EdgeColoring:
    """Properly color all edges: max degree colors for bipartite graphs in
    tight mode, max degree + 1 in loose mode for any graph.

    Vertices are peeled lowest-index first, then re-inserted in reverse;
    each re-insertion wins one game to color the new vertex's edges.
    """
    delta = g.max_degree()
    if mode is ColoringMode.KONIG:
        if bipartition(g) is None:
            raise NotBipartite("tight mode needs a bipartite graph")
        m = delta
    else:
        m = delta + 1 if delta else 0
    c = EdgeColoring(m=m, assignment={})
    for v in reversed(range(g.n)):
        current = induced_subgraph(g, set(range(v, g.n)))
        if current.degree(v):
            c = extend_at_vertex(current, c, v, mode)
    return c


def verify_coloring(g: Graph, c: EdgeColoring, m: int) -> tuple[bool, Optional[str]]:
    """Full properness check; returns (ok, first violation found)."""
    for e in c.assignment:
        if e not in g.edges:
            return False, f"colored pair {e[0]} {e[1]} is not an edge"
    for u, v in g.sorted_edges():
        col = c.color_of(u, v)
        if col is None:
            return False, f"edge {u} {v} is uncolored"
        if not 1 <= col <= m:
            return False, f"edge {u} {v} has color {col} outside 1..{m}"
    for w in range(g.n):
        seen: dict[int, Edge] = {}
        for y in sorted(g.neighbors(w)):
            col = c.color_of(w, y)
            if col in seen:
                return False, f"vertex {w} has two edges colored {col}"
            seen[col] = edge(w, y)
    return True, None


def brute_force_color(g: Graph, m: int) -> Optional[EdgeColoring]:
    """Backtracking oracle; None means no proper m-coloring exists.

    Edges are ordered so each one touches the already-assigned region when
    possible, which keeps the search shallow on every graph small enough to
    pass the 20-edge guard.
    """
    if len(g.edges) > 20:
        raise TooLarge(f"{len(g.edges)} edges is past the brute-force guard of 20")
    remaining = g.sorted_edges()
    ordered: list[Edge] = []
    touched: set[int] = set()
    while remaining:
        pick = next((e for e in remaining if e[0] in touched or e[1] in touched), remaining[0])
        remaining.remove(pick)
        ordered.append(pick)
        touched.update(pick)

    used: list[set[int]] = [set() for _ in range(g.n)]
    assignment: dict[Edge, int] = {}

    def place(idx: int) -> bool:
        if idx == len(ordered):
            return True
        u, v = ordered[idx]
        for col in range(1, m + 1):
            if col in used[u] or col in used[v]:
                continue
            used[u].add(col)
            used[v].add(col)
            assignment[(u, v)] = col
            if place(idx + 1):
                return True
            used[u].discard(col)
            used[v].discard(col)
            del assignment[(u, v)]
        return False

    if not place(0):
        return None
    return EdgeColoring(m=m, assignment=dict(assignment))


def write_coloring(g: Graph, c: EdgeColoring) -> str:
    lines = []
    for u, v in g.sorted_edges():
        col = c.color_of(u, v)
        if col is None:
            raise PreconditionViolated(f"edge {u} {v} is uncolored")
        lines.append(f"{u} {v} {col}\n")
    return "".join(lines)


def parse_coloring(text: str) -> dict[Edge, int]:
    """Read "u v c" lines with the same comment and blank-line rules as
    graph files."""
    assignment: dict[Edge, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"line {lineno}: expected 'u v c', got {raw!r}")
        try:
            u, v, col = (int(p) for p in parts)
        except ValueError:
            raise ParseError(f"line {lineno}: entries must be integers") from None
        if u == v:
            raise ParseError(f"line {lineno}: self-loop at vertex {u}")
        e = edge(u, v)
        if e in assignment:
            raise ParseError(f"line {lineno}: duplicate edge {e[0]} {e[1]}")
        assignment[e] = col
    return assignment
