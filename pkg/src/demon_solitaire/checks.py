"""Verification harness: exhaustive demon trees, random campaigns, oracles.

Everything here is shared between the CLI selftest and the acceptance test
suite.  Each suite function raises AssertionError (or a library error) on
the first violation and returns a small summary record otherwise.

The adversarial explorers are the strongest checks: they follow the
deterministic strategy but branch over EVERY legal demon response at every
round, so a passing run certifies the strategy against all demon policies
of that rule on that deal, not just against one sampled opponent.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator

from .coloring import (
    ColoringMode,
    brute_force_color,
    edge_color,
    verify_coloring,
)
from .demons import RandomDemon
from .game import (
    PASS,
    DemonKind,
    GameConfig,
    GameState,
    Outcome,
    PlayerMove,
    apply_demon_response,
    apply_player_move,
    demon_legal_responses,
    is_winning,
    max_hand,
    new_game,
    reserve_count,
    run_game,
)
from .graphs import Graph, complete_graph, petersen_graph
from .strategies import (
    KonigStrategy,
    ReductionContext,
    check_profile,
    distinct_on_active,
    konig_play,
    konig_step,
    vizing_play,
    vizing_resolve,
)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    cases: int
    seconds: float

    def line(self) -> str:
        return f"{self.name}: {self.cases} cases ok in {self.seconds:.1f}s"


def demo_deal() -> GameState:
    """The 3-game used in docs and demos: two bare 2s and one tall stack.

    One swap wins it: brings a 1 onto a bare stack, and the tight demon has
    no stack holding a 1 to counter with, so it must pass.
    """
    return new_game(GameConfig(k=3, m=4), [[2], [2], [2, 3, 4]])


# --- exhaustive deal enumeration ------------------------------------------------


def _nonempty_subsets(m: int) -> list[frozenset[int]]:
    cards = range(1, m + 1)
    return [
        frozenset(combo)
        for size in range(1, m + 1)
        for combo in combinations(cards, size)
    ]


def enumerate_deals(k_max: int, m_max: int) -> Iterator[GameState]:
    """Every valid deal with k <= k_max and m <= m_max, deterministically."""
    for k in range(1, k_max + 1):
        for m in range(k, m_max + 1):
            config = GameConfig(k=k, m=m)
            for stacks in product(_nonempty_subsets(m), repeat=k):
                yield GameState(config=config, stacks=stacks)


# --- adversarial game-tree explorers --------------------------------------------


def explore_konig_tree(state: GameState) -> int:
    """Worst-case move count for the hand-growing strategy over the FULL
    tree of tight-demon responses.  Asserts the per-round growth invariant
    on every branch and that the worst line stays within k - initial hand.
    """
    k = state.k
    cache: dict[tuple, int] = {}

    def rec(s: GameState) -> int:
        if s.stacks in cache:
            return cache[s.stacks]
        h0 = len(max_hand(s))
        if h0 == k:
            cache[s.stacks] = 0
            return 0
        mv = konig_step(s)
        after = apply_player_move(s, mv)
        assert len(max_hand(after)) == h0 + 1, "move failed to grow the hand"
        worst = 0
        for resp in demon_legal_responses(after, mv, DemonKind.KONIG):
            nxt = apply_demon_response(after, resp)
            assert len(max_hand(nxt)) >= h0 + 1, "response shrank the hand"
            worst = max(worst, 1 + rec(nxt))
        assert worst <= k - h0, f"needed {worst} moves from a hand of {h0}"
        cache[s.stacks] = worst
        return worst

    return rec(state)


def explore_vizing_tree(state: GameState) -> int:
    """Worst-case move count for the reduction strategy over the FULL tree
    of loose-demon responses.  Asserts on every branch: the distinct count
    on live stacks grows each round, locked picks survive, forbidden
    numbers stay off live stacks, and the win assembles a full hand.
    """
    check_profile(state)
    budget = state.k * state.k + state.k
    cache: dict[tuple, int] = {}

    def key(s: GameState, ctx: ReductionContext) -> tuple:
        return (s.stacks, ctx.active, tuple(sorted(ctx.locked.items())))

    def rec(s: GameState, ctx: ReductionContext) -> int:
        if is_winning(s):
            done, mv = vizing_resolve(s, ctx)
            assert mv is None, "winning position resolved to a move"
            hand = done.locked
            assert len(hand) == s.k and len(set(hand.values())) == s.k
            for i, card in hand.items():
                assert card in s.stack(i)
            return 0
        node = key(s, ctx)
        if node in cache:
            return cache[node]
        ctx2, mv = vizing_resolve(s, ctx)
        assert mv is not None, "non-winning position resolved to no move"
        after = apply_player_move(s, mv)
        d0 = len(distinct_on_active(s, ctx2))
        worst = 0
        for resp in demon_legal_responses(after, mv, DemonKind.VIZING):
            nxt = apply_demon_response(after, resp)
            assert len(distinct_on_active(nxt, ctx2)) >= d0 + 1, (
                "distinct count failed to grow"
            )
            for i, card in ctx2.locked.items():
                assert card in nxt.stack(i), "locked pick disturbed"
            for f in ctx2.forbidden:
                for i in ctx2.active:
                    assert f not in nxt.stack(i), "forbidden number went live"
            worst = max(worst, 1 + rec(nxt, ctx2))
        assert worst <= budget, f"worst line {worst} exceeds budget {budget}"
        cache[node] = worst
        return worst

    return rec(state, ReductionContext.fresh(state.k))


# --- random generators ----------------------------------------------------------


def random_deal(rng: random.Random, k: int, m: int) -> GameState:
    stacks = []
    for _ in range(k):
        size = rng.randint(1, m)
        stacks.append(frozenset(rng.sample(range(1, m + 1), size)))
    return GameState(config=GameConfig(k=k, m=m), stacks=tuple(stacks))


def random_profile_deal(rng: random.Random, k: int, m: int) -> GameState:
    """Random deal with at most one singleton stack (resampled until so)."""
    while True:
        state = random_deal(rng, k, m)
        if sum(1 for n in state.profile() if n == 1) <= 1:
            return state


def random_graph(rng: random.Random, n_max: int, delta_max: int) -> Graph:
    """Random simple graph with max degree capped at delta_max."""
    n = rng.randint(2, n_max)
    cap = rng.randint(1, delta_max)
    density = rng.uniform(0.05, 0.6)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(pairs)
    degree = [0] * n
    edges = []
    for u, v in pairs:
        if degree[u] < cap and degree[v] < cap and rng.random() < density:
            degree[u] += 1
            degree[v] += 1
            edges.append((u, v))
    return Graph.of(n, edges)


def random_bipartite_graph(rng: random.Random, n_max: int, delta_max: int) -> Graph:
    """Random bipartite graph (split by vertex index) with capped degree."""
    n = rng.randint(2, n_max)
    split = rng.randint(1, n - 1)
    cap = rng.randint(1, delta_max)
    density = rng.uniform(0.05, 0.8)
    pairs = [(u, v) for u in range(split) for v in range(split, n)]
    rng.shuffle(pairs)
    degree = [0] * n
    edges = []
    for u, v in pairs:
        if degree[u] < cap and degree[v] < cap and rng.random() < density:
            degree[u] += 1
            degree[v] += 1
            edges.append((u, v))
    return Graph.of(n, edges)


# --- suites ---------------------------------------------------------------------


def _timed(name: str, cases: int, started: float) -> SuiteResult:
    return SuiteResult(name=name, cases=cases, seconds=time.monotonic() - started)


def suite_konig_exhaustive(k_max: int = 3, m_max: int = 4) -> SuiteResult:
    """Every deal, every tight-demon line: win within k moves."""
    started = time.monotonic()
    cases = 0
    for state in enumerate_deals(k_max, m_max):
        explore_konig_tree(state)
        cases += 1
    return _timed(f"konig-exhaustive(k<={k_max},m<={m_max})", cases, started)


def suite_vizing_exhaustive(k_max: int = 3, m_max: int = 4) -> SuiteResult:
    """Every one-singleton-profile deal, every loose-demon line: win within
    k*k + k moves."""
    started = time.monotonic()
    cases = 0
    for state in enumerate_deals(k_max, m_max):
        if sum(1 for n in state.profile() if n == 1) > 1:
            continue
        explore_vizing_tree(state)
        cases += 1
    return _timed(f"vizing-exhaustive(k<={k_max},m<={m_max})", cases, started)


def suite_contrary_exhaustive(k_max: int = 3, m_max: int = 4) -> SuiteResult:
    """The undoing demon concedes exactly the deals that start out winning."""
    started = time.monotonic()
    cases = 0
    for state in enumerate_deals(k_max, m_max):
        starts_winning = is_winning(state)

        def frozen(round_idx, before, mv, after_move, resp, after_resp) -> None:
            assert after_resp == before, "undo demon failed to restore the deal"

        transcript = run_game(
            state, KonigStrategy(), RandomDemon(DemonKind.CONTRARY, seed=0),
            move_budget=3, observer=frozen,
        )
        assert (transcript.outcome is Outcome.WON) == starts_winning
        if starts_winning:
            assert transcript.player_moves == 0
        cases += 1
    return _timed(f"contrary-exhaustive(k<={k_max},m<={m_max})", cases, started)


def suite_random_games(
    count: int = 1000, k_max: int = 6, m_max: int = 8, seed0: int = 0
) -> SuiteResult:
    """Seeded random deals vs seeded random conforming demons; every game
    must be won within budget with all per-round invariants holding.

    Even seeds play the hand-growing strategy against the tight demon; odd
    seeds play the reduction strategy against the loose demon.  The
    per-round observers in konig_play / vizing_play carry the invariant
    assertions; reserve sanity is asserted here.
    """
    started = time.monotonic()
    for seed in range(seed0, seed0 + count):
        rng = random.Random(seed)
        k = rng.randint(1, k_max)
        m = rng.randint(k, m_max)

        def sane_reserve(round_idx, before, mv, after_move, resp, after_resp) -> None:
            for c in range(1, after_resp.m + 1):
                assert 0 <= reserve_count(after_resp, c) <= after_resp.k

        if seed % 2 == 0:
            state = random_deal(rng, k, m)
            demon = RandomDemon(DemonKind.KONIG, seed=seed)
            transcript = konig_play(state, demon, observer=sane_reserve)
        else:
            state = random_profile_deal(rng, k, m)
            demon = RandomDemon(DemonKind.VIZING, seed=seed)
            transcript = vizing_play(state, demon, observer=sane_reserve)
        assert transcript.outcome is Outcome.WON, f"seed {seed} did not win"
    return _timed(f"random-games(n={count},k<={k_max},m<={m_max})", count, started)


def suite_bipartite_coloring(
    count: int = 500, n_max: int = 40, delta_max: int = 8, seed0: int = 0
) -> SuiteResult:
    """Tight mode on random bipartite graphs: proper with <= max degree."""
    started = time.monotonic()
    for seed in range(seed0, seed0 + count):
        g = random_bipartite_graph(random.Random(seed), n_max, delta_max)
        c = edge_color(g, ColoringMode.KONIG)
        delta = g.max_degree()
        assert c.m == delta
        ok, why = verify_coloring(g, c, delta)
        assert ok, f"seed {seed}: {why}"
        assert len(set(c.assignment.values()) | {0}) - 1 <= delta
    return _timed(f"bipartite-coloring(n={count})", count, started)


def suite_general_coloring(
    count: int = 500, n_max: int = 40, delta_max: int = 8, seed0: int = 0
) -> SuiteResult:
    """Loose mode on arbitrary random graphs: proper with <= max degree + 1.

    Conformance of every graph-induced demon response is asserted inside the
    engine (GraphDemon refuses nonconforming replies), so a completed run
    certifies it."""
    started = time.monotonic()
    for seed in range(seed0, seed0 + count):
        g = random_graph(random.Random(seed), n_max, delta_max)
        c = edge_color(g, ColoringMode.VIZING)
        delta = g.max_degree()
        bound = delta + 1 if delta else 0
        assert c.m == bound
        ok, why = verify_coloring(g, c, bound)
        assert ok, f"seed {seed}: {why}"
    return _timed(f"general-coloring(n={count})", count, started)


def suite_oracle_crosscheck(max_edges: int = 8, base_n: int = 6) -> SuiteResult:
    """Every edge subset of the complete graph on base_n vertices up to
    max_edges edges: the engine's coloring verifies, and the backtracking
    oracle independently confirms max degree + 1 colors always suffice.
    Named instances pin the oracle itself: the triangle needs exactly 3
    colors and the Petersen graph exactly 4.
    """
    started = time.monotonic()
    all_edges = complete_graph(base_n).sorted_edges()
    cases = 0
    for size in range(1, max_edges + 1):
        for combo in combinations(all_edges, size):
            g = Graph.of(base_n, combo)
            delta = g.max_degree()
            c = edge_color(g, ColoringMode.VIZING)
            ok, why = verify_coloring(g, c, delta + 1)
            assert ok, f"{combo}: {why}"
            assert brute_force_color(g, delta + 1) is not None, (
                f"{combo}: oracle denies {delta + 1} colors"
            )
            cases += 1

    triangle = complete_graph(3)
    assert brute_force_color(triangle, 2) is None
    three = brute_force_color(triangle, 3)
    assert three is not None and verify_coloring(triangle, three, 3)[0]

    petersen = petersen_graph()
    assert brute_force_color(petersen, 3) is None
    four = edge_color(petersen, ColoringMode.VIZING)
    ok, why = verify_coloring(petersen, four, 4)
    assert ok, why
    cases += 2
    return _timed(f"oracle-crosscheck(edges<={max_edges})", cases, started)


def suite_demo_deal() -> SuiteResult:
    """The documented one-move win: swapping a 1 onto the first bare stack
    leaves the tight demon with no legal counter but a pass."""
    started = time.monotonic()
    state = demo_deal()
    mv = PlayerMove(stack=1, out_card=2, in_card=1)
    after = apply_player_move(state, mv)
    responses = demon_legal_responses(after, mv, DemonKind.KONIG)
    assert responses == [PASS], f"demon had counters: {responses}"
    final = apply_demon_response(after, PASS)
    assert is_winning(final)
    transcript = konig_play(state, RandomDemon(DemonKind.KONIG, seed=7))
    assert transcript.outcome is Outcome.WON
    assert transcript.player_moves == 1
    return _timed("demo-deal", 1, started)


SMALL = {
    "konig": dict(k_max=3, m_max=3),
    "vizing": dict(k_max=3, m_max=3),
    "contrary": dict(k_max=2, m_max=3),
    "random": dict(count=100, k_max=5, m_max=6),
    "bipartite": dict(count=40, n_max=16, delta_max=5),
    "general": dict(count=40, n_max=16, delta_max=5),
    "oracle": dict(max_edges=4, base_n=5),
}

FULL = {
    "konig": dict(k_max=3, m_max=4),
    "vizing": dict(k_max=3, m_max=4),
    "contrary": dict(k_max=3, m_max=4),
    "random": dict(count=1000, k_max=6, m_max=8),
    "bipartite": dict(count=500, n_max=40, delta_max=8),
    "general": dict(count=500, n_max=40, delta_max=8),
    "oracle": dict(max_edges=8, base_n=6),
}


def run_suites(scale: str = "small", inject_failure: bool = False) -> list[SuiteResult]:
    """Run every suite at the given scale, returning their summaries.

    inject_failure deliberately breaks the last suite so wiring that is
    supposed to detect failures can be exercised end to end.
    """
    params = {"small": SMALL, "full": FULL}[scale]
    results = [
        suite_demo_deal(),
        suite_konig_exhaustive(**params["konig"]),
        suite_vizing_exhaustive(**params["vizing"]),
        suite_contrary_exhaustive(**params["contrary"]),
        suite_random_games(**params["random"]),
        suite_bipartite_coloring(**params["bipartite"]),
        suite_general_coloring(**params["general"]),
        suite_oracle_crosscheck(**params["oracle"]),
    ]
    if inject_failure:
        raise AssertionError("injected failure (requested by flag)")
    return results
