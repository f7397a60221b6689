"""Winning strategies for the two principled demons.

Against the tight demon (pass, or swap the player's in-card back out of
another stack) the strategy grows a maximum hand by one card per move: play
into a stack the hand skips, bringing in a number the hand lacks.  The demon
can only touch copies of that number on other stacks, and the hand uses it
nowhere else, so the hand never shrinks.

Against the loose demon (which may also copy the player's swap onto another
stack) the strategy never chases a hand directly.  It drives the position to
one where some stacks can be *locked*: a set S of stacks and a choice of
distinct numbers, one per stack of S, that appear nowhere outside S.  Those
picks can never be disturbed, so the game recurses on the remaining stacks.
Between reductions, the move that makes progress swaps a number held by three
or more live stacks for one held by none; whatever the demon answers, the
count of distinct numbers on live stacks has grown.  Counting shows such a
move always exists while fewer than t numbers show on t live stacks, provided
at most one stack is a singleton.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .errors import (
    HallViolation,
    NotReducible,
    PreconditionViolated,
    ProfileUnsupported,
)
from .game import (
    DemonPolicy,
    GameState,
    Hand,
    Outcome,
    Pass,
    PlayerMove,
    Transcript,
    max_hand,
    run_game,
)
from .matching import max_matching


# --- strategy vs the tight demon ---------------------------------------------


def konig_step(state: GameState) -> Optional[PlayerMove]:
    """One hand-growing move, or None when the position is already winning.

    Take a maximum hand.  If it skips stack i and misses number b, then b
    cannot be on stack i (the matching could otherwise grow), so swapping any
    card of stack i for b is legal and the new hand picks b from i.
    Tie-breaks are lexicographic: smallest skipped stack, smallest missing
    number, smallest card to give up.
    """
    hand = max_hand(state)
    if len(hand) == state.k:
        return None
    i = min(i for i in range(1, state.k + 1) if i not in hand)
    used = set(hand.values())
    b = min(c for c in range(1, state.m + 1) if c not in used)
    a = min(state.stack(i))
    return PlayerMove(stack=i, out_card=a, in_card=b)


class KonigStrategy:
    """PlayerPolicy wrapper around konig_step."""

    def propose(self, state: GameState) -> Optional[PlayerMove]:
        return konig_step(state)


def konig_play(
    state: GameState,
    demon_policy: DemonPolicy,
    move_budget: Optional[int] = None,
    observer=None,
) -> Transcript:
    """Play konig_step to the win against a conforming demon.

    Asserts the growth invariant every round: the move raises the maximum
    hand size by exactly one and no conforming response lowers it.  Wins in
    at most k minus the initial maximum hand size player moves.
    """

    def watch(round_idx, before, mv, after_move, resp, after_resp) -> None:
        h0 = len(max_hand(before))
        h1 = len(max_hand(after_move))
        h2 = len(max_hand(after_resp))
        assert h1 == h0 + 1, f"round {round_idx}: move did not grow the hand"
        assert h2 >= h1, f"round {round_idx}: response shrank the hand"
        if observer is not None:
            observer(round_idx, before, mv, after_move, resp, after_resp)

    initial_hand = len(max_hand(state))
    transcript = run_game(state, KonigStrategy(), demon_policy, move_budget, watch)
    if transcript.outcome is Outcome.WON:
        assert transcript.player_moves <= state.k - initial_hand
    return transcript


# --- reduction machinery vs the loose demon ------------------------------------


@dataclass(frozen=True)
class ReductionContext:
    """Which stacks are still live and which are locked with a chosen card.

    `active` and the keys of `locked` partition {1..k}.  The values of
    `locked` are the forbidden numbers: pairwise distinct, each on its locked
    stack, and absent from every active stack.
    """

    active: frozenset[int]
    locked: dict[int, int]

    @property
    def forbidden(self) -> frozenset[int]:
        return frozenset(self.locked.values())

    @classmethod
    def fresh(cls, k: int) -> "ReductionContext":
        return cls(active=frozenset(range(1, k + 1)), locked={})


@dataclass(frozen=True)
class DeficientSet:
    """Numbers that fit on no more stacks than their own count.

    `stacks` is exactly the set of active stacks holding at least one of
    `numbers`; its size never exceeds the number count and equals it whenever
    two or more numbers are involved.
    """

    numbers: frozenset[int]
    stacks: frozenset[int]


def distinct_on_active(state: GameState, ctx: ReductionContext) -> set[int]:
    """Numbers appearing on at least one live stack."""
    seen: set[int] = set()
    for i in ctx.active:
        seen |= state.stack(i)
    return seen


def increase_step(state: GameState, ctx: ReductionContext) -> PlayerMove:
    """The move that grows the distinct-number count on live stacks.

    With fewer than t numbers on t live stacks and at most one singleton
    among them, the stacks hold at least 2t-1 cards, so some number a sits on
    three or more of them; swap it for the smallest number b that is neither
    forbidden nor on any live stack.  After the player's swap one b-card and
    at least two a-cards remain live; the demon can remove at most one more
    a-card, so both numbers survive whatever it does.
    """
    t = len(ctx.active)
    distinct = distinct_on_active(state, ctx)
    if len(distinct) >= t:
        raise PreconditionViolated(
            f"{len(distinct)} numbers already appear on {t} live stacks"
        )
    spread: dict[int, int] = {}
    for i in ctx.active:
        for c in state.stack(i):
            spread[c] = spread.get(c, 0) + 1
    crowded = sorted(c for c, count in spread.items() if count >= 3)
    if not crowded:
        raise PreconditionViolated(
            "no number appears on three live stacks; "
            "the stack profile must have had two singletons"
        )
    a = crowded[0]
    fresh = (
        c
        for c in range(1, state.m + 1)
        if c not in distinct and c not in ctx.forbidden
    )
    b = next(fresh, None)
    if b is None:
        raise PreconditionViolated("no unused, unforbidden number remains")
    i = min(j for j in ctx.active if a in state.stack(j))
    return PlayerMove(stack=i, out_card=a, in_card=b)


def minimal_deficient_subset(
    state: GameState, ctx: ReductionContext, candidates: set[int]
) -> DeficientSet:
    """Smallest nonempty subset of candidates covering no more stacks than
    its size, ties broken lexicographically on the sorted subset.

    The full candidate set always qualifies (t numbers cannot cover more
    than the t live stacks), so a result exists.
    """
    t = len(ctx.active)
    if len(candidates) != t:
        raise PreconditionViolated(f"expected {t} candidate numbers, got {len(candidates)}")
    holders: dict[int, frozenset[int]] = {}
    for c in sorted(candidates):
        holders[c] = frozenset(i for i in ctx.active if c in state.stack(i))
        if not holders[c]:
            raise PreconditionViolated(f"number {c} is on no live stack")
    for size in range(1, t + 1):
        for combo in combinations(sorted(candidates), size):
            cover = frozenset().union(*(holders[c] for c in combo))
            if len(cover) <= size:
                if size >= 2:
                    assert len(cover) == size, "minimality broken upstream"
                return DeficientSet(numbers=frozenset(combo), stacks=cover)
    raise AssertionError("the full candidate set always qualifies")


def sdr(state: GameState, ds: DeficientSet) -> dict[int, int]:
    """Distinct representatives: one of ds.numbers from each of ds.stacks.

    A perfect matching exists whenever ds came out of the minimal-subset
    search (all smaller subsets cover strictly more stacks than their size,
    which is the marriage condition); failure therefore raises HallViolation
    as an internal bug rather than a user error.
    """
    stacks = sorted(ds.stacks)
    adjacency = [sorted(state.stack(i) & ds.numbers) for i in stacks]
    matching = max_matching(adjacency)
    if len(matching) != len(stacks):
        missing = [stacks[j] for j in range(len(stacks)) if j not in matching]
        raise HallViolation(f"no distinct picks cover stacks {missing}")
    return {stacks[j]: card for j, card in matching.items()}


def _lock(ctx: ReductionContext, picks: dict[int, int]) -> ReductionContext:
    locked = dict(ctx.locked)
    locked.update(picks)
    return ReductionContext(active=ctx.active - picks.keys(), locked=locked)


def reduce(
    ctx: ReductionContext, ds: DeficientSet, picks: dict[int, int]
) -> ReductionContext:
    """Lock the stacks of ds with their picked numbers and shrink the game.

    Raises NotReducible when ds covers every live stack: that position is a
    win and the caller should assemble the hand instead.
    """
    if set(picks) != set(ds.stacks):
        raise PreconditionViolated("picks do not cover exactly the deficient stacks")
    values = list(picks.values())
    if len(set(values)) != len(values) or not set(values) <= set(ds.numbers):
        raise PreconditionViolated("picks are not distinct members of the subset")
    if not ds.stacks <= ctx.active:
        raise PreconditionViolated("deficient stacks are not all live")
    if len(ds.stacks) == len(ctx.active):
        raise NotReducible("the subset covers every live stack; take the win")
    return _lock(ctx, picks)


def vizing_resolve(
    state: GameState, ctx: ReductionContext
) -> tuple[ReductionContext, Optional[PlayerMove]]:
    """Apply every available reduction, then produce the next move.

    Returns (context, move) when an increase move is needed, or
    (context, None) with every stack locked when the position is winning;
    the locked map is then a full winning hand.
    """
    while ctx.active:
        t = len(ctx.active)
        distinct = distinct_on_active(state, ctx)
        if len(distinct) < t:
            return ctx, increase_step(state, ctx)
        candidates = set(sorted(distinct)[:t])
        ds = minimal_deficient_subset(state, ctx, candidates)
        picks = sdr(state, ds)
        if len(ds.stacks) == t:
            ctx = _lock(ctx, picks)
            break
        ctx = reduce(ctx, ds, picks)
        for f in ctx.forbidden:
            for i in ctx.active:
                assert f not in state.stack(i), "locked number still live"
    return ctx, None


class VizingStrategy:
    """PlayerPolicy that carries the reduction context between rounds."""

    def __init__(self, k: int):
        self.ctx = ReductionContext.fresh(k)
        self.last_ctx = self.ctx

    def propose(self, state: GameState) -> Optional[PlayerMove]:
        self.ctx, mv = vizing_resolve(state, self.ctx)
        self.last_ctx = self.ctx
        return mv

    def final_hand(self, state: GameState) -> Hand:
        ctx, mv = vizing_resolve(state, self.ctx)
        if mv is not None:
            raise PreconditionViolated("position is not winning yet")
        return dict(ctx.locked)


def check_profile(state: GameState) -> None:
    """The loose-demon strategy needs at most one singleton stack."""
    singletons = sum(1 for n in state.profile() if n == 1)
    if singletons > 1:
        raise ProfileUnsupported(
            f"{singletons} singleton stacks in profile {state.profile()}; "
            "at most one is supported"
        )


def vizing_play(
    state: GameState,
    demon_policy: DemonPolicy,
    move_budget: Optional[int] = None,
    observer=None,
) -> Transcript:
    """Play the reduction strategy to the win against a conforming demon.

    Every round asserts: the distinct-number count on live stacks grew, no
    forbidden number was moved or reappeared on a live stack, and all locked
    picks are still in place.  Wins within k*k + k player moves.
    """
    check_profile(state)
    if move_budget is None:
        move_budget = state.k * state.k + state.k
    strategy = VizingStrategy(state.k)

    def watch(round_idx, before, mv, after_move, resp, after_resp) -> None:
        ctx = strategy.last_ctx
        forbidden = ctx.forbidden
        assert mv.out_card not in forbidden and mv.in_card not in forbidden, (
            f"round {round_idx}: strategy touched a locked number"
        )
        if not isinstance(resp, Pass):
            assert resp.out_card not in forbidden and resp.in_card not in forbidden, (
                f"round {round_idx}: demon touched a locked number"
            )
        d0 = len(distinct_on_active(before, ctx))
        d1 = len(distinct_on_active(after_resp, ctx))
        assert d1 >= d0 + 1, f"round {round_idx}: distinct count did not grow"
        for i, card in ctx.locked.items():
            assert card in after_resp.stack(i), (
                f"round {round_idx}: locked pick {card} left stack {i}"
            )
        for f in forbidden:
            for i in ctx.active:
                assert f not in after_resp.stack(i), (
                    f"round {round_idx}: forbidden {f} appeared on live stack {i}"
                )
        if observer is not None:
            observer(round_idx, before, mv, after_move, resp, after_resp)

    transcript = run_game(state, strategy, demon_policy, move_budget, watch)
    if transcript.outcome is Outcome.WON:
        hand = strategy.final_hand(transcript.final_state)
        assert len(hand) == state.k
        assert len(set(hand.values())) == state.k
        for i, card in hand.items():
            assert card in transcript.final_state.stack(i)
        transcript = dataclasses.replace(transcript, winning_hand=hand)
    return transcript
