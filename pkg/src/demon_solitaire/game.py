"""Core rules of the demon solitaire game.

A k-game is played on k nonempty stacks of cards numbered 1..m, each stack
holding at most one card of each number.  The player repeatedly swaps a card
out of a stack for a reserve card of a number that stack lacks; after every
swap a demon answers with a rearrangement drawn from its rule's legal set.
The player wins when, at the start of a turn, one card per stack can be
picked with all k numbers distinct.

States are immutable values: every operation returns a new state.  The
reserve is never stored; it is derived as k minus the number of stacks
holding a given number, which makes card conservation true by construction.
Stack indices are 1-based to match the usual table presentation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Protocol, Union

from .errors import (
    BadCardNumber,
    BadGameNumber,
    CardOutOfRange,
    EmptyStack,
    IllegalMove,
    IllegalResponse,
    NonconformingDemon,
    WrongStackCount,
)
from .matching import max_matching


@dataclass(frozen=True)
class GameConfig:
    """Game number k (stack count) and card number m (card types 1..m)."""

    k: int
    m: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise BadGameNumber(f"game number must be at least 1, got {self.k}")
        if self.m < self.k:
            raise BadCardNumber(
                f"card number must be at least the game number {self.k}, got {self.m}"
            )


@dataclass(frozen=True)
class GameState:
    """k stacks of distinct card numbers; everything else is derived."""

    config: GameConfig
    stacks: tuple[frozenset[int], ...]

    @property
    def k(self) -> int:
        return self.config.k

    @property
    def m(self) -> int:
        return self.config.m

    def stack(self, i: int) -> frozenset[int]:
        """Stack i, 1-based."""
        return self.stacks[i - 1]

    def profile(self) -> tuple[int, ...]:
        """Stack sizes (n_1..n_k); invariant under play."""
        return tuple(len(s) for s in self.stacks)

    def reserve_counts(self) -> dict[int, int]:
        """Reserve count for every card number 1..m."""
        return {c: reserve_count(self, c) for c in range(1, self.m + 1)}


@dataclass(frozen=True)
class PlayerMove:
    """Swap the out card for the in card on one stack (all 1-based/1..m)."""

    stack: int
    out_card: int
    in_card: int


class Pass:
    """The demon leaves the stacks alone."""

    _instance: Optional["Pass"] = None

    def __new__(cls) -> "Pass":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Pass"


PASS = Pass()


@dataclass(frozen=True)
class DemonSwap:
    """The demon swaps out_card for in_card on the given stack."""

    stack: int
    out_card: int
    in_card: int


DemonResponse = Union[Pass, DemonSwap]


class DemonKind(enum.Enum):
    LAZY = "lazy"
    CONTRARY = "contrary"
    KONIG = "konig"
    VIZING = "vizing"


class Outcome(enum.Enum):
    WON = "won"
    BUDGET_EXHAUSTED = "budget_exhausted"
    STUCK = "stuck"


# A hand maps stack index -> picked card number; picks are pairwise distinct
# and each pick belongs to its stack.  A hand of size k wins.
Hand = dict[int, int]


@dataclass(frozen=True)
class Transcript:
    """A finished game: the deal, every round, and how it ended.

    Replaying `rounds` from `initial_state` reproduces `final_state`.
    """

    initial_state: GameState
    rounds: tuple[tuple[PlayerMove, DemonResponse], ...]
    outcome: Outcome
    final_state: GameState
    winning_hand: Optional[Hand] = None

    @property
    def player_moves(self) -> int:
        return len(self.rounds)


# --- construction and validation ---------------------------------------------


def new_game(config: GameConfig, stacks: Iterable[Iterable[int]]) -> GameState:
    """Validate a deal and return the initial state.

    Raises WrongStackCount, EmptyStack, or CardOutOfRange when the deal is
    malformed; GameConfig itself rejects bad k or m.
    """
    materialized = [frozenset(s) for s in stacks]
    if len(materialized) != config.k:
        raise WrongStackCount(
            f"expected {config.k} stacks, got {len(materialized)}"
        )
    for idx, stack in enumerate(materialized, start=1):
        if not stack:
            raise EmptyStack(f"stack {idx} is empty")
        for card in stack:
            if not 1 <= card <= config.m:
                raise CardOutOfRange(
                    f"stack {idx} holds card {card}, outside 1..{config.m}"
                )
    return GameState(config=config, stacks=tuple(materialized))


def reserve_count(state: GameState, c: int) -> int:
    """Copies of card c left in the reserve: k minus the stacks holding c."""
    if not 1 <= c <= state.m:
        raise CardOutOfRange(f"card {c} outside 1..{state.m}")
    return state.k - sum(1 for stack in state.stacks if c in stack)


# --- moves --------------------------------------------------------------------


def legal_player_moves(state: GameState) -> list[PlayerMove]:
    """All swaps (i, a out, b in) with a on stack i and b absent from it.

    Reserve availability of b is implied: if b is absent from stack i then at
    most k-1 stacks hold b, so at least one copy sits in the reserve.
    """
    moves = []
    for i in range(1, state.k + 1):
        stack = state.stack(i)
        for a in sorted(stack):
            for b in range(1, state.m + 1):
                if b not in stack:
                    moves.append(PlayerMove(i, a, b))
    return moves


def _check_swap(state: GameState, stack: int, out_card: int, in_card: int) -> None:
    if not 1 <= stack <= state.k:
        raise IllegalMove(f"stack index {stack} outside 1..{state.k}")
    if not 1 <= out_card <= state.m:
        raise IllegalMove(f"out card {out_card} outside 1..{state.m}")
    if not 1 <= in_card <= state.m:
        raise IllegalMove(f"in card {in_card} outside 1..{state.m}")
    if out_card == in_card:
        raise IllegalMove(f"out and in card are both {out_card}")
    if out_card not in state.stack(stack):
        raise IllegalMove(f"out card {out_card} is not on stack {stack}")
    if in_card in state.stack(stack):
        raise IllegalMove(f"in card {in_card} is already on stack {stack}")


def _swap(state: GameState, stack: int, out_card: int, in_card: int) -> GameState:
    assert reserve_count(state, in_card) >= 1, "reserve exhausted; invariant broken"
    new_stacks = list(state.stacks)
    new_stacks[stack - 1] = (state.stack(stack) - {out_card}) | {in_card}
    return GameState(config=state.config, stacks=tuple(new_stacks))


def apply_player_move(state: GameState, mv: PlayerMove) -> GameState:
    """Apply a legal player swap; raises IllegalMove naming the broken clause."""
    _check_swap(state, mv.stack, mv.out_card, mv.in_card)
    return _swap(state, mv.stack, mv.out_card, mv.in_card)


def demon_legal_responses(
    state_after: GameState, mv: PlayerMove, kind: DemonKind
) -> list[DemonResponse]:
    """Legal responses to mv for the given demon rule, on the post-move state.

    Lazy may only pass.  Contrary must undo the swap.  The tight demon passes
    or, on another stack holding the in card but not the out card, swaps them
    back.  The loose demon may additionally copy the player's swap onto
    another stack holding the out card but not the in card.
    """
    i, a, b = mv.stack, mv.out_card, mv.in_card
    if kind is DemonKind.LAZY:
        return [PASS]
    if kind is DemonKind.CONTRARY:
        return [DemonSwap(i, out_card=b, in_card=a)]
    responses: list[DemonResponse] = [PASS]
    swaps = []
    for j in range(1, state_after.k + 1):
        if j == i:
            continue
        stack = state_after.stack(j)
        if b in stack and a not in stack:
            swaps.append(DemonSwap(j, out_card=b, in_card=a))
        if kind is DemonKind.VIZING and a in stack and b not in stack:
            swaps.append(DemonSwap(j, out_card=a, in_card=b))
    swaps.sort(key=lambda s: (s.stack, s.out_card, s.in_card))
    responses.extend(swaps)
    return responses


def apply_demon_response(state: GameState, resp: DemonResponse) -> GameState:
    """Apply a demon response; swap legality is re-checked, rule conformance
    is the round loop's job (it knows the move and the demon kind)."""
    if isinstance(resp, Pass):
        return state
    try:
        _check_swap(state, resp.stack, resp.out_card, resp.in_card)
    except IllegalMove as exc:
        raise IllegalResponse(str(exc)) from None
    return _swap(state, resp.stack, resp.out_card, resp.in_card)


# --- hands --------------------------------------------------------------------


def max_hand(state: GameState) -> Hand:
    """A maximum hand: one card per stack, numbers pairwise distinct.

    Computed as a maximum bipartite matching between stacks and card numbers
    (stack adjacent to the numbers it holds).  Stacks are matched in index
    order and numbers tried ascending, so the result is deterministic.
    The position is winning iff the hand has k picks.
    """
    matching = max_matching([state.stack(i) for i in range(1, state.k + 1)])
    return {left + 1: card for left, card in sorted(matching.items())}


def is_winning(state: GameState) -> bool:
    return len(max_hand(state)) == state.k


# --- the round loop -------------------------------------------------------------


class PlayerPolicy(Protocol):
    def propose(self, state: GameState) -> Optional[PlayerMove]:
        """Next move for the player, or None when no move is available."""


class DemonPolicy(Protocol):
    kind: DemonKind

    def respond(self, state_after: GameState, mv: PlayerMove) -> DemonResponse:
        """Pick one response to mv from the kind's legal set."""


RoundObserver = Callable[
    [int, GameState, PlayerMove, GameState, DemonResponse, GameState], None
]


def default_budget(k: int) -> int:
    """Round budget covering the loose-demon strategy bound with slack."""
    return k * k + k + 1


def run_game(
    state: GameState,
    player_policy: PlayerPolicy,
    demon_policy: DemonPolicy,
    move_budget: Optional[int] = None,
    observer: Optional[RoundObserver] = None,
) -> Transcript:
    """Alternate player moves and demon responses until the game ends.

    The win is checked at the start of each turn.  Ends with WON when a full
    hand exists, BUDGET_EXHAUSTED after move_budget rounds without one, or
    STUCK when the player policy yields no move.  Raises NonconformingDemon
    (noting the round) if the demon policy leaves its rule's legal set.
    """
    if move_budget is None:
        move_budget = default_budget(state.k)
    initial = state
    profile = state.profile()
    rounds: list[tuple[PlayerMove, DemonResponse]] = []
    outcome = None
    while True:
        if is_winning(state):
            outcome = Outcome.WON
            break
        if len(rounds) >= move_budget:
            outcome = Outcome.BUDGET_EXHAUSTED
            break
        mv = player_policy.propose(state)
        if mv is None:
            outcome = Outcome.STUCK
            break
        round_idx = len(rounds) + 1
        try:
            after_move = apply_player_move(state, mv)
        except IllegalMove as exc:
            raise IllegalMove(f"round {round_idx}: {exc}") from None
        resp = demon_policy.respond(after_move, mv)
        if resp not in demon_legal_responses(after_move, mv, demon_policy.kind):
            raise NonconformingDemon(
                f"round {round_idx}: {resp!r} is not a legal "
                f"{demon_policy.kind.value} response to {mv!r}"
            )
        after_resp = apply_demon_response(after_move, resp)
        assert after_resp.profile() == profile, "stack profile drifted"
        if observer is not None:
            observer(round_idx, state, mv, after_move, resp, after_resp)
        rounds.append((mv, resp))
        state = after_resp
    hand = max_hand(state) if outcome is Outcome.WON else None
    return Transcript(
        initial_state=initial,
        rounds=tuple(rounds),
        outcome=outcome,
        final_state=state,
        winning_hand=hand,
    )


def replay(transcript: Transcript) -> GameState:
    """Re-apply every recorded round to the initial state."""
    state = transcript.initial_state
    for mv, resp in transcript.rounds:
        state = apply_demon_response(apply_player_move(state, mv), resp)
    return state
