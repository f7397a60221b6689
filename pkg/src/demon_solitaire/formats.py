"""Text and JSON formats for games and transcripts.

Game description files: line 1 is "k m"; the next k lines each give one
stack as a space-separated ascending list of card numbers.  '#' starts a
comment, blank lines are skipped.

Transcript JSON:
    {"config": {"k":…, "m":…},
     "initial_stacks": [[…],…],
     "rounds": [{"player": {"i":…,"a":…,"b":…},
                 "demon": "pass" | {"j":…,"out":…,"in":…}}, …],
     "outcome": "won" | "budget_exhausted" | "stuck"}
"""

from __future__ import annotations

from typing import Any, Optional

from .errors import ParseError
from .game import (
    PASS,
    DemonResponse,
    DemonSwap,
    GameConfig,
    GameState,
    Hand,
    Outcome,
    Pass,
    PlayerMove,
    Transcript,
    new_game,
)


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_game(text: str) -> GameState:
    """Parse a game description; raises ParseError with the offending line."""
    numbered = [
        (no, stripped)
        for no, raw in enumerate(text.splitlines(), start=1)
        if (stripped := _strip(raw))
    ]
    if not numbered:
        raise ParseError("line 1: missing 'k m' header")
    header_no, header = numbered[0]
    parts = header.split()
    if len(parts) != 2:
        raise ParseError(f"line {header_no}: expected 'k m', got {header!r}")
    try:
        k, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError(f"line {header_no}: expected integers, got {header!r}") from None
    stack_lines = numbered[1:]
    if len(stack_lines) != k:
        raise ParseError(f"expected {k} stack lines, found {len(stack_lines)}")
    stacks = []
    for no, line in stack_lines:
        try:
            cards = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(f"line {no}: non-integer card in {line!r}") from None
        if cards != sorted(set(cards)):
            raise ParseError(f"line {no}: cards must be strictly ascending")
        stacks.append(cards)
    return new_game(GameConfig(k=k, m=m), stacks)


def write_game(state: GameState) -> str:
    lines = [f"{state.k} {state.m}"]
    for i in range(1, state.k + 1):
        lines.append(" ".join(str(c) for c in sorted(state.stack(i))))
    return "\n".join(lines) + "\n"


def move_to_json(mv: PlayerMove) -> dict[str, int]:
    return {"i": mv.stack, "a": mv.out_card, "b": mv.in_card}


def move_from_json(obj: dict[str, Any]) -> PlayerMove:
    try:
        return PlayerMove(stack=int(obj["i"]), out_card=int(obj["a"]), in_card=int(obj["b"]))
    except (KeyError, TypeError, ValueError):
        raise ParseError(f"expected {{'i','a','b'}} move, got {obj!r}") from None


def response_to_json(resp: DemonResponse) -> Any:
    if isinstance(resp, Pass):
        return "pass"
    return {"j": resp.stack, "out": resp.out_card, "in": resp.in_card}


def response_from_json(obj: Any) -> DemonResponse:
    if obj == "pass" or obj == {"pass": True}:
        return PASS
    try:
        return DemonSwap(
            stack=int(obj["j"]), out_card=int(obj["out"]), in_card=int(obj["in"])
        )
    except (KeyError, TypeError, ValueError):
        raise ParseError(f"expected 'pass' or {{'j','out','in'}} swap, got {obj!r}") from None


def hand_to_json(hand: Optional[Hand]) -> Optional[list[dict[str, int]]]:
    if hand is None:
        return None
    return [{"stack": i, "card": c} for i, c in sorted(hand.items())]


def transcript_to_json(t: Transcript) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "config": {"k": t.initial_state.k, "m": t.initial_state.m},
        "initial_stacks": [sorted(s) for s in t.initial_state.stacks],
        "rounds": [
            {"player": move_to_json(mv), "demon": response_to_json(resp)}
            for mv, resp in t.rounds
        ],
        "outcome": t.outcome.value,
    }
    if t.winning_hand is not None:
        doc["winning_hand"] = hand_to_json(t.winning_hand)
    return doc


def transcript_from_json(doc: dict[str, Any]) -> Transcript:
    from .game import apply_demon_response, apply_player_move  # cycle guard

    config = GameConfig(k=int(doc["config"]["k"]), m=int(doc["config"]["m"]))
    state = new_game(config, doc["initial_stacks"])
    initial = state
    rounds = []
    for entry in doc["rounds"]:
        mv = move_from_json(entry["player"])
        resp = response_from_json(entry["demon"])
        state = apply_demon_response(apply_player_move(state, mv), resp)
        rounds.append((mv, resp))
    hand_doc = doc.get("winning_hand")
    hand = {e["stack"]: e["card"] for e in hand_doc} if hand_doc else None
    return Transcript(
        initial_state=initial,
        rounds=tuple(rounds),
        outcome=Outcome(doc["outcome"]),
        final_state=state,
        winning_hand=hand,
    )
