"""Demon policies: ways of picking one response from a rule's legal set.

A demon *rule* (DemonKind) defines which responses are legal after a player
move; a *policy* chooses among them.  The graph-backed policy used by the
edge-coloring reduction lives in `coloring`, and human choices arrive through
the session service.
"""

from __future__ import annotations

import random

from .game import (
    DemonKind,
    DemonResponse,
    GameState,
    PlayerMove,
    demon_legal_responses,
)


class RandomDemon:
    """Uniformly random legal response, reproducible from the seed."""

    def __init__(self, kind: DemonKind, seed: int = 0):
        self.kind = kind
        self._rng = random.Random(seed)

    def respond(self, state_after: GameState, mv: PlayerMove) -> DemonResponse:
        return self._rng.choice(demon_legal_responses(state_after, mv, self.kind))


class FirstLegalDemon:
    """Always the first legal response (a pass, whenever passing is legal)."""

    def __init__(self, kind: DemonKind):
        self.kind = kind

    def respond(self, state_after: GameState, mv: PlayerMove) -> DemonResponse:
        return demon_legal_responses(state_after, mv, self.kind)[0]


class ScriptedDemon:
    """Replays a fixed response sequence; used for transcript replay and tests."""

    def __init__(self, kind: DemonKind, responses: list[DemonResponse]):
        self.kind = kind
        self._responses = list(responses)
        self._next = 0

    def respond(self, state_after: GameState, mv: PlayerMove) -> DemonResponse:
        resp = self._responses[self._next]
        self._next += 1
        return resp
