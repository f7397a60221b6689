"""HTTP + JSON session service for live play.

One session is one game.  The human plays either side:

  - role "player": the human swaps cards, a seeded machine demon answers
    within its rule, and the service reports the new position;
  - role "demon": the machine strategy opens with its move and the human
    answers with any response the session's demon rule allows;
  - role "observer": the whole game is played out machine vs machine at
    creation time and the finished transcript is served.

All truth lives server-side: every view lists the legal moves or responses
for the turn, and every mutation is validated by the core rules before it
is applied.  Requests touching the same session are serialized; a request
that finds its session busy gets a 429 retry signal instead of waiting.
Errors come back as {"code", "message"} JSON.
"""

from __future__ import annotations

import json
import random
import re
import secrets
import threading
from dataclasses import dataclass, field
from typing import Any, Optional, Union

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .checks import random_profile_deal
from .demons import RandomDemon
from .errors import (
    BadCardNumber,
    BadGameNumber,
    CardOutOfRange,
    EmptyStack,
    GameError,
    IllegalMove,
    IllegalResponse,
    ParseError,
    ProfileUnsupported,
    UnknownSession,
    WrongStackCount,
    WrongTurn,
)
from .formats import hand_to_json, move_from_json, move_to_json, response_from_json, response_to_json
from .game import (
    DemonKind,
    DemonResponse,
    GameConfig,
    GameState,
    Hand,
    Outcome,
    PlayerMove,
    apply_demon_response,
    apply_player_move,
    default_budget,
    demon_legal_responses,
    is_winning,
    legal_player_moves,
    max_hand,
    new_game,
    run_game,
)
from .strategies import (
    KonigStrategy,
    ReductionContext,
    VizingStrategy,
    check_profile,
    konig_step,
    vizing_resolve,
)


class Busy(GameError):
    """The session is handling another request; retry shortly."""


AWAITING_PLAYER = "awaiting_player"
AWAITING_DEMON = "awaiting_demon"
WON = "won"
LOST = "lost"


@dataclass
class Session:
    id: str
    initial_state: GameState
    state: GameState
    demon_kind: DemonKind
    human_role: str
    strategy_name: str
    status: str
    budget: int
    rounds: list[tuple[PlayerMove, DemonResponse]] = field(default_factory=list)
    pending_move: Optional[PlayerMove] = None
    winning_hand: Optional[Hand] = None
    machine_demon: Optional[RandomDemon] = None
    machine_player: Optional[Union[KonigStrategy, VizingStrategy]] = None
    lock: threading.Lock = field(default_factory=threading.Lock)


_HTTP_STATUS = {
    UnknownSession: 404,
    WrongTurn: 409,
    Busy: 429,
    IllegalMove: 422,
    IllegalResponse: 422,
    ProfileUnsupported: 422,
    BadGameNumber: 422,
    BadCardNumber: 422,
    WrongStackCount: 422,
    EmptyStack: 422,
    CardOutOfRange: 422,
    ParseError: 400,
}


def _snake(name: str) -> str:
    return re.sub(r"(?<!^)(?=[A-Z])", "_", name).lower()


def _http_status(exc: GameError) -> int:
    for klass in type(exc).__mro__:
        if klass in _HTTP_STATUS:
            return _HTTP_STATUS[klass]
    return 400


def _new_strategy(name: str, k: int) -> Union[KonigStrategy, VizingStrategy]:
    return VizingStrategy(k) if name == "vizing" else KonigStrategy()


def _view(sess: Session) -> dict[str, Any]:
    state = sess.state
    outcome = {WON: "won", LOST: "budget_exhausted"}.get(sess.status)
    doc: dict[str, Any] = {
        "id": sess.id,
        "status": sess.status,
        "config": {"k": state.k, "m": state.m},
        "stacks": [sorted(state.stack(i)) for i in range(1, state.k + 1)],
        "reserve": [state.reserve_counts()[c] for c in range(1, state.m + 1)],
        "human_role": sess.human_role,
        "demon": sess.demon_kind.value,
        "strategy": sess.strategy_name,
        "moves_played": len(sess.rounds),
        "budget": sess.budget,
        "pending_move": move_to_json(sess.pending_move) if sess.pending_move else None,
        "legal_moves": [],
        "legal_responses": [],
        "winning_hand": hand_to_json(sess.winning_hand),
        "transcript": {
            "config": {"k": sess.initial_state.k, "m": sess.initial_state.m},
            "initial_stacks": [sorted(s) for s in sess.initial_state.stacks],
            "rounds": [
                {"player": move_to_json(mv), "demon": response_to_json(resp)}
                for mv, resp in sess.rounds
            ],
            "outcome": outcome,
        },
    }
    if sess.status == AWAITING_PLAYER and sess.human_role == "player":
        doc["legal_moves"] = [move_to_json(mv) for mv in legal_player_moves(state)]
    if sess.status == AWAITING_DEMON and sess.pending_move is not None:
        doc["legal_responses"] = [
            response_to_json(r)
            for r in demon_legal_responses(state, sess.pending_move, sess.demon_kind)
        ]
    return doc


def _finish_if_over(sess: Session) -> bool:
    """Start-of-turn bookkeeping; True when the session just ended."""
    if is_winning(sess.state):
        sess.status = WON
        sess.winning_hand = _claim_hand(sess)
        return True
    if sess.human_role != "player" and len(sess.rounds) >= sess.budget:
        sess.status = LOST
        return True
    return False


def _claim_hand(sess: Session) -> Hand:
    player = sess.machine_player
    if isinstance(player, VizingStrategy):
        return player.final_hand(sess.state)
    return max_hand(sess.state)


def _machine_move(sess: Session) -> None:
    """Strategy moves; session goes back to awaiting the human demon."""
    mv = sess.machine_player.propose(sess.state)
    assert mv is not None, "strategy proposed nothing on a live position"
    sess.state = apply_player_move(sess.state, mv)
    sess.pending_move = mv
    sess.status = AWAITING_DEMON


def create_app(
    transcript_log: Optional[str] = None, ui_dir: Optional[str] = None
) -> FastAPI:
    app = FastAPI(title="demon-solitaire", docs_url=None, redoc_url=None)
    sessions: dict[str, Session] = {}
    app.state.sessions = sessions  # introspection handle
    store_lock = threading.Lock()
    log_lock = threading.Lock()

    def log_finished(sess: Session) -> None:
        if transcript_log is None:
            return
        record = {
            "session": sess.id,
            "view": _view(sess),
        }
        with log_lock:
            with open(transcript_log, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(record) + "\n")

    @app.exception_handler(GameError)
    async def on_game_error(request: Request, exc: GameError) -> JSONResponse:
        return JSONResponse(
            status_code=_http_status(exc),
            content={"code": _snake(type(exc).__name__), "message": str(exc)},
        )

    def lookup(session_id: str) -> Session:
        with store_lock:
            sess = sessions.get(session_id)
        if sess is None:
            raise UnknownSession(f"no session {session_id!r}")
        return sess

    class hold:
        """Non-blocking per-session critical section."""

        def __init__(self, sess: Session):
            self.sess = sess

        def __enter__(self) -> Session:
            if not self.sess.lock.acquire(blocking=False):
                raise Busy(f"session {self.sess.id} is handling another request")
            return self.sess

        def __exit__(self, *exc_info) -> None:
            self.sess.lock.release()

    async def body_of(request: Request) -> Any:
        raw = await request.body()
        if not raw:
            return {}
        try:
            return json.loads(raw)
        except json.JSONDecodeError:
            raise ParseError("request body is not valid JSON") from None

    @app.get("/healthz")
    async def healthz() -> dict[str, str]:
        return {"status": "ok"}

    @app.post("/sessions", status_code=201)
    async def create_session(request: Request) -> JSONResponse:
        body = await body_of(request)
        if not isinstance(body, dict):
            raise ParseError("expected a JSON object")

        demon_name = body.get("demon", "konig")
        if demon_name not in {d.value for d in DemonKind}:
            raise ParseError(f"unknown demon {demon_name!r}")
        demon_kind = DemonKind(demon_name)

        human_role = body.get("human_role", "player")
        if human_role not in ("player", "demon", "observer"):
            raise ParseError(f"unknown human_role {human_role!r}")

        strategy_name = body.get("strategy", "auto")
        if strategy_name not in ("auto", "konig", "vizing"):
            raise ParseError(f"unknown strategy {strategy_name!r}")
        if strategy_name == "auto":
            strategy_name = "vizing" if demon_kind is DemonKind.VIZING else "konig"

        try:
            seed = int(body.get("seed", 0))
            if "stacks" in body:
                if "k" not in body or "m" not in body:
                    raise ParseError("explicit stacks need k and m alongside")
                config = GameConfig(k=int(body["k"]), m=int(body["m"]))
                state = new_game(config, body["stacks"])
            elif "seed" in body:
                rng = random.Random(seed)
                k = int(body.get("k", rng.randint(2, 6)))
                m = int(body.get("m", rng.randint(max(k, 2), 8)))
                state = random_profile_deal(rng, k, m)
            else:
                raise ParseError("body needs either stacks (with k, m) or a seed")
        except (TypeError, ValueError) as exc:
            raise ParseError(f"malformed session config: {exc}") from None

        if strategy_name == "vizing":
            check_profile(state)

        try:
            budget = int(body.get("budget", default_budget(state.k)))
        except (TypeError, ValueError):
            raise ParseError("budget must be an integer") from None
        sess = Session(
            id=secrets.token_hex(8),
            initial_state=state,
            state=state,
            demon_kind=demon_kind,
            human_role=human_role,
            strategy_name=strategy_name,
            status=AWAITING_PLAYER,
            budget=budget,
        )

        if human_role == "player":
            sess.machine_demon = RandomDemon(demon_kind, seed=seed)
            if is_winning(state):
                sess.status = WON
                sess.winning_hand = max_hand(state)
        elif human_role == "demon":
            sess.machine_player = _new_strategy(strategy_name, state.k)
            if not _finish_if_over(sess):
                _machine_move(sess)
        else:
            player = _new_strategy(strategy_name, state.k)
            sess.machine_player = player
            demon = RandomDemon(demon_kind, seed=seed)
            transcript = run_game(state, player, demon, move_budget=budget)
            sess.state = transcript.final_state
            sess.rounds = list(transcript.rounds)
            sess.status = WON if transcript.outcome is Outcome.WON else LOST
            sess.winning_hand = transcript.winning_hand

        with store_lock:
            sessions[sess.id] = sess
        if sess.status in (WON, LOST):
            log_finished(sess)
        return JSONResponse(status_code=201, content=_view(sess))

    @app.get("/sessions/{session_id}")
    async def get_state(session_id: str) -> dict[str, Any]:
        return _view(lookup(session_id))

    @app.post("/sessions/{session_id}/move")
    async def post_player_move(session_id: str, request: Request) -> dict[str, Any]:
        mv = move_from_json(await body_of(request))
        with hold(lookup(session_id)) as sess:
            if sess.human_role != "player":
                raise WrongTurn("this session's human plays the demon")
            if sess.status != AWAITING_PLAYER:
                raise WrongTurn(f"session is {sess.status}, not awaiting a move")
            after_move = apply_player_move(sess.state, mv)
            resp = sess.machine_demon.respond(after_move, mv)
            legal = demon_legal_responses(after_move, mv, sess.demon_kind)
            assert resp in legal, "machine demon left its rule"
            sess.state = apply_demon_response(after_move, resp)
            sess.rounds.append((mv, resp))
            if _finish_if_over(sess):
                log_finished(sess)
            return _view(sess)

    @app.post("/sessions/{session_id}/response")
    async def post_demon_response(session_id: str, request: Request) -> dict[str, Any]:
        resp = response_from_json(await body_of(request))
        with hold(lookup(session_id)) as sess:
            if sess.human_role != "demon":
                raise WrongTurn("this session's human plays the cards")
            if sess.status != AWAITING_DEMON or sess.pending_move is None:
                raise WrongTurn(f"session is {sess.status}, not awaiting a response")
            legal = demon_legal_responses(sess.state, sess.pending_move, sess.demon_kind)
            if resp not in legal:
                raise IllegalResponse(
                    f"{response_to_json(resp)} is not a legal "
                    f"{sess.demon_kind.value} response here"
                )
            sess.state = apply_demon_response(sess.state, resp)
            sess.rounds.append((sess.pending_move, resp))
            sess.pending_move = None
            if _finish_if_over(sess):
                log_finished(sess)
            else:
                _machine_move(sess)
            return _view(sess)

    @app.get("/sessions/{session_id}/hint")
    async def hint(session_id: str) -> dict[str, Any]:
        with hold(lookup(session_id)) as sess:
            if sess.human_role != "player":
                raise WrongTurn("hints are for sessions where the human plays")
            if is_winning(sess.state):
                return {"already_winning": True, "move": None}
            if sess.strategy_name == "vizing":
                _, mv = vizing_resolve(sess.state, ReductionContext.fresh(sess.state.k))
            else:
                mv = konig_step(sess.state)
            return {"already_winning": False, "move": move_to_json(mv)}

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
