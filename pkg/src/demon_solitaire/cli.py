"""Command-line front door.

    demon-solitaire color GRAPH [--mode auto|konig|vizing] [--output FILE]
    demon-solitaire verify GRAPH COLORING [M]
    demon-solitaire play GAME_FILE_OR_SEED [--demon KIND] [--strategy NAME]
                        [--seed N] [--budget N] [--output FILE]
    demon-solitaire selftest [small|full] [--inject-failure]
    demon-solitaire serve [--bind HOST:PORT] [--output TRANSCRIPT_LOG]

Exit codes: 0 success or win, 1 domain failure (lost game, improper
coloring, non-bipartite input in tight mode), 2 usage or parse errors.
Everything is deterministic unless --seed says otherwise.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import Optional

from . import checks
from .coloring import ColoringMode, EdgeColoring, edge_color, parse_coloring, verify_coloring, write_coloring
from .errors import GameError, NotBipartite, ParseError, ProfileUnsupported
from .demons import RandomDemon
from .formats import parse_game, transcript_to_json
from .game import DemonKind, GameState, Outcome, default_budget, run_game
from .graphs import bipartition, parse_graph
from .strategies import KonigStrategy, VizingStrategy, check_profile


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _emit(text: str, output: Optional[str]) -> None:
    if output is None or output == "-":
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_color(args: argparse.Namespace) -> int:
    g = parse_graph(_read(args.input))
    mode_name = args.mode
    if mode_name == "auto":
        mode_name = "konig" if bipartition(g) is not None else "vizing"
    mode = ColoringMode(mode_name)
    coloring = edge_color(g, mode)
    delta = g.max_degree()
    bound = delta if mode is ColoringMode.KONIG else (delta + 1 if delta else 0)
    ok, why = verify_coloring(g, coloring, bound)
    assert ok, why
    used = len(set(coloring.assignment.values()))
    _emit(write_coloring(g, coloring), args.output)
    print(
        f"mode={mode.value} edges={len(g.edges)} colors_used={used} bound={bound}",
        file=sys.stderr,
    )
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    g = parse_graph(_read(args.graph))
    assignment = parse_coloring(_read(args.coloring))
    m = args.m if args.m is not None else max(assignment.values(), default=0)
    ok, why = verify_coloring(g, EdgeColoring(m=m, assignment=assignment), m)
    if ok:
        print(f"ok: proper coloring with {len(set(assignment.values()))} colors, m={m}")
        return 0
    print(f"improper: {why}", file=sys.stderr)
    return 1


def _load_deal(token: str) -> GameState:
    """A file path, or an integer seed for a generated deal."""
    if os.path.exists(token):
        return parse_game(_read(token))
    try:
        seed = int(token)
    except ValueError:
        raise ParseError(f"{token!r} is neither a readable file nor a seed") from None
    rng = random.Random(seed)
    k = rng.randint(2, 6)
    m = rng.randint(k, 8)
    return checks.random_profile_deal(rng, k, m)


def cmd_play(args: argparse.Namespace) -> int:
    state = _load_deal(args.game)
    demon_kind = DemonKind(args.demon)
    strategy_name = args.strategy
    if strategy_name == "auto":
        strategy_name = "vizing" if demon_kind is DemonKind.VIZING else "konig"
    if strategy_name == "vizing":
        check_profile(state)
        player = VizingStrategy(state.k)
    else:
        player = KonigStrategy()
    demon = RandomDemon(demon_kind, seed=args.seed)
    budget = args.budget if args.budget is not None else default_budget(state.k)
    transcript = run_game(state, player, demon, move_budget=budget)
    _emit(json.dumps(transcript_to_json(transcript), indent=2) + "\n", args.output)
    print(
        f"outcome={transcript.outcome.value} moves={transcript.player_moves} "
        f"demon={demon_kind.value} strategy={strategy_name}",
        file=sys.stderr,
    )
    return 0 if transcript.outcome is Outcome.WON else 1


def cmd_selftest(args: argparse.Namespace) -> int:
    try:
        results = checks.run_suites(args.scale, inject_failure=args.inject_failure)
    except AssertionError as exc:
        print(f"FAIL: {exc}", file=sys.stderr)
        return 1
    for r in results:
        print(r.line())
    print(f"all {len(results)} suites passed")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    host, _, port = args.bind.rpartition(":")
    if not host or not port.isdigit():
        raise ParseError(f"--bind wants HOST:PORT, got {args.bind!r}")
    app = create_app(transcript_log=args.output)
    uvicorn.run(app, host=host, port=int(port), log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="demon-solitaire",
        description="Demon solitaire: play the game, color graphs with it.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    color = sub.add_parser("color", help="edge-color a graph via the game")
    color.add_argument("input", help="graph file ('-' for stdin)")
    color.add_argument("--mode", choices=["auto", "konig", "vizing"], default="auto")
    color.add_argument("--output", help="coloring file (default stdout)")
    color.set_defaults(func=cmd_color)

    verify = sub.add_parser("verify", help="check a coloring file against a graph")
    verify.add_argument("graph")
    verify.add_argument("coloring")
    verify.add_argument("m", nargs="?", type=int, default=None,
                        help="palette size (default: largest color present)")
    verify.set_defaults(func=cmd_verify)

    play = sub.add_parser("play", help="simulate one game and emit its transcript")
    play.add_argument("game", help="game file, or an integer seed for a random deal")
    play.add_argument("--demon", choices=[d.value for d in DemonKind], default="konig")
    play.add_argument("--strategy", choices=["auto", "konig", "vizing"], default="auto")
    play.add_argument("--seed", type=int, default=0, help="demon policy seed")
    play.add_argument("--budget", type=int, default=None)
    play.add_argument("--output", help="transcript JSON file (default stdout)")
    play.set_defaults(func=cmd_play)

    selftest = sub.add_parser("selftest", help="run the invariant suites")
    selftest.add_argument("scale", nargs="?", choices=["small", "full"], default="small")
    selftest.add_argument("--inject-failure", action="store_true",
                          help="deliberately fail, to test failure detection")
    selftest.set_defaults(func=cmd_selftest)

    serve = sub.add_parser("serve", help="run the HTTP session service")
    serve.add_argument("--bind", default="127.0.0.1:8765")
    serve.add_argument("--output", help="append-only transcript log file")
    serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ProfileUnsupported as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NotBipartite as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GameError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
