"""Demon solitaire: a card game a demon cannot win, and the edge colorings
it buys you.

The game: k stacks of cards numbered 1..m, one card of each number at most
per stack.  Each turn the player swaps a card out of one stack for a number
that stack lacks; a demon answers within its rule.  The player wins when one
card per stack can be picked with all numbers distinct.  Two strategies win
against the two principled demon rules, and driving the game from a graph's
free-color sets turns those wins into proper edge colorings with the
classical tight bounds.
"""

from .errors import (
    BadCardNumber,
    BadGameNumber,
    CardOutOfRange,
    DemonNonconformance,
    EmptyStack,
    GameError,
    HallViolation,
    IllegalMove,
    IllegalResponse,
    NonconformingDemon,
    NotBipartite,
    NotReducible,
    ParseError,
    PreconditionViolated,
    ProfileUnsupported,
    TooLarge,
    UnknownSession,
    WrongStackCount,
    WrongTurn,
)
from .game import (
    PASS,
    DemonKind,
    DemonResponse,
    DemonSwap,
    GameConfig,
    GameState,
    Hand,
    Outcome,
    Pass,
    PlayerMove,
    Transcript,
    apply_demon_response,
    apply_player_move,
    default_budget,
    demon_legal_responses,
    is_winning,
    legal_player_moves,
    max_hand,
    new_game,
    replay,
    reserve_count,
    run_game,
)
from .demons import FirstLegalDemon, RandomDemon, ScriptedDemon
from .strategies import (
    DeficientSet,
    KonigStrategy,
    ReductionContext,
    VizingStrategy,
    check_profile,
    distinct_on_active,
    increase_step,
    konig_play,
    konig_step,
    minimal_deficient_subset,
    reduce,
    sdr,
    vizing_play,
    vizing_resolve,
)
from .graphs import (
    Graph,
    bipartition,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    induced_subgraph,
    parse_graph,
    path_graph,
    petersen_graph,
    star_graph,
    write_graph,
)
from .coloring import (
    ColoringMode,
    EdgeColoring,
    KempeSwapReport,
    brute_force_color,
    edge_color,
    extend_at_vertex,
    free_colors,
    kempe_swap,
    parse_coloring,
    verify_coloring,
    write_coloring,
)
from .formats import (
    hand_to_json,
    move_from_json,
    move_to_json,
    parse_game,
    response_from_json,
    response_to_json,
    transcript_from_json,
    transcript_to_json,
    write_game,
)

__version__ = "0.1.0"
