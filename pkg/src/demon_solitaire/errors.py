"""Exception hierarchy for the demon solitaire engine.

Every error raised by the library derives from GameError so callers can
catch one base class at API boundaries (CLI exit codes, HTTP handlers).
"""


class GameError(Exception):
    """Base class for all library errors."""


# --- game setup -------------------------------------------------------------

class BadGameNumber(GameError):
    """Game number k is below 1."""


class BadCardNumber(GameError):
    """Card number m is below the game number k."""


class WrongStackCount(GameError):
    """A deal supplied a number of stacks different from k."""


class EmptyStack(GameError):
    """A dealt stack contains no cards."""


class CardOutOfRange(GameError):
    """A card value lies outside 1..m."""


# --- play -------------------------------------------------------------------

class IllegalMove(GameError):
    """A player swap violates the move rule; the message names the clause."""


class IllegalResponse(IllegalMove):
    """A demon swap violates the swap shape or the demon's rule."""


class NonconformingDemon(IllegalResponse):
    """A demon policy emitted a response outside its rule's legal set."""


# --- strategies -------------------------------------------------------------

class PreconditionViolated(GameError):
    """An operation was called outside its stated precondition."""


class HallViolation(GameError):
    """No system of distinct representatives exists; signals an internal bug
    when raised on sets produced by the minimal deficient-subset search."""


class NotReducible(GameError):
    """The chosen stack set covers the whole sub-game; the position is a win,
    not a reduction."""


class ProfileUnsupported(GameError):
    """Stack profile has two or more singleton stacks, which the full-strength
    strategy does not cover."""


# --- graphs and coloring ----------------------------------------------------

class ParseError(GameError):
    """Malformed game, graph, or coloring text; the message carries the line."""


class NotBipartite(GameError):
    """The tight-bound coloring mode was requested for a non-bipartite graph."""


class TooLarge(GameError):
    """Input exceeds a brute-force guard."""


class DemonNonconformance(GameError):
    """A graph-induced response fell outside the mode's demon rule; signals an
    implementation bug, not a user error."""


# --- sessions ---------------------------------------------------------------

class UnknownSession(GameError):
    """No session exists for the given id."""


class WrongTurn(GameError):
    """The request does not match the session's current turn or role."""
