"""
Game descriptions, rules and the rule engine.
"""

from .builtin import BUILTIN_IDS, builtin_games, load_builtin
from .dsl import (
    ArityError,
    DescriptionError,
    LexicalError,
    LudemeTree,
    UnknownLudemeError,
    UnsupportedConstructError,
    format_tree,
    parse_game,
    parse_tree,
    print_game,
)
from .engine import Game, apply_move, game_for, initial_state, legal_moves
from .rules import (
    MOVE_CAP,
    BoardSpec,
    ConnectSidesRule,
    GameRules,
    LineRule,
    NoPiecesRule,
    PlaceOnEmpty,
    ReachOppositeRule,
    StepMoveRule,
)
from .state import EMPTY, GameState, IllegalMoveError, Move, Status, TerminalStateError

__all__ = [
    "BUILTIN_IDS",
    "builtin_games",
    "load_builtin",
    "DescriptionError",
    "LexicalError",
    "UnknownLudemeError",
    "ArityError",
    "UnsupportedConstructError",
    "LudemeTree",
    "parse_tree",
    "format_tree",
    "parse_game",
    "print_game",
    "Game",
    "game_for",
    "initial_state",
    "legal_moves",
    "apply_move",
    "MOVE_CAP",
    "BoardSpec",
    "GameRules",
    "PlaceOnEmpty",
    "StepMoveRule",
    "LineRule",
    "ReachOppositeRule",
    "ConnectSidesRule",
    "NoPiecesRule",
    "EMPTY",
    "GameState",
    "Move",
    "Status",
    "IllegalMoveError",
    "TerminalStateError",
]
