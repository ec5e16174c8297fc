"""
fmcts - feature-biased Monte-Carlo tree search.

This library trains linear move-prediction policies over spatial pattern
features by expert-iteration self-play, and uses them to bias MCTS.
"""

from importlib.metadata import PackageNotFoundError, version

from .logging import FMCTS_DEBUG, Logger, logger
from .board import BoardGraph, build_hex_board, build_square_board, canonical_walk, resolve_walk
from .games import GameRules, GameState, Move, apply_move, builtin_games, legal_moves, load_builtin, parse_game
from .features import Feature, FeatureSet, compile_features, generate_atomic_features
from .policy import LinearPolicy
from .search import BiasedSearch, UctSearch
from .types import DiscoveryStrategy, EvalConfig, SearchBudget, TrainConfig
from .config import load_config_file, load_train_config
from .training import run_self_play
from .evaluation import play_match

try:
    __version__ = version("fmcts")
except PackageNotFoundError:
    __version__ = "0.0.0"

__all__ = [
    "BoardGraph",
    "build_square_board",
    "build_hex_board",
    "resolve_walk",
    "canonical_walk",
    "GameRules",
    "GameState",
    "Move",
    "parse_game",
    "builtin_games",
    "load_builtin",
    "legal_moves",
    "apply_move",
    "Feature",
    "FeatureSet",
    "generate_atomic_features",
    "compile_features",
    "LinearPolicy",
    "UctSearch",
    "BiasedSearch",
    "SearchBudget",
    "TrainConfig",
    "EvalConfig",
    "DiscoveryStrategy",
    "load_config_file",
    "load_train_config",
    "run_self_play",
    "play_match",
    "logger",
    "FMCTS_DEBUG",
    "Logger",
    "set_debug",
]


# Helper function to set debug mode
def set_debug(debug=2):
    """Set the debug mode for fmcts.

    Args:
        debug: Debug level (0=off, 1=info, 2=debug)
    """
    Logger.set_debug(debug)
