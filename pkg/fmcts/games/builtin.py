"""
Built-in game descriptions shipped as package data.
"""

from functools import cache
from importlib import resources

from .dsl import parse_game
from .rules import GameRules

BUILTIN_IDS: tuple[str, ...] = (
    "tictactoe",
    "gomoku",
    "gomoku15",
    "hex7",
    "hex11",
    "yavalath",
    "breakthrough6",
    "breakthrough8",
)

DESCRIPTION_SUFFIX = ".lud-mini"


def builtin_games() -> dict[str, str]:
    """Game id -> description text, in a stable order."""
    root = resources.files("fmcts.games").joinpath("descriptions")
    return {game_id: root.joinpath(game_id + DESCRIPTION_SUFFIX).read_text(encoding="utf-8") for game_id in BUILTIN_IDS}


@cache
def load_builtin(game_id: str) -> GameRules:
    """Parse the built-in game ``game_id``.

    Raises:
        ValueError: If no built-in game has that id
    """
    if game_id not in BUILTIN_IDS:
        raise ValueError(f"Unknown game '{game_id}'. Available: {', '.join(BUILTIN_IDS)}")
    return parse_game(builtin_games()[game_id])
