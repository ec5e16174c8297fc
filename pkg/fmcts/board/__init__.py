"""
Board graphs and walk resolution.
"""

from .graph import (  # noqa: F401
    HEX_DIRECTIONS,
    OFF_BOARD,
    SQUARE_DIRECTIONS,
    BoardGraph,
    OffBoard,
    Position,
    build_hex_board,
    build_square_board,
)
from .walks import (  # noqa: F401
    EMPTY_WALK,
    InvalidRotationError,
    NoPathError,
    Turn,
    Walk,
    absolute_walk,
    canonical_walk,
    make_walk,
    negate_walk,
    reframe_walk,
    resolve_walk,
    walk_endpoint,
)

__all__ = [
    "BoardGraph",
    "OffBoard",
    "OFF_BOARD",
    "Position",
    "SQUARE_DIRECTIONS",
    "HEX_DIRECTIONS",
    "build_square_board",
    "build_hex_board",
    "Turn",
    "Walk",
    "EMPTY_WALK",
    "InvalidRotationError",
    "NoPathError",
    "make_walk",
    "negate_walk",
    "reframe_walk",
    "absolute_walk",
    "resolve_walk",
    "walk_endpoint",
    "canonical_walk",
]
