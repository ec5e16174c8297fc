"""
Game rules produced by the description parser.

All rule objects are frozen dataclasses so that a GameRules value can be hashed,
compared structurally and shared between searches.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Literal

from ..board import BoardGraph, build_hex_board, build_square_board

MOVE_CAP = 100

Direction = Literal["forward", "forward-left", "forward-right"]
CaptureMode = Literal["none", "diagonal", "all"]
Result = Literal["win", "loss"]

STEP_DIRECTIONS: tuple[Direction, ...] = ("forward", "forward-left", "forward-right")
CAPTURE_MODES: tuple[CaptureMode, ...] = ("none", "diagonal", "all")


@dataclass(frozen=True)
class BoardSpec:
    """Board shape: ``square`` (w, h), ``hex-rhombus`` (n) or ``hex-hexagon`` (r)."""

    kind: Literal["square", "hex-rhombus", "hex-hexagon"]
    params: tuple[int, ...]

    def __post_init__(self) -> None:
        expected = 2 if self.kind == "square" else 1
        if len(self.params) != expected:
            raise ValueError(f"Board {self.kind} takes {expected} parameter(s), got {self.params}")
        if any(p < 1 for p in self.params):
            raise ValueError(f"Board dimensions must be positive, got {self.params}")

    def build(self) -> BoardGraph:
        if self.kind == "square":
            return build_square_board(*self.params)
        if self.kind == "hex-rhombus":
            return build_hex_board("rhombus", self.params[0])
        return build_hex_board("hexagon", self.params[0])


@dataclass(frozen=True)
class PlaceOnEmpty:
    """``(to Mover (empty))``: place a piece on any empty vertex."""


@dataclass(frozen=True)
class StepMoveRule:
    """``(step (directions ...) capture:<mode>)``: move one piece one step forward."""

    directions: tuple[Direction, ...]
    capture: CaptureMode


MoveRule = PlaceOnEmpty | StepMoveRule


@dataclass(frozen=True)
class LineRule:
    length: int
    result: Result


@dataclass(frozen=True)
class ReachOppositeRule:
    result: Result = "win"


@dataclass(frozen=True)
class ConnectSidesRule:
    result: Result = "win"


@dataclass(frozen=True)
class NoPiecesRule:
    result: Result = "loss"


EndRule = LineRule | ReachOppositeRule | ConnectSidesRule | NoPiecesRule


@dataclass(frozen=True)
class GameRules:
    """A parsed game description."""

    name: str
    board: BoardSpec
    move_rule: MoveRule
    end_rules: tuple[EndRule, ...]
    players: int = 2
    pieces: tuple[str, ...] = ()
    move_cap: int = MOVE_CAP

    def __post_init__(self) -> None:
        if self.players != 2:
            raise ValueError(f"Only two-player games are supported, got {self.players}")
        if not self.end_rules:
            raise ValueError("A game needs at least one end rule")

    @cached_property
    def graph(self) -> BoardGraph:
        return self.board.build()
