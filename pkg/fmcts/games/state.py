"""
Game states and moves.
"""

from dataclasses import dataclass
from enum import Enum

EMPTY = 0


class Status(Enum):
    ONGOING = "ongoing"
    WIN = "win"
    TIE = "tie"


class IllegalMoveError(ValueError):
    """Raised when a move is not legal in the state it is applied to."""


class TerminalStateError(RuntimeError):
    """Raised when moves are requested from a finished game."""


@dataclass(frozen=True, slots=True)
class Move:
    """A placement (``from_`` is None) or a step from one vertex to another."""

    from_: int | None
    to: int

    def sort_key(self) -> tuple[int, int]:
        return (-1 if self.from_ is None else self.from_, self.to)

    def __str__(self) -> str:
        return f"{self.to}" if self.from_ is None else f"{self.from_}-{self.to}"


@dataclass(frozen=True, slots=True)
class GameState:
    """Immutable snapshot of a game.

    Attributes:
        board: Per-vertex owner, 0 for empty, otherwise the owning player (1 or 2)
        mover: Player to move
        move_count: Moves played so far
        status: Ongoing, Win or Tie
        winner: Winning player when status is WIN
    """

    board: tuple[int, ...]
    mover: int = 1
    move_count: int = 0
    status: Status = Status.ONGOING
    winner: int | None = None

    @property
    def is_terminal(self) -> bool:
        return self.status is not Status.ONGOING

    @property
    def opponent(self) -> int:
        return 3 - self.mover

    def score(self, player: int) -> float:
        """1 for a win, 0 for a loss, 0.5 for a tie, from ``player``'s perspective."""
        if self.status is Status.TIE:
            return 0.5
        if self.status is Status.WIN:
            return 1.0 if self.winner == player else 0.0
        raise TerminalStateError("Score requested for an ongoing game")

    def pieces(self, player: int) -> int:
        return sum(1 for owner in self.board if owner == player)
