"""
Base agent interface.

This module provides the base class for game-playing agents used in self-play
and evaluation matches.
"""

from abc import ABC, abstractmethod

from ..games.engine import Game, game_for
from ..games.rules import GameRules
from ..games.state import GameState, Move


class BaseAgent(ABC):
    """Base class for agents that play a game.

    An agent is asked for a move whenever it is to play and is told about every
    move played by either side, so that it can keep search trees in sync.
    """

    name: str = "agent"

    def __init__(self, rules: GameRules):
        """Initialize a new agent.

        Args:
            rules: The rules of the game the agent plays.
        """
        self.rules = rules
        self.game: Game = game_for(rules)

    @abstractmethod
    def select_move(self, state: GameState) -> Move:
        """Choose a move to play.

        Args:
            state: A nonterminal state in which this agent is the mover.

        Returns:
            A legal move.
        """
        pass

    def observe(self, move: Move) -> None:
        """Record a move played by either side."""
        pass

    def reset(self) -> None:
        """Forget everything about the current game."""
        pass

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.rules.name})"
