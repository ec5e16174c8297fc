"""
Concrete agents: tree search, greedy apprentice and uniform random.
"""

import numpy as np

from ..features import CompiledFeatureSet
from ..games.rules import GameRules
from ..games.state import GameState, Move
from ..policy import LinearPolicy
from ..search import MonteCarloSearch, SearchNode, SearchResult, final_move, greedy_move, reuse_tree
from ..search.mcts import FinalMoveMode
from ..types import SearchBudget
from .base import BaseAgent


class SearchAgent(BaseAgent):
    """Plays the move chosen by an MCTS search, reusing the tree between moves.

    Args:
        search: The search to run (UCT or biased)
        budget: Budget per move
        final: ``argmax`` for evaluation games, ``sample`` for self-play
        reuse: Keep the relevant subtree from the previous search
    """

    def __init__(
        self,
        search: MonteCarloSearch,
        budget: SearchBudget,
        final: FinalMoveMode = "argmax",
        reuse: bool = True,
        name: str | None = None,
    ):
        super().__init__(search.rules)
        self.search = search
        self.budget = budget
        self.final = final
        self.reuse = reuse
        self.name = name or type(search).__name__
        self.last_result: SearchResult | None = None
        self._root: SearchNode | None = None
        self._played: list[Move] = []

    def think(self, state: GameState) -> SearchResult:
        """Search ``state`` without committing to a move."""
        root = reuse_tree(self._root, self._played, self.game, state) if self.reuse else None
        result = self.search.search(root if root is not None else state, self.budget)
        self._root = result.root
        self._played = []
        self.last_result = result
        return result

    def select_move(self, state: GameState) -> Move:
        result = self.think(state)
        return final_move(result.moves, result.visits, self.final, self.search.rng)

    def observe(self, move: Move) -> None:
        self._played.append(move)

    def reset(self) -> None:
        self._root = None
        self._played = []
        self.last_result = None


class GreedyAgent(BaseAgent):
    """Plays the apprentice's most probable move without any search."""

    name = "greedy"

    def __init__(self, rules: GameRules, policy: LinearPolicy, cfs: CompiledFeatureSet):
        super().__init__(rules)
        policy.check_compiled(cfs)
        self.policy = policy
        self.cfs = cfs

    def select_move(self, state: GameState) -> Move:
        return greedy_move(self.policy, self.cfs, self.game, state)


class RandomAgent(BaseAgent):
    """Plays a uniformly random legal move."""

    name = "random"

    def __init__(self, rules: GameRules, rng: np.random.Generator):
        super().__init__(rules)
        self.rng = rng

    def select_move(self, state: GameState) -> Move:
        moves = self.game.legal_moves(state)
        return moves[int(self.rng.integers(len(moves)))]
