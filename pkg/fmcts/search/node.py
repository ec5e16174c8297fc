"""
Search tree nodes.
"""

import numpy as np

from ..games.engine import Game
from ..games.state import GameState, Move


class SearchNode:
    """A state in the search tree with per-move statistics.

    Statistics are numpy arrays aligned with ``moves`` (the legal moves in
    engine order). ``children[i]`` is None until move ``i`` is expanded.
    Terminal nodes have no moves.

    Attributes:
        state: The game state
        moves: Legal moves of ``state``
        N: Visit counts per move
        W: Total backpropagated score per move, from ``state.mover``'s perspective
        P: Prior probabilities per move (biased search only)
        children: Expanded child nodes
    """

    __slots__ = ("state", "moves", "N", "W", "P", "children")

    def __init__(self, game: Game, state: GameState, priors: np.ndarray | None = None):
        self.state = state
        self.moves: list[Move] = [] if state.is_terminal else game.legal_moves(state)
        n = len(self.moves)
        self.N = np.zeros(n, dtype=np.int64)
        self.W = np.zeros(n, dtype=np.float64)
        self.P = priors
        self.children: list[SearchNode | None] = [None] * n
        if priors is not None and len(priors) != n:
            raise ValueError(f"{len(priors)} priors for {n} legal moves")

    @property
    def is_terminal(self) -> bool:
        return self.state.is_terminal

    @property
    def total_visits(self) -> int:
        return int(self.N.sum())

    def q_values(self) -> np.ndarray:
        """Mean score per move; 0 for unvisited moves."""
        return np.divide(self.W, self.N, out=np.zeros_like(self.W), where=self.N > 0)

    def index_of(self, move: Move) -> int:
        return self.moves.index(move)

    def child(self, move: Move) -> "SearchNode | None":
        try:
            return self.children[self.index_of(move)]
        except ValueError:
            return None

    def __repr__(self) -> str:
        return f"SearchNode(mover={self.state.mover}, moves={len(self.moves)}, visits={self.total_visits})"
