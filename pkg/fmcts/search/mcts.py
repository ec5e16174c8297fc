"""
Monte-Carlo tree search: plain UCT and apprentice-biased PUCT.

Each iteration selects down the tree, expands one node, plays out to a terminal
state and backpropagates the score (1 win, 0.5 tie, 0 loss) from the
perspective of the player to move at every node on the path.
"""

import math
import time
from abc import ABC, abstractmethod
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

import numpy as np

from ..features import CompiledFeatureSet
from ..games.engine import Game, game_for
from ..games.rules import GameRules
from ..games.state import GameState, Move
from ..logging import logger
from ..policy import LinearPolicy
from ..types import SearchBudget
from .node import SearchNode
from .selection import DEFAULT_C, puct_select, ucb1_select

Path = list[tuple[SearchNode, int]]
FinalMoveMode = Literal["sample", "argmax"]


@dataclass(frozen=True, eq=False)
class SearchResult:
    """Outcome of one search from a root.

    Attributes:
        root: The searched root, kept for tree reuse
        moves: Legal moves at the root
        visits: Root visit counts, parallel to ``moves``
        iterations: Completed iterations
        elapsed: Wall-clock seconds spent
    """

    root: SearchNode
    moves: tuple[Move, ...]
    visits: np.ndarray
    iterations: int
    elapsed: float

    def expert_distribution(self) -> np.ndarray:
        return expert_distribution(self.visits)


class MonteCarloSearch(ABC):
    """Shared select / expand / play-out / backpropagate loop."""

    def __init__(self, rules: GameRules, rng: np.random.Generator):
        self.rules = rules
        self.game: Game = game_for(rules)
        self.rng = rng

    @abstractmethod
    def new_node(self, state: GameState) -> SearchNode:
        """Create a tree node for ``state``."""

    @abstractmethod
    def select(self, node: SearchNode) -> int:
        """Pick the index of the move to follow from an in-tree node."""

    @abstractmethod
    def playout(self, leaf: SearchNode, path: Path) -> GameState:
        """Play from ``leaf`` to a terminal state, extending ``path`` with any added nodes."""

    def random_playout(self, state: GameState) -> GameState:
        game, rng = self.game, self.rng
        while not state.is_terminal:
            moves = game.legal_moves(state)
            state = game.apply_move(state, moves[int(rng.integers(len(moves)))], validate=False)
        return state

    def root_for(self, state: GameState) -> SearchNode:
        if state.is_terminal:
            raise ValueError("Cannot search from a terminal state")
        return self.new_node(state)

    def expand(self, node: SearchNode, index: int) -> SearchNode:
        child = self.new_node(self.game.apply_move(node.state, node.moves[index], validate=False))
        node.children[index] = child
        return child

    def iterate(self, root: SearchNode) -> None:
        path: Path = []
        node = root
        while not node.is_terminal:
            index = self.select(node)
            path.append((node, index))
            child = node.children[index]
            if child is None:
                node = self.expand(node, index)
                break
            node = child

        final = node.state if node.is_terminal else self.playout(node, path)
        for visited, index in path:
            visited.N[index] += 1
            visited.W[index] += final.score(visited.state.mover)

    def search(self, root: GameState | SearchNode, budget: SearchBudget) -> SearchResult:
        """Run iterations from ``root`` until ``budget`` is spent.

        Args:
            root: A nonterminal state, or a node to continue searching (tree reuse)
            budget: Iteration count or wall-clock time

        Returns:
            Root visit counts and the tree
        """
        node = root if isinstance(root, SearchNode) else self.root_for(root)
        if node.is_terminal:
            raise ValueError("Cannot search from a terminal state")

        start = time.perf_counter()
        iterations = 0
        if budget.iterations is not None:
            for _ in range(budget.iterations):
                self.iterate(node)
            iterations = budget.iterations
        else:
            deadline = start + budget.time_ms / 1000.0
            while True:
                self.iterate(node)
                iterations += 1
                if time.perf_counter() >= deadline:
                    break
        elapsed = time.perf_counter() - start
        logger.debug(f"{type(self).__name__}: {iterations} iterations in {elapsed:.3f}s")
        return SearchResult(node, tuple(node.moves), node.N.copy(), iterations, elapsed)


class UctSearch(MonteCarloSearch):
    """UCT: UCB1 in the tree, uniformly random play-outs."""

    def __init__(self, rules: GameRules, rng: np.random.Generator, c: float = DEFAULT_C):
        super().__init__(rules, rng)
        self.c = c

    def new_node(self, state: GameState) -> SearchNode:
        return SearchNode(self.game, state)

    def select(self, node: SearchNode) -> int:
        return ucb1_select(node, self.c)

    def playout(self, leaf: SearchNode, path: Path) -> GameState:
        return self.random_playout(leaf.state)


class BiasedSearch(MonteCarloSearch):
    """PUCT with apprentice priors and apprentice-guided play-outs.

    The first play-out move is sampled from the apprentice and its node is added
    to the tree. ``playout_guided_moves`` sets how many play-out moves come from
    the apprentice in total; a negative value guides the whole play-out.
    """

    def __init__(
        self,
        rules: GameRules,
        rng: np.random.Generator,
        policy: LinearPolicy,
        cfs: CompiledFeatureSet,
        c: float = DEFAULT_C,
        playout_guided_moves: int = 1,
    ):
        super().__init__(rules, rng)
        self.c = c
        self.playout_guided_moves = playout_guided_moves
        self.update_policy(policy, cfs)

    def update_policy(self, policy: LinearPolicy, cfs: CompiledFeatureSet) -> None:
        policy.check_compiled(cfs)
        self.policy = policy
        self.cfs = cfs

    def priors(self, state: GameState, moves: Sequence[Move]) -> np.ndarray:
        return self.policy.distribution(self.cfs, state, moves).probabilities

    def new_node(self, state: GameState) -> SearchNode:
        node = SearchNode(self.game, state)
        if node.moves:
            node.P = self.priors(state, node.moves)
        return node

    def select(self, node: SearchNode) -> int:
        return puct_select(node, self.c)

    def playout(self, leaf: SearchNode, path: Path) -> GameState:
        guided = self.playout_guided_moves
        if guided == 0:
            return self.random_playout(leaf.state)

        assert leaf.P is not None
        index = int(self.rng.choice(len(leaf.moves), p=leaf.P))
        path.append((leaf, index))
        state = self.expand(leaf, index).state
        remaining = math.inf if guided < 0 else guided - 1

        game, rng = self.game, self.rng
        while remaining > 0 and not state.is_terminal:
            moves = game.legal_moves(state)
            p = self.priors(state, moves)
            state = game.apply_move(state, moves[int(rng.choice(len(moves), p=p))], validate=False)
            remaining -= 1
        return self.random_playout(state)


def expert_distribution(visits: Sequence[int] | np.ndarray) -> np.ndarray:
    """Normalized visit counts, exact in rational arithmetic before conversion to floats."""
    counts = [int(v) for v in visits]
    total = sum(counts)
    if total <= 0 or any(c < 0 for c in counts):
        raise ValueError("Visit counts must be non-negative with a positive total")
    exact = [Fraction(c, total) for c in counts]
    assert sum(exact) == 1
    return np.array([float(f) for f in exact], dtype=np.float64)


def final_move(
    moves: Sequence[Move],
    visits: Sequence[int] | np.ndarray,
    mode: FinalMoveMode = "argmax",
    rng: np.random.Generator | None = None,
) -> Move:
    """Choose the move to play from root visit counts.

    ``argmax`` takes the most visited move, the earliest on ties; ``sample``
    draws from the expert distribution with ``rng``.
    """
    if mode == "argmax":
        counts = np.asarray(visits)
        if counts.sum() <= 0:
            raise ValueError("No visits to choose from")
        return moves[int(np.argmax(counts))]
    if rng is None:
        raise ValueError("Sampling a final move needs a random generator")
    return moves[int(rng.choice(len(moves), p=expert_distribution(visits)))]


def reuse_tree(
    root: SearchNode | None, played: Sequence[Move], game: Game, state: GameState
) -> SearchNode | None:
    """Descend ``root`` along ``played`` to the subtree for ``state``.

    Returns:
        The matching node, or None when some played move was never expanded
    """
    node = root
    for move in played:
        if node is None:
            return None
        node = node.child(move)
    if node is None or node.state != state:
        return None
    if not node.is_terminal and node.moves != game.legal_moves(state):
        raise RuntimeError(f"Reused node disagrees with the rules after {state.move_count} moves")
    return node


def greedy_move(policy: LinearPolicy, cfs: CompiledFeatureSet, game: Game, state: GameState) -> Move:
    """The apprentice's most probable move, without search; earliest on ties."""
    return policy.distribution(cfs, state, game.legal_moves(state)).argmax()
