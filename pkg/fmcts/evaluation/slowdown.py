"""
Slowdown of biased search relative to UCT under equal thinking time.
"""

from dataclasses import dataclass

import numpy as np

from ..features import CompiledFeatureSet
from ..games import GameRules, game_for
from ..logging import logger
from ..policy import LinearPolicy
from ..rng import substream
from ..search import BiasedSearch, UctSearch, final_move
from ..search.selection import DEFAULT_C
from ..types import SearchBudget

SLOWDOWN_HEADER = ["game", "i_uct", "i_biased", "ratio", "samples"]


@dataclass(frozen=True)
class SlowdownReport:
    """Mean completed iterations of both searches; ratio > 1 means biased search is slower."""

    i_uct: float
    i_biased: float
    samples: int

    @property
    def ratio(self) -> float:
        return self.i_uct / self.i_biased

    def as_row(self, game: str) -> dict:
        return {
            "game": game,
            "i_uct": f"{self.i_uct:.1f}",
            "i_biased": f"{self.i_biased:.1f}",
            "ratio": f"{self.ratio:.4f}",
            "samples": self.samples,
        }


def measure_slowdown(
    rules: GameRules,
    policy: LinearPolicy,
    cfs: CompiledFeatureSet,
    budget: SearchBudget,
    games: int,
    seed: int = 0,
    moves_per_game: int = 2,
    c: float = DEFAULT_C,
) -> SlowdownReport:
    """Search the first ``moves_per_game`` positions of ``games`` games with both agents.

    Both searches run from the same positions with the same wall-clock budget;
    the game advances with UCT's most visited move.

    Raises:
        ValueError: If ``budget`` counts iterations (the ratio would be 1 by construction)
    """
    if not budget.is_wall_clock:
        raise ValueError("Slowdown is only meaningful under a wall-clock budget")
    if games < 1:
        raise ValueError(f"Need at least one game, got {games}")

    game = game_for(rules)
    uct_counts, biased_counts = [], []
    for index in range(games):
        uct = UctSearch(rules, substream(seed, "slowdown", index, "uct"), c)
        biased = BiasedSearch(rules, substream(seed, "slowdown", index, "biased"), policy, cfs, c)
        state = game.initial_state()
        for _ in range(moves_per_game):
            if state.is_terminal:
                break
            uct_result = uct.search(state, budget)
            biased_result = biased.search(state, budget)
            uct_counts.append(uct_result.iterations)
            biased_counts.append(biased_result.iterations)
            state = game.apply_move(state, final_move(uct_result.moves, uct_result.visits))

    report = SlowdownReport(float(np.mean(uct_counts)), float(np.mean(biased_counts)), len(uct_counts))
    logger.info(
        f"Slowdown on '{rules.name}': UCT {report.i_uct:.1f} vs biased {report.i_biased:.1f} iterations, "
        f"ratio {report.ratio:.3f}"
    )
    return report
