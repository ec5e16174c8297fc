"""
Monte-Carlo tree search.
"""

from .mcts import (
    BiasedSearch,
    MonteCarloSearch,
    SearchResult,
    UctSearch,
    expert_distribution,
    final_move,
    greedy_move,
    reuse_tree,
)
from .node import SearchNode
from .selection import DEFAULT_C, puct_scores, puct_select, ucb1_scores, ucb1_select

__all__ = [
    "SearchNode",
    "MonteCarloSearch",
    "UctSearch",
    "BiasedSearch",
    "SearchResult",
    "expert_distribution",
    "final_move",
    "reuse_tree",
    "greedy_move",
    "DEFAULT_C",
    "ucb1_scores",
    "puct_scores",
    "ucb1_select",
    "puct_select",
]
