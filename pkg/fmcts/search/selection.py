"""
Selection rules: UCB1 for plain UCT and PUCT for prior-biased search.

Both return an index into the node's move list; ties go to the earliest move.
"""

import math

import numpy as np

from .node import SearchNode

DEFAULT_C = math.sqrt(2)


def ucb1_scores(q: np.ndarray, n: np.ndarray, c: float = DEFAULT_C) -> np.ndarray:
    """Q + C √(ln ΣN / N); unvisited moves score +inf."""
    total = n.sum()
    scores = np.full(len(n), np.inf)
    visited = n > 0
    if total > 0:
        scores[visited] = q[visited] + c * np.sqrt(math.log(total) / n[visited])
    return scores


def puct_scores(q: np.ndarray, n: np.ndarray, p: np.ndarray, c: float = DEFAULT_C) -> np.ndarray:
    """Q + C p √(ΣN) / (1 + N), with Q = 0 for unvisited moves."""
    return q + c * p * math.sqrt(n.sum()) / (1.0 + n)


def ucb1_select(node: SearchNode, c: float = DEFAULT_C) -> int:
    if not node.moves:
        raise ValueError("Cannot select a move in a terminal node")
    return int(np.argmax(ucb1_scores(node.q_values(), node.N, c)))


def puct_select(node: SearchNode, c: float = DEFAULT_C) -> int:
    if not node.moves:
        raise ValueError("Cannot select a move in a terminal node")
    if node.P is None:
        raise ValueError("PUCT selection needs prior probabilities")
    return int(np.argmax(puct_scores(node.q_values(), node.N, node.P, c)))
