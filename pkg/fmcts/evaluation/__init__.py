"""
Evaluation: matches, confidence intervals, slowdown and learning curves.
"""

from .curve import CURVE_HEADER, checkpoint_games, emit_learning_curve, find_checkpoints
from .match import (
    MATCH_HEADER,
    AgentFactory,
    GameRecord,
    MatchResult,
    biased_agent,
    greedy_agent,
    play_game,
    play_match,
    play_match_async,
    random_agent,
    uct_agent,
)
from .slowdown import SLOWDOWN_HEADER, SlowdownReport, measure_slowdown
from .stats import Z_95, wilson_interval

__all__ = [
    "AgentFactory",
    "GameRecord",
    "MatchResult",
    "play_game",
    "play_match",
    "play_match_async",
    "uct_agent",
    "biased_agent",
    "greedy_agent",
    "random_agent",
    "MATCH_HEADER",
    "wilson_interval",
    "Z_95",
    "SlowdownReport",
    "measure_slowdown",
    "SLOWDOWN_HEADER",
    "emit_learning_curve",
    "find_checkpoints",
    "checkpoint_games",
    "CURVE_HEADER",
]
