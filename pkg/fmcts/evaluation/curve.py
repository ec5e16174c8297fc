"""
Learning curves: evaluate every training checkpoint against a fixed opponent.
"""

import re
from collections.abc import Callable, Iterable
from pathlib import Path

from ..features import CompiledFeatureSet, compile_features, read_feature_file
from ..games import GameRules
from ..logging import logger
from ..policy import LinearPolicy
from .match import AgentFactory, play_match

CURVE_HEADER = ["gamesOfSelfPlay", "winRate", "ciLo", "ciHi", "featureCount"]
CHECKPOINT_RE = re.compile(r"checkpoint-(\d+)\.feat$")

# Builds the evaluated agent from a checkpoint's weights and compiled features
CheckpointAgent = Callable[[LinearPolicy, CompiledFeatureSet], AgentFactory]


def checkpoint_games(path: str | Path) -> int:
    match = CHECKPOINT_RE.search(Path(path).name)
    if match is None:
        raise ValueError(f"Not a checkpoint file name: {Path(path).name}")
    return int(match.group(1))


def find_checkpoints(directory: str | Path) -> list[Path]:
    """Checkpoint files in ``directory``, ascending by game count."""
    paths = [p for p in Path(directory).iterdir() if CHECKPOINT_RE.search(p.name)]
    return sorted(paths, key=checkpoint_games)


def emit_learning_curve(
    rules: GameRules,
    checkpoints: Iterable[str | Path],
    make_agent: CheckpointAgent,
    opponent: AgentFactory,
    games: int,
    seed: int = 0,
) -> list[dict]:
    """One row per checkpoint: games of self-play, win rate, CI bounds and feature count.

    Raises:
        FileNotFoundError: If a checkpoint file is missing
    """
    paths = sorted((Path(p) for p in checkpoints), key=checkpoint_games)
    rows = []
    for path in paths:
        if not path.is_file():
            raise FileNotFoundError(f"Checkpoint not found: {path}")
        fs, theta = read_feature_file(path)
        cfs = compile_features(fs, rules.graph)
        result = play_match(rules, make_agent(LinearPolicy(theta), cfs), opponent, games, seed)
        lo, hi = result.ci95
        rows.append(
            {
                "gamesOfSelfPlay": checkpoint_games(path),
                "winRate": f"{result.win_rate_a:.4f}",
                "ciLo": f"{lo:.4f}",
                "ciHi": f"{hi:.4f}",
                "featureCount": len(fs),
            }
        )
        logger.info(f"Checkpoint {path.name}: {result.summary()}")
    return rows
