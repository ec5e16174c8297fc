"""
Expert-iteration training: experience, feature discovery, pruning and self-play.
"""

from .buffer import ExperienceBuffer, ExperienceTuple
from .discovery import DiscoveredFeature, PairRecord, correlation_score, discover_feature, evaluate_batch
from .pruning import DEFAULT_KEEP, prune
from .selfplay import CHECKPOINT_PATTERN, SelfPlayTrainer, TrainingArtifacts, run_self_play
from .stats import pearson

__all__ = [
    "ExperienceTuple",
    "ExperienceBuffer",
    "DiscoveredFeature",
    "PairRecord",
    "evaluate_batch",
    "correlation_score",
    "discover_feature",
    "prune",
    "DEFAULT_KEEP",
    "pearson",
    "SelfPlayTrainer",
    "TrainingArtifacts",
    "run_self_play",
    "CHECKPOINT_PATTERN",
]
