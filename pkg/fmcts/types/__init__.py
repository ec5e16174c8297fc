"""Configuration models."""

from .budget import SearchBudget
from .options import DEFAULT_CHECKPOINTS, PRUNED_CHECKPOINTS, DiscoveryStrategy, EvalConfig, TrainConfig

__all__ = [
    "SearchBudget",
    "DiscoveryStrategy",
    "TrainConfig",
    "EvalConfig",
    "DEFAULT_CHECKPOINTS",
    "PRUNED_CHECKPOINTS",
]
