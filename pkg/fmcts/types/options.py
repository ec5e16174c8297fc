"""
Options for training and evaluation runs.

Defaults: α = 0.05, λ = 1e-6, SGD batches of 20, discovery batches of 30 and a 200-tuple
experience buffer.
"""

import math
from enum import StrEnum
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, field_validator

from .budget import SearchBudget

DEFAULT_CHECKPOINTS: tuple[int, ...] = (1, 25, 50, 100, 200)
PRUNED_CHECKPOINTS: tuple[int, ...] = (0, 25, 50, 75, 100)


class DiscoveryStrategy(StrEnum):
    ADD_RANDOM = "add-random"
    COMBINE_RANDOM = "combine-random"
    COMBINE_MAX = "combine-max"
    CORRELATION = "correlation"


class TrainConfig(BaseModel):
    """Configuration of one self-play training run."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    game: str
    """Built-in game id."""

    strategy: DiscoveryStrategy = DiscoveryStrategy.CORRELATION
    budget: SearchBudget = SearchBudget(time_ms=5000)
    games: int = Field(default=200, ge=0)
    """Number of self-play games."""

    seed: int = Field(default=0, ge=0)
    alpha: float = Field(default=0.05, gt=0)
    lam: float = Field(default=1e-6, ge=0)
    sgd_batch: int = Field(default=20, ge=1)
    discovery_batch: int = Field(default=30, ge=1)
    buffer_capacity: int = Field(default=200, ge=1)
    c_puct: float = Field(default=math.sqrt(2), gt=0)
    playout_guided_moves: int = 1
    """Play-out moves sampled from the apprentice; negative means the whole play-out."""

    checkpoints: tuple[int, ...] = DEFAULT_CHECKPOINTS
    """Game counts after which a ``checkpoint-<g>.feat`` file is written; 0 is the start.

    The last game always gets a checkpoint too.
    """

    out_dir: Path = Path("runs")
    initial_features: Path | None = None
    """Feature file (features and weights) to start from instead of atomic features."""

    freeze_features: bool = False
    """Disable feature discovery, e.g. when retraining a pruned set."""

    @field_validator("checkpoints")
    @classmethod
    def _sorted_checkpoints(cls, value: tuple[int, ...]) -> tuple[int, ...]:
        if any(c < 0 for c in value):
            raise ValueError("Checkpoints must be non-negative game counts")
        return tuple(sorted(set(value)))


class EvalConfig(BaseModel):
    """Configuration of an evaluation match."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    game: str
    budget: SearchBudget = SearchBudget(time_ms=5000)
    games: int = Field(default=200, ge=1)
    seed: int = Field(default=0, ge=0)
    c_puct: float = Field(default=math.sqrt(2), gt=0)
    c_ucb1: float = Field(default=math.sqrt(2), gt=0)
    playout_guided_moves: int = 1
