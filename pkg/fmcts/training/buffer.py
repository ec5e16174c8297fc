"""
Experience storage for self-play training.
"""

from collections import deque
from collections.abc import Iterator
from typing import NamedTuple

import numpy as np

from ..games.state import GameState, Move


class ExperienceTuple(NamedTuple):
    """A state met in self-play, its legal moves and the search's visit distribution."""

    state: GameState
    moves: tuple[Move, ...]
    target: np.ndarray


class ExperienceBuffer:
    """FIFO buffer of experience tuples; the oldest tuple makes room for a new one."""

    def __init__(self, capacity: int = 200):
        if capacity < 1:
            raise ValueError(f"Buffer capacity must be positive, got {capacity}")
        self.capacity = capacity
        self._items: deque[ExperienceTuple] = deque(maxlen=capacity)

    def append(self, item: ExperienceTuple) -> None:
        if len(item.moves) != len(item.target):
            raise ValueError(f"{len(item.moves)} moves but {len(item.target)} target probabilities")
        if abs(float(np.sum(item.target)) - 1.0) > 1e-9:
            raise ValueError("Experience target must sum to 1")
        self._items.append(item)

    def __len__(self) -> int:
        return len(self._items)

    def __iter__(self) -> Iterator[ExperienceTuple]:
        return iter(self._items)

    def __getitem__(self, index: int) -> ExperienceTuple:
        return self._items[index]

    def sample(self, n: int, rng: np.random.Generator) -> list[ExperienceTuple]:
        """Up to ``n`` tuples drawn uniformly without replacement; the whole buffer if smaller."""
        if not self._items:
            return []
        size = min(n, len(self._items))
        return [self._items[int(i)] for i in rng.choice(len(self._items), size=size, replace=False)]
