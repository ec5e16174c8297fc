"""
Linear softmax policy over sparse binary features.

The logit of a move is the sum of the weights of its active features; the
policy is the softmax of the logits over the legal moves. Training minimizes
the cross-entropy towards a target distribution plus an L2 penalty.
"""

from collections.abc import Sequence
from dataclasses import dataclass
from typing import Protocol

import numpy as np
from scipy.special import log_softmax, softmax

from .features import CompiledFeatureSet, feature_vectors
from .games.state import GameState, Move

FeatureRow = tuple[int, ...]

TARGET_TOLERANCE = 1e-6


class WeightsDesyncError(ValueError):
    """Raised when feature indices and the weight vector disagree in length."""


class Sample(Protocol):
    """A training sample: a state, its legal moves and a target distribution."""

    state: GameState
    moves: Sequence[Move]
    target: np.ndarray


@dataclass(frozen=True, eq=False)
class ActionDistribution:
    """Probabilities parallel to the legal moves that produced them."""

    moves: tuple[Move, ...]
    probabilities: np.ndarray

    def __len__(self) -> int:
        return len(self.moves)

    def probability(self, move: Move) -> float:
        return float(self.probabilities[self.moves.index(move)])

    def argmax(self) -> Move:
        """Most probable move; the earliest in move order on ties."""
        return self.moves[int(np.argmax(self.probabilities))]

    def sample(self, rng: np.random.Generator) -> Move:
        return self.moves[int(rng.choice(len(self.moves), p=self.probabilities))]


def _check_target(target: np.ndarray, n: int) -> np.ndarray:
    target = np.asarray(target, dtype=np.float64)
    if target.shape != (n,):
        raise ValueError(f"Target has shape {target.shape}, expected ({n},)")
    if np.any(target < 0) or abs(target.sum() - 1.0) > TARGET_TOLERANCE:
        raise ValueError(f"Target is not a distribution (sum {target.sum():.9f})")
    return target


@dataclass(frozen=True, eq=False)
class LinearPolicy:
    """Weight vector θ and its SGD hyperparameters.

    Attributes:
        theta: One weight per feature, index-aligned with the FeatureSet
        alpha: Step size
        lam: L2 regularization coefficient
    """

    theta: np.ndarray
    alpha: float = 0.05
    lam: float = 1e-6

    def __post_init__(self) -> None:
        theta = np.array(self.theta, dtype=np.float64)
        if theta.ndim != 1:
            raise ValueError(f"Weights must be a vector, got shape {theta.shape}")
        if not np.all(np.isfinite(theta)):
            raise ValueError("Weights must be finite")
        theta.setflags(write=False)
        object.__setattr__(self, "theta", theta)

    @classmethod
    def zeros(cls, num_features: int, alpha: float = 0.05, lam: float = 1e-6) -> "LinearPolicy":
        return cls(np.zeros(num_features), alpha, lam)

    def __len__(self) -> int:
        return len(self.theta)

    def with_theta(self, theta: np.ndarray) -> "LinearPolicy":
        return LinearPolicy(theta, self.alpha, self.lam)

    def append_feature(self, weight: float = 0.0) -> "LinearPolicy":
        return self.with_theta(np.append(self.theta, weight))

    def check_compiled(self, cfs: CompiledFeatureSet) -> None:
        if cfs.num_features != len(self.theta):
            raise WeightsDesyncError(f"{cfs.num_features} features but {len(self.theta)} weights")

    # Row-level computations: one sparse feature row per legal move.

    def logit(self, phi: FeatureRow) -> float:
        if phi and max(phi) >= len(self.theta):
            raise WeightsDesyncError(f"Feature index {max(phi)} out of range for {len(self.theta)} weights")
        return float(self.theta[list(phi)].sum()) if phi else 0.0

    def logits_from_rows(self, rows: Sequence[FeatureRow]) -> np.ndarray:
        return np.array([self.logit(phi) for phi in rows], dtype=np.float64)

    def probabilities_from_rows(self, rows: Sequence[FeatureRow]) -> np.ndarray:
        if not rows:
            raise ValueError("Cannot build a distribution over zero moves")
        return softmax(self.logits_from_rows(rows))

    def cross_entropy_from_rows(self, rows: Sequence[FeatureRow], target: np.ndarray) -> float:
        target = _check_target(target, len(rows))
        log_p = log_softmax(self.logits_from_rows(rows))
        mask = target > 0
        return float(-(target[mask] * log_p[mask]).sum())

    def loss_from_rows(self, rows: Sequence[FeatureRow], target: np.ndarray) -> float:
        return self.cross_entropy_from_rows(rows, target) + 0.5 * self.lam * float(self.theta @ self.theta)

    def data_gradient_from_rows(self, rows: Sequence[FeatureRow], target: np.ndarray) -> np.ndarray:
        """Σ_a (p(a) − π(a)) φ(a), the cross-entropy gradient without the L2 term."""
        target = _check_target(target, len(rows))
        diff = self.probabilities_from_rows(rows) - target
        grad = np.zeros_like(self.theta)
        for d, phi in zip(diff, rows):
            if phi:
                grad[list(phi)] += d
        return grad

    def update_from_rows(self, batch: Sequence[tuple[Sequence[FeatureRow], np.ndarray]]) -> "LinearPolicy":
        """One SGD step on the mean batch gradient, with L2 decay applied once."""
        if not batch:
            raise ValueError("SGD batch is empty")
        grad = np.mean([self.data_gradient_from_rows(rows, target) for rows, target in batch], axis=0)
        return self.with_theta(self.theta - self.alpha * grad - self.alpha * self.lam * self.theta)

    # State-level computations through a compiled feature set.

    def rows(self, cfs: CompiledFeatureSet, state: GameState, moves: Sequence[Move]) -> list[FeatureRow]:
        self.check_compiled(cfs)
        return feature_vectors(cfs, state, list(moves))

    def distribution(self, cfs: CompiledFeatureSet, state: GameState, moves: Sequence[Move]) -> ActionDistribution:
        if not moves:
            raise ValueError("Cannot build a distribution over zero legal moves")
        return ActionDistribution(tuple(moves), self.probabilities_from_rows(self.rows(cfs, state, moves)))

    def loss(self, sample: Sample, cfs: CompiledFeatureSet) -> float:
        return self.loss_from_rows(self.rows(cfs, sample.state, sample.moves), sample.target)

    def sgd_update(self, batch: Sequence[Sample], cfs: CompiledFeatureSet) -> "LinearPolicy":
        return self.update_from_rows([(self.rows(cfs, s.state, s.moves), s.target) for s in batch])


def logit(p: LinearPolicy, phi: FeatureRow) -> float:
    return p.logit(phi)


def distribution(
    p: LinearPolicy, cfs: CompiledFeatureSet, state: GameState, moves: Sequence[Move]
) -> ActionDistribution:
    return p.distribution(cfs, state, moves)


def loss(p: LinearPolicy, sample: Sample, cfs: CompiledFeatureSet) -> float:
    return p.loss(sample, cfs)


def sgd_update(p: LinearPolicy, batch: Sequence[Sample], cfs: CompiledFeatureSet) -> LinearPolicy:
    return p.sgd_update(batch, cfs)


def mean_cross_entropy(p: LinearPolicy, cfs: CompiledFeatureSet, samples: Sequence[Sample]) -> float:
    """Average cross-entropy of ``p`` against the samples' targets, without the L2 term."""
    if not samples:
        raise ValueError("No samples to evaluate")
    return float(np.mean([p.cross_entropy_from_rows(p.rows(cfs, s.state, s.moves), s.target) for s in samples]))
