"""
Feature discovery: grow the feature set by combining co-active instances.

A batch of experience is re-evaluated with the current weights; the error of a
state-action pair is p(s,a) − π(s,a). Candidates are combinations of two
feature instances that are active for the same state-action pair. The four
strategies differ in which candidate they pick.
"""

import itertools
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field

import numpy as np

from ..features import INCOMPATIBLE, CompiledFeatureSet, Feature, FeatureInstance, active_instances, combine_instances
from ..games.state import GameState, Move
from ..logging import logger
from ..policy import LinearPolicy
from ..types import DiscoveryStrategy
from .buffer import ExperienceBuffer, ExperienceTuple
from .stats import pearson


@dataclass(frozen=True, eq=False)
class PairRecord:
    """One state-action pair of the discovery batch."""

    state: GameState
    move: Move
    error: float
    instances: tuple[FeatureInstance, ...]
    features: frozenset[int]


@dataclass(frozen=True, eq=False)
class DiscoveredFeature:
    """A new feature and the co-active instance pair that produced it.

    Attributes:
        feature: The combined feature
        constituents: The two instances that were merged
        state: State of the witnessing state-action pair
        move: Move of the witnessing state-action pair
        score: Correlation score, for the correlation strategy only
    """

    feature: Feature
    constituents: tuple[FeatureInstance, FeatureInstance]
    state: GameState
    move: Move
    score: float | None = None


@dataclass
class _Combiner:
    cfs: CompiledFeatureSet
    _cache: dict[tuple[int, int], Feature | None] = field(default_factory=dict)

    def __call__(self, i: FeatureInstance, j: FeatureInstance) -> Feature | None:
        """The combined feature if it is consistent and new, else None."""
        key = (id(i), id(j))
        if key not in self._cache:
            combined = combine_instances(self.cfs.graph, i, j)
            self._cache[key] = None if combined is INCOMPATIBLE or combined in self.cfs.feature_set else combined
        return self._cache[key]


def evaluate_batch(
    batch: Sequence[ExperienceTuple], policy: LinearPolicy, cfs: CompiledFeatureSet
) -> list[PairRecord]:
    """Errors and active instances of every state-action pair in ``batch``, with the current weights."""
    records = []
    for sample in batch:
        distribution = policy.distribution(cfs, sample.state, sample.moves)
        errors = distribution.probabilities - np.asarray(sample.target)
        for move, error in zip(sample.moves, errors):
            instances = tuple(active_instances(cfs, sample.state, move))
            records.append(
                PairRecord(sample.state, move, float(error), instances, frozenset(i.feature_id for i in instances))
            )
    return records


def _pairs(record: PairRecord) -> Iterator[tuple[FeatureInstance, FeatureInstance]]:
    return itertools.combinations(record.instances, 2)


def _first_valid(
    candidates: Sequence[tuple[PairRecord, FeatureInstance, FeatureInstance]],
    order: Sequence[int],
    combine: _Combiner,
) -> DiscoveredFeature | None:
    for index in order:
        record, i, j = candidates[index]
        combined = combine(i, j)
        if combined is not None:
            return DiscoveredFeature(combined, (i, j), record.state, record.move)
    return None


def _add_random(records, policy, combine, rng) -> DiscoveredFeature | None:
    candidates = [(r, i, j) for r in records for i, j in _pairs(r)]
    return _first_valid(candidates, rng.permutation(len(candidates)), combine)


def _worst_record(records: Sequence[PairRecord]) -> PairRecord | None:
    with_pairs = [r for r in records if len(r.instances) >= 2]
    if not with_pairs:
        return None
    return max(with_pairs, key=lambda r: abs(r.error))


def _combine_random(records, policy, combine, rng) -> DiscoveredFeature | None:
    record = _worst_record(records)
    if record is None:
        return None
    candidates = [(record, i, j) for i, j in _pairs(record)]
    return _first_valid(candidates, rng.permutation(len(candidates)), combine)


def _combine_max(records, policy, combine, rng) -> DiscoveredFeature | None:
    record = _worst_record(records)
    if record is None:
        return None
    strongest = min(record.features, key=lambda f: (-abs(policy.theta[f]), f))
    anchor_instance = next(i for i in record.instances if i.feature_id == strongest)
    partners = [j for j in record.instances if j is not anchor_instance]
    candidates = [(record, anchor_instance, j) for j in partners]
    return _first_valid(candidates, rng.permutation(len(candidates)), combine)


def correlation_score(errors: np.ndarray, coactive: np.ndarray, first: np.ndarray, second: np.ndarray) -> float:
    """|r(errors, co-activity)| · (1 − max |r(co-activity, constituent)|)."""
    r_err = pearson(errors, coactive)
    r_const = max(pearson(coactive, first), pearson(coactive, second), key=abs)
    return abs(r_err) * (1.0 - abs(r_const))


def _correlation(records, policy, combine, rng) -> DiscoveredFeature | None:
    if len(records) < 2:
        return None
    witnesses: dict[Feature, tuple[PairRecord, FeatureInstance, FeatureInstance]] = {}
    coactive: dict[Feature, set[int]] = {}
    for n, record in enumerate(records):
        for i, j in _pairs(record):
            combined = combine(i, j)
            if combined is None:
                continue
            if combined not in witnesses:
                witnesses[combined] = (record, i, j)
                coactive[combined] = set()
            coactive[combined].add(n)
    if not witnesses:
        return None

    errors = np.array([r.error for r in records])
    best: DiscoveredFeature | None = None
    for combined, (record, i, j) in witnesses.items():
        indicator = np.zeros(len(records))
        indicator[list(coactive[combined])] = 1.0
        first = np.array([1.0 if i.feature_id in r.features else 0.0 for r in records])
        second = np.array([1.0 if j.feature_id in r.features else 0.0 for r in records])
        score = correlation_score(errors, indicator, first, second)
        if best is None or score > best.score:
            best = DiscoveredFeature(combined, (i, j), record.state, record.move, score)
    return best


_STRATEGIES = {
    DiscoveryStrategy.ADD_RANDOM: _add_random,
    DiscoveryStrategy.COMBINE_RANDOM: _combine_random,
    DiscoveryStrategy.COMBINE_MAX: _combine_max,
    DiscoveryStrategy.CORRELATION: _correlation,
}


def discover_feature(
    strategy: DiscoveryStrategy | str,
    buffer: ExperienceBuffer,
    policy: LinearPolicy,
    cfs: CompiledFeatureSet,
    rng: np.random.Generator,
    batch_size: int = 30,
) -> DiscoveredFeature | None:
    """Propose one new feature from a batch of experience.

    Args:
        strategy: Which candidate to pick
        buffer: Experience to sample the batch from
        policy: Current weights, used to recompute the errors
        cfs: Current compiled feature set
        rng: Source of randomness for sampling and random strategies
        batch_size: Number of experience tuples in the batch

    Returns:
        The discovered feature, or None when no new consistent combination exists
    """
    if not len(buffer):
        raise ValueError("Feature discovery needs a nonempty experience buffer")
    strategy = DiscoveryStrategy(strategy)
    batch = buffer.sample(batch_size, rng)
    records = evaluate_batch(batch, policy, cfs)
    found = _STRATEGIES[strategy](records, policy, _Combiner(cfs), rng)
    if found is None:
        logger.info(f"Discovery ({strategy}) found no new feature in {len(records)} state-action pairs")
    else:
        logger.debug(f"Discovery ({strategy}) proposes {found.feature.describe()}")
    return found
