"""
Atomic feature generation.

An atomic feature is a proto-feature plus exactly one extra element requirement
at a walk of at most two steps. The first turn of every generated walk is fixed
to 0; rotations at compile time supply the other first-step directions.
"""

from fractions import Fraction

from ..board import BoardGraph, Walk
from ..games import protos
from ..games.rules import GameRules
from ..logging import logger
from .feature import EMPTY, ENEMY, FRIEND, OFF, Element, Feature, FeatureSet, InconsistentFeatureError, Requirement

ATOMIC_ELEMENTS: tuple[Element, ...] = (EMPTY, FRIEND, ENEMY, OFF)


def atomic_walks(g: BoardGraph) -> list[Walk]:
    """``{}``, ``{0}`` and ``{0, j/k}`` for j in 0..k-1, k the board's max slot count."""
    k = g.max_slot_count
    walks: list[Walk] = [(), (Fraction(0),)]
    walks.extend((Fraction(0), Fraction(j, k)) for j in range(k))
    return walks


def generate_atomic_features(rules: GameRules, g: BoardGraph | None = None) -> FeatureSet:
    """Proto-features followed by every consistent single-requirement extension."""
    g = g or rules.graph
    features: list[Feature] = []
    seen: set[Feature] = set()

    def add(feature: Feature) -> None:
        if feature not in seen:
            seen.add(feature)
            features.append(feature)

    proto_list = protos.proto_features(rules)
    for proto in proto_list:
        add(proto)
    for proto in proto_list:
        for walk in atomic_walks(g):
            for element in ATOMIC_ELEMENTS:
                try:
                    add(proto.with_requirement(Requirement(walk, element)))
                except InconsistentFeatureError:
                    continue

    logger.debug(f"Generated {len(features)} atomic features for '{rules.name}'")
    return FeatureSet(features)
