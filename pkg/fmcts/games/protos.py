"""
Proto-features generated from move rules.

For every legal move of a game at least one proto-feature is active, which makes
them the roots from which atomic and combined features are grown.
"""

from fractions import Fraction

from ..features.feature import EMPTY, FRIEND, Feature, Requirement
from .rules import GameRules, PlaceOnEmpty, StepMoveRule

# Turns, relative to the player's forward direction, on an 8-slot board.
_STEP_TURNS = {
    "forward": Fraction(0),
    "forward-left": Fraction(7, 8),
    "forward-right": Fraction(1, 8),
}

ALWAYS_ACTIVE = Feature(pattern=(), to_walk=(), from_walk=None)


def proto_features(rules: GameRules) -> list[Feature]:
    """Features that together cover every legal move of ``rules``.

    Placement games get one feature that plays at its anchor and requires the
    anchor to be empty. Step games get one feature per step direction, anchored
    at the moved piece. Anything else falls back to the always-active feature.
    """
    rule = rules.move_rule
    if isinstance(rule, PlaceOnEmpty):
        return [Feature.create([Requirement((), EMPTY)], to_walk=())]

    if isinstance(rule, StepMoveRule):
        features = []
        for direction in rule.directions:
            turn = _STEP_TURNS[direction]
            pattern = [Requirement((), FRIEND)]
            diagonal = direction != "forward"
            captures = rule.capture == "all" or (rule.capture == "diagonal" and diagonal)
            if not captures:
                pattern.append(Requirement((turn,), EMPTY))
            features.append(Feature.create(pattern, to_walk=(turn,), from_walk=()))
        return features

    return [ALWAYS_ACTIVE]
