"""
Reference matcher that re-resolves every grounding on every query.

Much slower than a compiled feature set; it exists to cross-check compiled
activity and to debug individual features.
"""

from fractions import Fraction

from ..board import BoardGraph, Position, resolve_walk
from ..games.state import GameState, Move
from .feature import Element, FeatureSet
from .instances import element_holds

InstanceKey = tuple[int, int | None, int, frozenset[tuple[Position, Element]]]


def _branches(g: BoardGraph, anchor: int, rotation: Fraction, reflect: bool, walks) -> list[list[Position]]:
    branches: list[list[Position]] = [[]]
    for walk in walks:
        positions = resolve_walk.__wrapped__(g, anchor, rotation, reflect, walk)
        branches = [prefix + [p] for prefix in branches for p in positions]
    return branches


def naive_active_instances(fs: FeatureSet, g: BoardGraph, state: GameState, move: Move) -> set[InstanceKey]:
    """Keys (feature id, from, to, tests) of every grounding active for ``move`` in ``state``."""
    k = g.max_slot_count
    active: set[InstanceKey] = set()
    for feature_id, feature in enumerate(fs):
        for anchor in range(g.num_vertices):
            for r in range(k):
                rotation = Fraction(r, k)
                for reflect in (False, True):
                    if move.to not in resolve_walk.__wrapped__(g, anchor, rotation, reflect, feature.to_walk):
                        continue
                    if feature.from_walk is None:
                        from_pos = None
                    else:
                        if move.from_ is None:
                            continue
                        reached = resolve_walk.__wrapped__(g, anchor, rotation, reflect, feature.from_walk)
                        if move.from_ not in reached:
                            continue
                        from_pos = move.from_
                    walks = [req.walk for req in feature.pattern]
                    for positions in _branches(g, anchor, rotation, reflect, walks):
                        tests = list(zip(positions, (req.element for req in feature.pattern)))
                        if all(element_holds(e, p, state.board, state.mover) for p, e in tests):
                            active.add((feature_id, from_pos, move.to, frozenset(tests)))
    return active


def naive_feature_vector(fs: FeatureSet, g: BoardGraph, state: GameState, move: Move) -> tuple[int, ...]:
    return tuple(sorted({key[0] for key in naive_active_instances(fs, g, state, move)}))
