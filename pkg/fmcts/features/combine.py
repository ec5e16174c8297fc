"""
Combining two feature instances into a new feature.

The combined feature lives in the frame of the first instance: its pattern is
kept verbatim and its action walks are reused, while each requirement of the
second instance is re-expressed as a walk from the first instance's anchor.
"""

from enum import Enum
from fractions import Fraction

from ..board import BoardGraph, NoPathError, Walk, absolute_walk, canonical_walk, reframe_walk, walk_endpoint
from .feature import Feature, InconsistentFeatureError, Requirement
from .instances import FeatureInstance


class Incompatible(Enum):
    """Returned when two instances cannot be merged into a consistent feature."""

    INCOMPATIBLE = "incompatible"


INCOMPATIBLE = Incompatible.INCOMPATIBLE


def transfer_walk(g: BoardGraph, i: FeatureInstance, j: FeatureInstance, walk: Walk) -> Walk:
    """Express ``walk``, taken in ``j``'s frame, as a walk in ``i``'s frame.

    Raises:
        NoPathError: If ``j``'s anchor cannot be reached from ``i``'s
    """
    absolute = absolute_walk(walk, j.rotation, j.reflect)
    if i.anchor != j.anchor:
        prefix = canonical_walk(g, i.anchor, j.anchor)
        if not absolute:
            absolute = prefix
        else:
            _, arrival = walk_endpoint(g, i.anchor, prefix)
            n = g.slot_count(j.anchor)
            assert arrival is not None
            first = (absolute[0] - Fraction(arrival, n)) % 1
            absolute = prefix + (first,) + absolute[1:]
    return reframe_walk(absolute, i.rotation, i.reflect)


def combine_instances(g: BoardGraph, i: FeatureInstance, j: FeatureInstance) -> Feature | Incompatible:
    """Merge the patterns of two instances that were active for the same move.

    Returns:
        The normalized combined feature, or INCOMPATIBLE when the merged
        requirements conflict or the anchors are disconnected
    """
    if i.action != j.action:
        raise ValueError(f"Instances recommend different actions: {i.action} vs {j.action}")
    if i.feature_id == j.feature_id and i.anchor == j.anchor and i.rotation == j.rotation and i.reflect == j.reflect:
        return i.feature

    requirements = list(i.feature.pattern)
    try:
        for req in j.feature.pattern:
            requirements.append(Requirement(transfer_walk(g, i, j, req.walk), req.element))
        return Feature.create(requirements, i.feature.to_walk, i.feature.from_walk)
    except (InconsistentFeatureError, NoPathError):
        return INCOMPATIBLE
