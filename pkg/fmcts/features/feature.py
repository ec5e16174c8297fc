"""
Feature representation.

A feature is a pattern of element requirements at walk-relative positions plus
the action it recommends (a ``to`` walk and an optional ``from`` walk). Features
are normalized on construction (requirements sorted and deduplicated) so that
structurally equal features compare and hash equal.
"""

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from enum import IntEnum
from typing import NamedTuple

from ..board import Walk


class ElementKind(IntEnum):
    OFF_BOARD = 0
    EMPTY = 1
    FRIENDLY = 2
    ENEMY = 3
    OWNED_BY = 4
    ITEM_INDEX = 5


_TOKENS = {
    ElementKind.OFF_BOARD: "off",
    ElementKind.EMPTY: "empty",
    ElementKind.FRIENDLY: "friend",
    ElementKind.ENEMY: "enemy",
    ElementKind.OWNED_BY: "own",
    ElementKind.ITEM_INDEX: "item",
}

_PIECE_KINDS = {ElementKind.FRIENDLY, ElementKind.ENEMY, ElementKind.OWNED_BY, ElementKind.ITEM_INDEX}


@dataclass(frozen=True, slots=True)
class Element:
    """What a pattern position must contain.

    ``index`` is the player for OWNED_BY and the item index for ITEM_INDEX; every
    shipped game has one piece type per player, so a piece's item index is its
    owner.
    """

    kind: ElementKind
    index: int | None = None

    def __post_init__(self) -> None:
        parametric = self.kind in (ElementKind.OWNED_BY, ElementKind.ITEM_INDEX)
        if parametric and (self.index is None or self.index < 1):
            raise ValueError(f"{self.kind.name} needs a positive index")
        if not parametric and self.index is not None:
            raise ValueError(f"{self.kind.name} takes no index")

    def sort_key(self) -> tuple[int, int]:
        return (int(self.kind), self.index or 0)

    @property
    def token(self) -> str:
        return _TOKENS[self.kind] + (str(self.index) if self.index is not None else "")

    def __str__(self) -> str:
        return self.token


OFF = Element(ElementKind.OFF_BOARD)
EMPTY = Element(ElementKind.EMPTY)
FRIEND = Element(ElementKind.FRIENDLY)
ENEMY = Element(ElementKind.ENEMY)


def owned_by(player: int) -> Element:
    return Element(ElementKind.OWNED_BY, player)


def item_index(index: int) -> Element:
    return Element(ElementKind.ITEM_INDEX, index)


def elements_conflict(a: Element, b: Element) -> bool:
    """Whether no position can satisfy both ``a`` and ``b``."""
    if a == b:
        return False
    if a.kind in _PIECE_KINDS and b.kind in _PIECE_KINDS:
        pair = {a.kind, b.kind}
        if pair == {ElementKind.FRIENDLY, ElementKind.ENEMY}:
            return True
        if a.kind == b.kind:
            return a.index != b.index
        # Friendly/Enemy against a fixed owner or item depends on the mover
        return False
    return True


class Requirement(NamedTuple):
    walk: Walk
    element: Element

    def sort_key(self) -> tuple:
        return (len(self.walk), self.walk, self.element.sort_key())


class InconsistentFeatureError(ValueError):
    """Raised when two requirements at the same walk conflict."""


@dataclass(frozen=True, slots=True)
class Feature:
    """A pattern and the action it recommends.

    Attributes:
        pattern: Requirements sorted by (walk length, walk, element)
        to_walk: Walk from the anchor to the move's destination
        from_walk: Walk from the anchor to the moved piece, None for placements
    """

    pattern: tuple[Requirement, ...]
    to_walk: Walk = ()
    from_walk: Walk | None = None

    @classmethod
    def create(
        cls,
        pattern: Iterable[Requirement | tuple[Walk, Element]],
        to_walk: Walk = (),
        from_walk: Walk | None = None,
    ) -> "Feature":
        """Normalize and validate a feature.

        Raises:
            InconsistentFeatureError: If two requirements at one walk conflict
        """
        unique = {Requirement(tuple(w), e) for w, e in pattern}
        requirements = sorted(unique, key=Requirement.sort_key)
        by_walk: dict[Walk, list[Element]] = {}
        for req in requirements:
            for other in by_walk.get(req.walk, ()):
                if elements_conflict(other, req.element):
                    raise InconsistentFeatureError(
                        f"{other} and {req.element} conflict at walk {list(map(str, req.walk))}"
                    )
            by_walk.setdefault(req.walk, []).append(req.element)
        return cls(tuple(requirements), tuple(to_walk), None if from_walk is None else tuple(from_walk))

    def with_requirement(self, requirement: Requirement) -> "Feature":
        return Feature.create((*self.pattern, requirement), self.to_walk, self.from_walk)

    def is_restriction_of(self, other: "Feature") -> bool:
        """Whether this feature has ``other``'s action and contains all its requirements."""
        return (
            self.to_walk == other.to_walk
            and self.from_walk == other.from_walk
            and set(other.pattern) <= set(self.pattern)
        )

    def describe(self) -> str:
        def walk(w: Walk | None) -> str:
            return "-" if w is None else "{" + ", ".join(str(t) for t in w) + "}"

        pattern = ", ".join(f"{r.element}@{walk(r.walk)}" for r in self.pattern) or "(always)"
        return f"from={walk(self.from_walk)} to={walk(self.to_walk)} [{pattern}]"


class FeatureSet(Sequence[Feature]):
    """Ordered, duplicate-free collection of features.

    Indices are stable: features are only ever appended, or removed by an
    explicit selection that keeps the survivors' relative order.
    """

    def __init__(self, features: Iterable[Feature] = ()):
        self._features: tuple[Feature, ...] = ()
        self._positions: dict[Feature, int] = {}
        items = []
        for feature in features:
            if feature in self._positions:
                raise ValueError(f"Duplicate feature: {feature.describe()}")
            self._positions[feature] = len(items)
            items.append(feature)
        self._features = tuple(items)

    def __getitem__(self, index):  # type: ignore[override]
        return self._features[index]

    def __len__(self) -> int:
        return len(self._features)

    def __iter__(self) -> Iterator[Feature]:
        return iter(self._features)

    def __contains__(self, feature: object) -> bool:
        return feature in self._positions

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FeatureSet) and self._features == other._features

    def __hash__(self) -> int:
        return hash(self._features)

    def __repr__(self) -> str:
        return f"FeatureSet({len(self)} features)"

    def index_of(self, feature: Feature) -> int:
        return self._positions[feature]

    def append(self, feature: Feature) -> "FeatureSet":
        if feature in self._positions:
            raise ValueError(f"Feature already present: {feature.describe()}")
        return FeatureSet((*self._features, feature))

    def select(self, indices: Iterable[int]) -> "FeatureSet":
        return FeatureSet(self._features[i] for i in sorted(indices))
