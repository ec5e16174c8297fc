"""
Feature instances and the compiled, board-specific feature index.

Compiling grounds every feature at every (anchor, rotation, reflection) of a
board, resolves its walks to absolute positions and indexes the resulting
instances by the action they recommend. Activity queries then only test the
instances filed under the queried move.
"""

import itertools
from collections import defaultdict
from collections.abc import Iterator
from dataclasses import dataclass, field
from fractions import Fraction

from ..board import OFF_BOARD, BoardGraph, Position, resolve_walk
from ..games.state import EMPTY as EMPTY_CELL
from ..games.state import GameState, Move
from ..logging import logger
from .feature import Element, ElementKind, Feature, FeatureSet, elements_conflict

ActionKey = tuple[int | None, int]
Test = tuple[Position, Element]


def _test_sort_key(test: Test) -> tuple:
    pos, element = test
    return (pos is OFF_BOARD, -1 if pos is OFF_BOARD else pos, element.sort_key())


@dataclass(frozen=True, slots=True, eq=False)
class FeatureInstance:
    """A feature grounded at an anchor under a rotation and reflection."""

    feature_id: int
    anchor: int
    rotation: Fraction
    reflect: bool
    from_pos: int | None
    to_pos: int
    tests: tuple[Test, ...]
    feature: Feature = field(repr=False)

    @property
    def action(self) -> ActionKey:
        return (self.from_pos, self.to_pos)

    @property
    def key(self) -> tuple:
        """Identity after resolution; groundings with equal keys are duplicates."""
        return (self.feature_id, self.from_pos, self.to_pos, self.tests)


def element_holds(element: Element, pos: Position, board: tuple[int, ...], mover: int) -> bool:
    """Whether ``element`` is satisfied at ``pos`` from ``mover``'s perspective."""
    kind = element.kind
    if kind is ElementKind.OFF_BOARD:
        return pos is OFF_BOARD
    if pos is OFF_BOARD:
        return False
    owner = board[pos]
    if kind is ElementKind.EMPTY:
        return owner == EMPTY_CELL
    if kind is ElementKind.FRIENDLY:
        return owner == mover
    if kind is ElementKind.ENEMY:
        return owner != EMPTY_CELL and owner != mover
    # OWNED_BY and ITEM_INDEX: one piece type per player, so the item index is the owner
    return owner == element.index


def ground_feature(g: BoardGraph, feature_id: int, feature: Feature) -> Iterator[FeatureInstance]:
    """Yield every on-board grounding of ``feature``, one per rounding branch.

    Groundings whose action leaves the board, or whose tests demand conflicting
    elements at one position, are skipped. Duplicates are not removed here.
    """
    k = g.max_slot_count
    rotations = [Fraction(r, k) for r in range(k)]
    for anchor in range(g.num_vertices):
        for rotation in rotations:
            for reflect in (False, True):
                to_set = [p for p in resolve_walk(g, anchor, rotation, reflect, feature.to_walk) if p is not OFF_BOARD]
                if not to_set:
                    continue
                if feature.from_walk is None:
                    from_set: list[int | None] = [None]
                else:
                    from_set = [
                        p for p in resolve_walk(g, anchor, rotation, reflect, feature.from_walk) if p is not OFF_BOARD
                    ]
                    if not from_set:
                        continue
                choices = [
                    sorted(resolve_walk(g, anchor, rotation, reflect, req.walk), key=lambda p: (p is OFF_BOARD, -1 if p is OFF_BOARD else p))
                    for req in feature.pattern
                ]
                for positions in itertools.product(*choices):
                    tests = _merge_tests(zip(positions, (r.element for r in feature.pattern)))
                    if tests is None:
                        continue
                    for from_pos in from_set:
                        for to_pos in to_set:
                            yield FeatureInstance(
                                feature_id, anchor, rotation, reflect, from_pos, to_pos, tests, feature
                            )


def _merge_tests(tests: Iterator[Test]) -> tuple[Test, ...] | None:
    merged: dict[Position, list[Element]] = {}
    for pos, element in tests:
        present = merged.setdefault(pos, [])
        if element in present:
            continue
        if any(elements_conflict(element, e) for e in present):
            return None
        present.append(element)
    return tuple(sorted(((p, e) for p, es in merged.items() for e in es), key=_test_sort_key))


@dataclass(frozen=True, eq=False)
class CompiledFeatureSet:
    """A FeatureSet compiled against one board.

    Attributes:
        feature_set: The features, in index order
        graph: The board they were grounded on
        index: Action key -> deduplicated instances recommending that action
    """

    feature_set: FeatureSet
    graph: BoardGraph
    index: dict[ActionKey, tuple[FeatureInstance, ...]]

    @property
    def num_features(self) -> int:
        return len(self.feature_set)

    @property
    def num_instances(self) -> int:
        return sum(len(v) for v in self.index.values())

    def instances(self) -> Iterator[FeatureInstance]:
        for key in sorted(self.index, key=lambda k: (-1 if k[0] is None else k[0], k[1])):
            yield from self.index[key]

    def extend(self, feature: Feature) -> "CompiledFeatureSet":
        """Append ``feature`` and ground only it; equal to recompiling the grown set."""
        fs = self.feature_set.append(feature)
        index = {k: list(v) for k, v in self.index.items()}
        seen: set[tuple] = set()
        for instance in ground_feature(self.graph, len(fs) - 1, feature):
            if instance.key not in seen:
                seen.add(instance.key)
                index.setdefault(instance.action, []).append(instance)
        return CompiledFeatureSet(fs, self.graph, {k: tuple(v) for k, v in index.items()})

    def lookup(self, move: Move) -> tuple[FeatureInstance, ...]:
        found = self.index.get((move.from_, move.to), ())
        if move.from_ is not None:
            found = found + self.index.get((None, move.to), ())
        return found


def compile_features(fs: FeatureSet, g: BoardGraph) -> CompiledFeatureSet:
    """Ground ``fs`` on ``g`` and index the deduplicated instances by action."""
    index: dict[ActionKey, list[FeatureInstance]] = defaultdict(list)
    seen: set[tuple] = set()
    for feature_id, feature in enumerate(fs):
        for instance in ground_feature(g, feature_id, feature):
            if instance.key in seen:
                continue
            seen.add(instance.key)
            index[instance.action].append(instance)
    compiled = CompiledFeatureSet(fs, g, {k: tuple(v) for k, v in index.items()})
    logger.debug(
        f"Compiled {len(fs)} features into {compiled.num_instances} instances on {g.describe()}"
    )
    return compiled


def active_instances(cfs: CompiledFeatureSet, state: GameState, move: Move) -> list[FeatureInstance]:
    """Instances filed under ``move`` whose tests all hold in ``state``."""
    board, mover = state.board, state.mover
    return [
        instance
        for instance in cfs.lookup(move)
        if all(element_holds(element, pos, board, mover) for pos, element in instance.tests)
    ]


def feature_vector(cfs: CompiledFeatureSet, state: GameState, move: Move) -> tuple[int, ...]:
    """Sparse binary feature vector: ascending indices of the active features."""
    board, mover = state.board, state.mover
    active = {
        instance.feature_id
        for instance in cfs.lookup(move)
        if all(element_holds(element, pos, board, mover) for pos, element in instance.tests)
    }
    return tuple(sorted(active))


def feature_vectors(cfs: CompiledFeatureSet, state: GameState, moves: list[Move]) -> list[tuple[int, ...]]:
    return [feature_vector(cfs, state, move) for move in moves]
