"""
Walks: relative positions on a board graph.

A walk is a sequence of clockwise turns, each a fraction of a full turn, taken
relative to the current direction before stepping to the next vertex. Turns are
kept as exact fractions; a turn that lands between two adjacency slots branches
into both neighbouring slots.
"""

import math
from collections import deque
from fractions import Fraction
from functools import lru_cache

from .graph import OFF_BOARD, BoardGraph, Position

Turn = Fraction
Walk = tuple[Fraction, ...]

EMPTY_WALK: Walk = ()


class InvalidRotationError(ValueError):
    """Raised when a rotation is not a multiple of 1 / max slot count."""


class NoPathError(ValueError):
    """Raised when no walk connects two vertices."""


def make_walk(*turns: int | str | Fraction) -> Walk:
    """Build a normalized walk, e.g. ``make_walk(0, 0, "1/4")``."""
    return tuple(Fraction(t) % 1 for t in turns)


def negate_walk(walk: Walk) -> Walk:
    return tuple((-t) % 1 for t in walk)


def _slots(raw: Fraction, n: int) -> tuple[int, ...]:
    if raw.denominator == 1:
        return (int(raw) % n,)
    return (math.floor(raw) % n, math.ceil(raw) % n)


def check_rotation(g: BoardGraph, rotation: Fraction) -> None:
    if (rotation * g.max_slot_count).denominator != 1:
        raise InvalidRotationError(
            f"Rotation {rotation} is not a multiple of 1/{g.max_slot_count}"
        )


@lru_cache(maxsize=1 << 18)
def resolve_walk(
    g: BoardGraph, anchor: int, rotation: Fraction, reflect: bool, walk: Walk
) -> frozenset[Position]:
    """Resolve ``walk`` from ``anchor`` under a rotation and optional reflection.

    Args:
        g: The board graph
        anchor: Vertex the walk starts from
        rotation: Initial rotation as a fraction of a full clockwise turn
        reflect: Whether every turn is mirrored (t -> 1 - t)
        walk: The turns to follow

    Returns:
        Every position reached over all rounding branches; a branch that steps
        off the board ends at OFF_BOARD.
    """
    rotation = Fraction(rotation)
    check_rotation(g, rotation)

    n0 = g.slot_count(anchor)
    states = {(anchor, d) for d in _slots(rotation * n0, n0)}
    results: set[Position] = set()

    for turn in walk:
        if reflect:
            turn = (-turn) % 1
        next_states = set()
        for pos, direction in states:
            n = g.slot_count(pos)
            for slot in _slots(direction + turn * n, n):
                nb = g.adjacency[pos][slot]
                if nb is None:
                    results.add(OFF_BOARD)
                    continue
                m = g.slot_count(nb)
                back = g.back_slot(pos, slot)
                for d in _slots(back + Fraction(m, 2), m):
                    next_states.add((nb, d))
        states = next_states

    results.update(pos for pos, _ in states)
    return frozenset(results)


def walk_endpoint(g: BoardGraph, anchor: int, walk: Walk) -> tuple[Position, int | None]:
    """Follow an integral walk from ``anchor`` at rotation 0.

    Returns:
        (final position, final direction slot); the slot is None off-board
    """
    pos, direction = anchor, 0
    for turn in walk:
        n = g.slot_count(pos)
        raw = direction + turn * n
        if raw.denominator != 1:
            raise ValueError(f"Walk {walk} branches at vertex {pos}")
        slot = int(raw) % n
        nb = g.adjacency[pos][slot]
        if nb is None:
            return OFF_BOARD, None
        m = g.slot_count(nb)
        direction = (g.back_slot(pos, slot) + m // 2) % m
        pos = nb
    return pos, direction


def canonical_walk(g: BoardGraph, source: int, target: int) -> Walk:
    """Shortest walk from ``source`` to ``target``, lexicographically smallest on ties.

    Breadth-first search over (vertex, direction slot) states, trying turns in
    ascending order so the first walk reaching ``target`` is the canonical one.
    """
    if source == target:
        return EMPTY_WALK

    start = (source, 0)
    parents: dict[tuple[int, int], tuple[tuple[int, int], Fraction] | None] = {start: None}
    queue = deque([start])

    while queue:
        state = queue.popleft()
        pos, direction = state
        n = g.slot_count(pos)
        for k in range(n):
            slot = (direction + k) % n
            nb = g.adjacency[pos][slot]
            if nb is None:
                continue
            m = g.slot_count(nb)
            child = (nb, (g.back_slot(pos, slot) + m // 2) % m)
            if child in parents:
                continue
            parents[child] = (state, Fraction(k, n))
            if nb == target:
                turns = []
                link = parents[child]
                while link is not None:
                    prev, turn = link
                    turns.append(turn)
                    link = parents[prev]
                return tuple(reversed(turns))
            queue.append(child)

    raise NoPathError(f"No walk from vertex {source} to vertex {target}")


def reframe_walk(walk: Walk, rotation: Fraction, reflect: bool) -> Walk:
    """Re-express an unrotated, unreflected walk in a (rotation, reflect) frame.

    The result resolved under (rotation, reflect) reaches what ``walk`` reaches
    under (0, False).
    """
    if not walk:
        return walk
    first, rest = walk[0], walk[1:]
    if reflect:
        return ((rotation - first) % 1, *negate_walk(rest))
    return ((first - rotation) % 1, *rest)


def absolute_walk(walk: Walk, rotation: Fraction, reflect: bool) -> Walk:
    """Inverse of :func:`reframe_walk`: the (0, False) walk equivalent to ``walk`` in a frame."""
    if not walk:
        return walk
    first, rest = walk[0], walk[1:]
    if reflect:
        return ((rotation - first) % 1, *negate_walk(rest))
    return ((rotation + first) % 1, *rest)
