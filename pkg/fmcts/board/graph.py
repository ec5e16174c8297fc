"""
Board graphs.

A board is a graph of vertices where each vertex lists its neighbours in fixed,
clockwise-ordered adjacency slots. Missing neighbours are kept as ``None`` slots
so that walks can detect the board edge.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Literal

# Clockwise from north: N, NE, E, SE, S, SW, W, NW as (dx, dy) with y pointing north.
SQUARE_DIRECTIONS: tuple[tuple[int, int], ...] = (
    (0, 1),
    (1, 1),
    (1, 0),
    (1, -1),
    (0, -1),
    (-1, -1),
    (-1, 0),
    (-1, 1),
)

# Axial (q, r) offsets; each entry is the previous one rotated by one sixth of a turn.
HEX_DIRECTIONS: tuple[tuple[int, int], ...] = (
    (0, -1),
    (1, -1),
    (1, 0),
    (0, 1),
    (-1, 1),
    (-1, 0),
)


class OffBoard(Enum):
    """Sentinel for positions that fall outside the board."""

    OFF_BOARD = "off"

    def __repr__(self) -> str:
        return "OFF_BOARD"


OFF_BOARD = OffBoard.OFF_BOARD

Position = int | OffBoard


@dataclass(frozen=True, eq=False)
class BoardGraph:
    """Immutable board graph with clockwise adjacency slots.

    Attributes:
        kind: "square" or "hex"
        coords: Per-vertex coordinates, (x, y) for square cells, axial (q, r) for hex cells
        adjacency: Per-vertex slot tuples; a slot holds a vertex id or None
        shape: Builder parameters, kept for rendering and descriptions
    """

    kind: Literal["square", "hex"]
    coords: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int | None, ...], ...]
    shape: tuple[str, tuple[int, ...]]
    _index: dict[tuple[int, int], int] = field(init=False, repr=False)
    _back_slots: tuple[tuple[int | None, ...], ...] = field(init=False, repr=False)
    max_slot_count: int = field(init=False)

    def __post_init__(self) -> None:
        if not self.adjacency:
            raise ValueError("A board graph needs at least one vertex")
        object.__setattr__(self, "_index", {c: v for v, c in enumerate(self.coords)})
        object.__setattr__(self, "max_slot_count", max(len(slots) for slots in self.adjacency))

        back: list[tuple[int | None, ...]] = []
        for v, slots in enumerate(self.adjacency):
            if not slots:
                raise ValueError(f"Vertex {v} has no adjacency slots")
            row = []
            for u in slots:
                if u is None:
                    row.append(None)
                    continue
                try:
                    row.append(self.adjacency[u].index(v))
                except ValueError:
                    raise ValueError(f"Adjacency is not symmetric between {v} and {u}") from None
            back.append(tuple(row))
        object.__setattr__(self, "_back_slots", tuple(back))

    def __len__(self) -> int:
        return len(self.adjacency)

    @property
    def num_vertices(self) -> int:
        return len(self.adjacency)

    def slot_count(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbour(self, v: int, slot: int) -> int | None:
        return self.adjacency[v][slot % len(self.adjacency[v])]

    def back_slot(self, v: int, slot: int) -> int:
        """Slot of the neighbour behind ``slot`` that points back to ``v``."""
        back = self._back_slots[v][slot % len(self.adjacency[v])]
        if back is None:
            raise ValueError(f"Slot {slot} of vertex {v} is off-board")
        return back

    def vertex_at(self, coord: tuple[int, int]) -> int | None:
        return self._index.get(coord)

    def line_slot_pairs(self) -> list[tuple[int, int]]:
        """Opposite slot pairs (d, d + n/2) describing the board's line directions."""
        half = self.max_slot_count // 2
        return [(d, d + half) for d in range(half)]

    def describe(self) -> str:
        name, params = self.shape
        return f"{name}({', '.join(str(p) for p in params)})"


def build_square_board(width: int, height: int) -> BoardGraph:
    """Build a rectangular board of square cells with 8 clockwise slots per vertex.

    Vertex ids run row by row from the south-west corner: ``v = y * width + x``.
    """
    if width < 1 or height < 1:
        raise ValueError(f"Board dimensions must be positive, got {width}x{height}")

    coords = tuple((x, y) for y in range(height) for x in range(width))
    adjacency = []
    for x, y in coords:
        slots = []
        for dx, dy in SQUARE_DIRECTIONS:
            nx, ny = x + dx, y + dy
            slots.append(ny * width + nx if 0 <= nx < width and 0 <= ny < height else None)
        adjacency.append(tuple(slots))
    return BoardGraph("square", coords, tuple(adjacency), ("square", (width, height)))


def _hex_board(coords: list[tuple[int, int]], shape: tuple[str, tuple[int, ...]]) -> BoardGraph:
    coords.sort(key=lambda c: (c[1], c[0]))
    index = {c: v for v, c in enumerate(coords)}
    adjacency = tuple(
        tuple(index.get((q + dq, r + dr)) for dq, dr in HEX_DIRECTIONS) for q, r in coords
    )
    return BoardGraph("hex", tuple(coords), adjacency, shape)


def build_hex_board(shape: Literal["rhombus", "hexagon"], size: int) -> BoardGraph:
    """Build a board of hexagonal cells with 6 clockwise slots per vertex.

    Args:
        shape: "rhombus" for an n x n Hex board, "hexagon" for a board with
            ``size`` cells per side (Yavalath)
        size: n for a rhombus, cells per side for a hexagon

    Returns:
        The board graph; vertex ids are ordered by (r, q)
    """
    if size < 1:
        raise ValueError(f"Hex board size must be positive, got {size}")

    if shape == "rhombus":
        coords = [(q, r) for r in range(size) for q in range(size)]
    elif shape == "hexagon":
        k = size - 1
        coords = [
            (q, r)
            for r in range(-k, k + 1)
            for q in range(-k, k + 1)
            if abs(q + r) <= k
        ]
    else:
        raise ValueError(f"Unknown hex board shape: {shape!r}")
    return _hex_board(coords, (f"hex-{shape}", (size,)))
