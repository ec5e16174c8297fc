"""
Text rendering of a feature grounded on a board.
"""

from fractions import Fraction

from ..board import OFF_BOARD, BoardGraph, resolve_walk
from .feature import ElementKind, Feature

_SYMBOLS = {
    ElementKind.EMPTY: "o",
    ElementKind.FRIENDLY: "F",
    ElementKind.ENEMY: "E",
    ElementKind.OWNED_BY: "P",
    ElementKind.ITEM_INDEX: "I",
}


def _centre(g: BoardGraph) -> int:
    xs = [c[0] for c in g.coords]
    ys = [c[1] for c in g.coords]
    cx, cy = (min(xs) + max(xs)) / 2, (min(ys) + max(ys)) / 2
    return min(range(g.num_vertices), key=lambda v: (abs(g.coords[v][0] - cx) + abs(g.coords[v][1] - cy), v))


def render_feature(
    feature: Feature,
    g: BoardGraph,
    anchor: int | None = None,
    rotation: Fraction = Fraction(0),
    reflect: bool = False,
) -> str:
    """Draw ``feature`` grounded at ``anchor`` (the board centre by default).

    Legend: ``T`` destination, ``S`` moved piece, ``o`` empty, ``F`` friendly,
    ``E`` enemy, ``.`` unconstrained; off-board requirements are listed below
    the grid. Cells with alternative (branching) positions show ``?``.
    """
    anchor = _centre(g) if anchor is None else anchor
    marks: dict[int, str] = {}
    off_board: list[str] = []

    def mark(positions: frozenset, symbol: str, override: bool = False) -> None:
        for p in positions:
            if p is OFF_BOARD:
                continue
            current = marks.get(p)
            marks[p] = symbol if override or current in (None, symbol) else "?"

    for req in feature.pattern:
        positions = resolve_walk(g, anchor, rotation, reflect, req.walk)
        if req.element.kind is ElementKind.OFF_BOARD:
            off_board.append(str(list(map(str, req.walk))))
            continue
        mark(positions, _SYMBOLS[req.element.kind])
    # Action cells win over the pattern symbol drawn at the same cell
    mark(resolve_walk(g, anchor, rotation, reflect, feature.to_walk), "T", override=True)
    if feature.from_walk is not None:
        mark(resolve_walk(g, anchor, rotation, reflect, feature.from_walk), "S", override=True)

    lines = []
    if g.kind == "square":
        width, height = g.shape[1]
        for y in reversed(range(height)):
            lines.append(" ".join(marks.get(y * width + x, ".") for x in range(width)))
    else:
        rows: dict[int, list[int]] = {}
        for v, (_, r) in enumerate(g.coords):
            rows.setdefault(r, []).append(v)
        low = min(rows)
        for r in sorted(rows):
            indent = " " * (r - low if g.shape[0] == "hex-rhombus" else abs(r))
            lines.append(indent + " ".join(marks.get(v, ".") for v in rows[r]))
    if off_board:
        lines.append("off-board at: " + ", ".join(off_board))
    return "\n".join(lines)
