"""
Parser and printer for the ``.lud-mini`` game description language.

Descriptions are parenthesized ludeme trees::

    (game "Tic-Tac-Toe"
        (players 2)
        (board (square 3 3))
        (rules
            (moves (to Mover (empty)))
            (end (line length:3 win))))

Parsing happens in two stages: the text is read into a LudemeTree, then the tree
is interpreted into GameRules. Every failure is reported as a DescriptionError
subclass carrying the source location.
"""

from dataclasses import dataclass, field
from typing import Literal

import pyparsing as pp

from .rules import (
    CAPTURE_MODES,
    STEP_DIRECTIONS,
    BoardSpec,
    ConnectSidesRule,
    EndRule,
    GameRules,
    LineRule,
    MoveRule,
    NoPiecesRule,
    PlaceOnEmpty,
    ReachOppositeRule,
    StepMoveRule,
)

MAX_DEPTH = 64


class DescriptionError(ValueError):
    """Base class for game description errors, located by character offset."""

    def __init__(self, message: str, text: str, offset: int):
        self.offset = offset
        self.line = text.count("\n", 0, offset) + 1
        self.column = offset - (text.rfind("\n", 0, offset) + 1) + 1
        self.reason = message
        super().__init__(f"{message} (line {self.line}, column {self.column})")


class LexicalError(DescriptionError):
    """Malformed text: bad characters, unbalanced parentheses, broken strings."""


class UnknownLudemeError(DescriptionError):
    """A ludeme label that the language does not define."""


class ArityError(DescriptionError):
    """A known ludeme with missing or surplus arguments."""


class UnsupportedConstructError(DescriptionError):
    """A well-formed ludeme whose values or placement the engine cannot play."""


@dataclass(frozen=True)
class Atom:
    """Leaf literal: symbol, quoted string, integer or ``name:value`` keyword."""

    kind: Literal["symbol", "string", "int", "keyword"]
    value: str | int
    key: str | None = None
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class LudemeTree:
    label: str
    children: tuple["LudemeTree | Atom", ...] = ()
    offset: int = field(default=0, compare=False)

    def nodes(self) -> list["LudemeTree"]:
        return [c for c in self.children if isinstance(c, LudemeTree)]

    def atoms(self) -> list[Atom]:
        return [c for c in self.children if isinstance(c, Atom)]


def _build_grammar() -> pp.ParserElement:
    lpar = pp.Suppress("(")
    rpar = pp.Suppress(")")

    string = pp.QuotedString('"', esc_char="\\", unquote_results=True)
    string.set_parse_action(lambda loc, toks: Atom("string", toks[0], offset=loc))

    integer = pp.Regex(r"-?\d+(?![\w:-])")
    integer.set_parse_action(lambda loc, toks: Atom("int", int(toks[0]), offset=loc))

    keyword = pp.Regex(r"(?P<key>[A-Za-z][\w-]*):(?P<value>[^\s()\"]+)")
    keyword.set_parse_action(
        lambda loc, toks: Atom("keyword", toks["value"], key=toks["key"], offset=loc)
    )

    symbol = pp.Regex(r"[A-Za-z_][\w-]*")
    symbol.set_parse_action(lambda loc, toks: Atom("symbol", toks[0], offset=loc))

    label = pp.Regex(r"[A-Za-z_][\w-]*") | pp.QuotedString('"', esc_char="\\")

    node = pp.Forward()
    node <<= pp.Group(lpar + label + pp.ZeroOrMore(node | string | integer | keyword | symbol) + rpar)

    def to_tree(loc: int, toks: pp.ParseResults) -> LudemeTree:
        head, *rest = toks[0]
        return LudemeTree(head, tuple(rest), offset=loc)

    node.set_parse_action(to_tree)
    node.ignore(pp.Regex(r";[^\n]*"))
    return node


_GRAMMAR = _build_grammar()


def _scan(text: str) -> None:
    """Check parenthesis balance and string termination before parsing."""
    stack: list[int] = []
    i = 0
    while i < len(text):
        c = text[i]
        if c == '"':
            j = i + 1
            while j < len(text) and text[j] != '"':
                j += 2 if text[j] == "\\" else 1
            if j >= len(text):
                raise LexicalError("Unterminated string", text, i)
            i = j
        elif c == "(":
            stack.append(i)
            if len(stack) > MAX_DEPTH:
                raise LexicalError(f"Nesting deeper than {MAX_DEPTH}", text, i)
        elif c == ")":
            if not stack:
                raise LexicalError("Unbalanced ')'", text, i)
            stack.pop()
        elif c == ";":
            while i < len(text) and text[i] != "\n":
                i += 1
        i += 1
    if stack:
        raise LexicalError("Unclosed '('", text, stack[-1])


def parse_tree(text: str | bytes) -> LudemeTree:
    """Read a single ludeme tree from ``text``.

    Raises:
        LexicalError: If the text is not a single well-formed tree
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as e:
            raise LexicalError("Invalid UTF-8", "", e.start) from None

    _scan(text)
    try:
        result = _GRAMMAR.parse_string(text, parse_all=True)
    except pp.ParseBaseException as e:
        raise LexicalError(f"Unexpected input: {e.msg}", text, e.loc) from None
    except RecursionError:
        raise LexicalError("Description is nested too deeply", text, 0) from None
    return result[0]


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def format_tree(tree: LudemeTree, indent: int = 0) -> str:
    """Print a tree in child order; ludemes with nested ludemes break across lines."""
    head = tree.label if tree.label.replace("-", "_").isidentifier() else _quote(tree.label)
    children = tree.children
    if all(isinstance(c, Atom) or not c.nodes() for c in children):
        parts = [head] + [_format_atom(c) if isinstance(c, Atom) else format_tree(c) for c in children]
        return "(" + " ".join(parts) + ")"

    first = "(" + head
    i = 0
    while i < len(children) and isinstance(children[i], Atom):
        first += " " + _format_atom(children[i])  # type: ignore[arg-type]
        i += 1
    pad = "    " * (indent + 1)
    lines = [first]
    for child in children[i:]:
        lines.append(pad + (_format_atom(child) if isinstance(child, Atom) else format_tree(child, indent + 1)))
    return "\n".join(lines) + ")"


def _format_atom(atom: Atom) -> str:
    if atom.kind == "string":
        return _quote(str(atom.value))
    if atom.kind == "keyword":
        return f"{atom.key}:{atom.value}"
    return str(atom.value)


class _Interpreter:
    """Turns a LudemeTree into GameRules, raising located errors."""

    def __init__(self, text: str):
        self.text = text

    def error(self, cls: type[DescriptionError], message: str, offset: int) -> DescriptionError:
        return cls(message, self.text, offset)

    def expect_atoms(self, node: LudemeTree, count: int) -> list[Atom]:
        atoms = node.atoms()
        if len(atoms) != count or node.nodes():
            raise self.error(
                ArityError,
                f"'{node.label}' takes {count} literal argument(s), got {len(node.children)}",
                node.offset,
            )
        return atoms

    def int_atom(self, atom: Atom, what: str) -> int:
        if atom.kind != "int":
            raise self.error(UnsupportedConstructError, f"{what} must be an integer", atom.offset)
        return int(atom.value)

    def game(self, tree: LudemeTree) -> GameRules:
        if tree.label != "game":
            raise self.error(UnknownLudemeError, f"Expected 'game', got '{tree.label}'", tree.offset)
        if not tree.children or not isinstance(tree.children[0], Atom) or tree.children[0].kind != "string":
            raise self.error(ArityError, "'game' needs a quoted name first", tree.offset)
        name = str(tree.children[0].value)
        if tree.atoms()[1:]:
            raise self.error(ArityError, "Unexpected literal in 'game'", tree.atoms()[1].offset)

        players = 2
        board: BoardSpec | None = None
        pieces: list[str] = []
        move_rule: MoveRule | None = None
        end_rules: tuple[EndRule, ...] = ()

        for node in tree.nodes():
            if node.label == "players":
                (atom,) = self.expect_atoms(node, 1)
                players = self.int_atom(atom, "Player count")
                if players != 2:
                    raise self.error(UnsupportedConstructError, "Only 2 players are supported", atom.offset)
            elif node.label == "board":
                board = self.board(node)
            elif node.label == "equipment":
                for item in node.nodes():
                    if item.label == "piece":
                        pieces.append(self.piece(item))
                    elif item.label == "board":
                        board = self.board(item)
                    else:
                        raise self.error(UnknownLudemeError, f"Unknown equipment '{item.label}'", item.offset)
            elif node.label == "rules":
                move_rule, end_rules = self.rules(node)
            else:
                raise self.error(UnknownLudemeError, f"Unknown ludeme '{node.label}'", node.offset)

        if board is None:
            raise self.error(ArityError, "'game' has no board", tree.offset)
        if move_rule is None:
            raise self.error(ArityError, "'game' has no rules", tree.offset)
        return GameRules(
            name=name,
            board=board,
            move_rule=move_rule,
            end_rules=end_rules,
            players=players,
            pieces=tuple(pieces),
        )

    def piece(self, node: LudemeTree) -> str:
        atoms = self.expect_atoms(node, 2)
        if atoms[0].kind != "string" or atoms[1].value != "Each":
            raise self.error(UnsupportedConstructError, "Expected (piece \"<name>\" Each)", node.offset)
        return str(atoms[0].value)

    def board(self, node: LudemeTree) -> BoardSpec:
        shapes = node.nodes()
        if len(shapes) != 1 or node.atoms():
            raise self.error(ArityError, "'board' takes exactly one shape", node.offset)
        shape = shapes[0]
        if shape.label == "square":
            atoms = shape.atoms()
            if len(atoms) not in (1, 2) or shape.nodes():
                raise self.error(ArityError, "'square' takes a width and an optional height", shape.offset)
            dims = [self.int_atom(a, "Board size") for a in atoms]
            if len(dims) == 1:
                dims.append(dims[0])
        elif shape.label in ("hex-rhombus", "hex-hexagon"):
            (atom,) = self.expect_atoms(shape, 1)
            dims = [self.int_atom(atom, "Board size")]
        else:
            raise self.error(UnknownLudemeError, f"Unknown board shape '{shape.label}'", shape.offset)
        if any(d < 1 for d in dims):
            raise self.error(UnsupportedConstructError, "Board sizes must be positive", shape.offset)
        return BoardSpec(shape.label, tuple(dims))  # type: ignore[arg-type]

    def rules(self, node: LudemeTree) -> tuple[MoveRule, tuple[EndRule, ...]]:
        move_rule: MoveRule | None = None
        end_rules: list[EndRule] = []
        if node.atoms():
            raise self.error(ArityError, "Unexpected literal in 'rules'", node.atoms()[0].offset)
        for part in node.nodes():
            if part.label == "moves":
                rules = part.nodes()
                if len(rules) != 1 or part.atoms():
                    raise self.error(ArityError, "'moves' takes exactly one move rule", part.offset)
                move_rule = self.move_rule(rules[0])
            elif part.label == "end":
                if not part.nodes() or part.atoms():
                    raise self.error(ArityError, "'end' takes one or more end rules", part.offset)
                end_rules.extend(self.end_rule(r) for r in part.nodes())
            else:
                raise self.error(UnknownLudemeError, f"Unknown rules section '{part.label}'", part.offset)
        if move_rule is None:
            raise self.error(ArityError, "'rules' has no 'moves' section", node.offset)
        if not end_rules:
            raise self.error(ArityError, "'rules' has no 'end' section", node.offset)
        return move_rule, tuple(end_rules)

    def move_rule(self, node: LudemeTree) -> MoveRule:
        if node.label == "to":
            atoms, nodes = node.atoms(), node.nodes()
            if len(atoms) != 1 or len(nodes) != 1:
                raise self.error(ArityError, "'to' takes a player and a site", node.offset)
            if atoms[0].value != "Mover" or nodes[0].label != "empty" or nodes[0].children:
                raise self.error(UnsupportedConstructError, "Only (to Mover (empty)) is supported", node.offset)
            return PlaceOnEmpty()
        if node.label == "step":
            nodes, atoms = node.nodes(), node.atoms()
            if len(nodes) != 1 or len(atoms) != 1:
                raise self.error(ArityError, "'step' takes directions and a capture mode", node.offset)
            dirs = nodes[0]
            if dirs.label != "directions" or not dirs.atoms() or dirs.nodes():
                raise self.error(ArityError, "Expected (directions <dir>+)", dirs.offset)
            directions = []
            for atom in dirs.atoms():
                if atom.value not in STEP_DIRECTIONS:
                    raise self.error(UnsupportedConstructError, f"Unknown direction '{atom.value}'", atom.offset)
                directions.append(atom.value)
            capture = atoms[0]
            if capture.kind != "keyword" or capture.key != "capture" or capture.value not in CAPTURE_MODES:
                raise self.error(
                    UnsupportedConstructError,
                    f"Expected capture:<{'|'.join(CAPTURE_MODES)}>",
                    capture.offset,
                )
            return StepMoveRule(tuple(directions), capture.value)  # type: ignore[arg-type]
        raise self.error(UnknownLudemeError, f"Unknown move rule '{node.label}'", node.offset)

    def end_rule(self, node: LudemeTree) -> EndRule:
        if node.label == "line":
            atoms = self.expect_atoms(node, 2)
            length, result = atoms
            if length.kind != "keyword" or length.key != "length":
                raise self.error(ArityError, "'line' needs length:<k>", length.offset)
            try:
                k = int(length.value)
            except ValueError:
                raise self.error(UnsupportedConstructError, "Line length must be an integer", length.offset) from None
            if k < 2:
                raise self.error(UnsupportedConstructError, "Line length must be at least 2", length.offset)
            return LineRule(k, self.result(result, ("win", "loss")))
        fixed: dict[str, tuple[type, str]] = {
            "reach-opposite": (ReachOppositeRule, "win"),
            "connect-sides": (ConnectSidesRule, "win"),
            "no-pieces": (NoPiecesRule, "loss"),
        }
        if node.label in fixed:
            cls, allowed = fixed[node.label]
            (result,) = self.expect_atoms(node, 1)
            return cls(self.result(result, (allowed,)))
        raise self.error(UnknownLudemeError, f"Unknown end rule '{node.label}'", node.offset)

    def result(self, atom: Atom, allowed: tuple[str, ...]) -> str:
        if atom.kind != "symbol" or atom.value not in allowed:
            raise self.error(UnsupportedConstructError, f"Expected one of {allowed}", atom.offset)
        return str(atom.value)


def parse_game(text: str | bytes) -> GameRules:
    """Parse a game description into GameRules.

    Args:
        text: Description text (str or UTF-8 bytes)

    Returns:
        The parsed rules

    Raises:
        DescriptionError: A LexicalError, UnknownLudemeError, ArityError or
            UnsupportedConstructError with the offending location
    """
    tree = parse_tree(text)
    source = text.decode("utf-8") if isinstance(text, bytes) else text
    return _Interpreter(source).game(tree)


def rules_to_tree(rules: GameRules) -> LudemeTree:
    """Build the canonical ludeme tree describing ``rules``."""
    children: list[LudemeTree | Atom] = [Atom("string", rules.name)]
    children.append(LudemeTree("players", (Atom("int", rules.players),)))
    if rules.pieces:
        children.append(
            LudemeTree(
                "equipment",
                tuple(LudemeTree("piece", (Atom("string", p), Atom("symbol", "Each"))) for p in rules.pieces),
            )
        )
    shape = LudemeTree(rules.board.kind, tuple(Atom("int", p) for p in rules.board.params))
    children.append(LudemeTree("board", (shape,)))

    if isinstance(rules.move_rule, PlaceOnEmpty):
        move = LudemeTree("to", (Atom("symbol", "Mover"), LudemeTree("empty")))
    else:
        move = LudemeTree(
            "step",
            (
                LudemeTree("directions", tuple(Atom("symbol", d) for d in rules.move_rule.directions)),
                Atom("keyword", rules.move_rule.capture, key="capture"),
            ),
        )

    ends = []
    for rule in rules.end_rules:
        if isinstance(rule, LineRule):
            ends.append(
                LudemeTree("line", (Atom("keyword", str(rule.length), key="length"), Atom("symbol", rule.result)))
            )
        else:
            label = {
                ReachOppositeRule: "reach-opposite",
                ConnectSidesRule: "connect-sides",
                NoPiecesRule: "no-pieces",
            }[type(rule)]
            ends.append(LudemeTree(label, (Atom("symbol", rule.result),)))

    children.append(LudemeTree("rules", (LudemeTree("moves", (move,)), LudemeTree("end", tuple(ends)))))
    return LudemeTree("game", tuple(children))


def print_game(rules: GameRules) -> str:
    return format_tree(rules_to_tree(rules)) + "\n"
