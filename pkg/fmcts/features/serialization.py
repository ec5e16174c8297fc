"""
Reading and writing feature-set files.

One feature per line, tab-separated::

    w=0.25	from=-	to=[]	pat=empty@[],enemy@[0;1/4]

Walks are ``[]`` or ``[t1;t2;...]`` with exact rational turns; weights use the
shortest decimal that round-trips. Blank lines are ignored.
"""

from collections.abc import Iterable
from fractions import Fraction
from pathlib import Path

import numpy as np

from ..board import Walk
from .feature import Element, ElementKind, Feature, FeatureSet, InconsistentFeatureError, Requirement

_KINDS = {
    "off": ElementKind.OFF_BOARD,
    "empty": ElementKind.EMPTY,
    "friend": ElementKind.FRIENDLY,
    "enemy": ElementKind.ENEMY,
    "own": ElementKind.OWNED_BY,
    "item": ElementKind.ITEM_INDEX,
}

_FIELDS = ("w", "from", "to", "pat")


class FeatureFileError(ValueError):
    """A malformed feature-set file, located by 1-based line and column."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def format_walk(walk: Walk | None) -> str:
    if walk is None:
        return "-"
    return "[" + ";".join(str(t) for t in walk) + "]"


def format_feature(feature: Feature, weight: float) -> str:
    pattern = ",".join(f"{r.element.token}@{format_walk(r.walk)}" for r in feature.pattern)
    return "\t".join(
        (
            f"w={float(weight)!r}",
            f"from={format_walk(feature.from_walk)}",
            f"to={format_walk(feature.to_walk)}",
            f"pat={pattern}",
        )
    )


def serialize(fs: FeatureSet, theta: Iterable[float]) -> str:
    """Render ``fs`` and its weights; an empty set renders as an empty string."""
    weights = list(theta)
    if len(weights) != len(fs):
        raise ValueError(f"{len(fs)} features but {len(weights)} weights")
    return "".join(format_feature(f, w) + "\n" for f, w in zip(fs, weights))


class _LineParser:
    def __init__(self, text: str, line: int):
        self.text = text
        self.line = line

    def error(self, message: str, column: int) -> FeatureFileError:
        return FeatureFileError(message, self.line, column)

    def walk(self, value: str, column: int) -> Walk:
        if not (value.startswith("[") and value.endswith("]")):
            raise self.error(f"Expected a walk in brackets, got {value!r}", column)
        body = value[1:-1]
        if not body:
            return ()
        turns = []
        offset = column + 1
        for part in body.split(";"):
            try:
                turn = Fraction(part)
            except (ValueError, ZeroDivisionError):
                raise self.error(f"Invalid turn {part!r}", offset) from None
            if not 0 <= turn < 1:
                raise self.error(f"Turn {part} is outside [0, 1)", offset)
            turns.append(turn)
            offset += len(part) + 1
        return tuple(turns)

    def element(self, token: str, column: int) -> Element:
        name = token.rstrip("0123456789")
        if name not in _KINDS:
            raise self.error(f"Unknown element {token!r}", column)
        digits = token[len(name):]
        try:
            return Element(_KINDS[name], int(digits) if digits else None)
        except ValueError as e:
            raise self.error(str(e), column) from None

    def parse(self) -> tuple[Feature, float]:
        fields = self.text.split("\t")
        if len(fields) != len(_FIELDS):
            raise self.error(f"Expected {len(_FIELDS)} tab-separated fields, got {len(fields)}", 1)

        values: dict[str, tuple[str, int]] = {}
        column = 1
        for expected, field_text in zip(_FIELDS, fields):
            key, sep, value = field_text.partition("=")
            if not sep or key != expected:
                raise self.error(f"Expected field '{expected}='", column)
            values[key] = (value, column + len(key) + 1)
            column += len(field_text) + 1

        value, col = values["w"]
        try:
            weight = float(value)
        except ValueError:
            raise self.error(f"Invalid weight {value!r}", col) from None
        if not np.isfinite(weight):
            raise self.error(f"Weight must be finite, got {value}", col)

        value, col = values["from"]
        from_walk = None if value == "-" else self.walk(value, col)
        to_walk = self.walk(*values["to"])

        value, col = values["pat"]
        pattern = []
        if value:
            for item in value.split(","):
                token, at, walk_text = item.partition("@")
                if not at:
                    raise self.error(f"Expected <element>@<walk>, got {item!r}", col)
                element = self.element(token, col)
                pattern.append(Requirement(self.walk(walk_text, col + len(token) + 1), element))
                col += len(item) + 1
        try:
            return Feature.create(pattern, to_walk, from_walk), weight
        except InconsistentFeatureError as e:
            raise self.error(str(e), values["pat"][1]) from None


def parse_feature_set(text: str) -> tuple[FeatureSet, np.ndarray]:
    """Parse a feature-set file.

    Returns:
        The features and their weight vector

    Raises:
        FeatureFileError: On the first malformed or duplicate line
    """
    features: list[Feature] = []
    weights: list[float] = []
    seen: set[Feature] = set()
    for number, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        feature, weight = _LineParser(line.rstrip("\r"), number).parse()
        if feature in seen:
            raise FeatureFileError(f"Duplicate feature {feature.describe()}", number)
        seen.add(feature)
        features.append(feature)
        weights.append(weight)
    return FeatureSet(features), np.array(weights, dtype=np.float64)


def read_feature_file(path: str | Path) -> tuple[FeatureSet, np.ndarray]:
    return parse_feature_set(Path(path).read_text(encoding="utf-8"))


def write_feature_file(path: str | Path, fs: FeatureSet, theta: Iterable[float]) -> Path:
    path = Path(path)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True)
    path.write_text(serialize(fs, theta), encoding="utf-8")
    return path
