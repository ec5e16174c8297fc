"""Shared fixtures: built-in rules, compiled atomic feature sets and random positions."""

from collections.abc import Callable

import numpy as np
import pytest

from fmcts.features import CompiledFeatureSet, compile_features, generate_atomic_features
from fmcts.games import GameRules, GameState, Move, game_for, load_builtin

PairSampler = Callable[[GameRules, int, np.random.Generator], list[tuple[GameState, Move]]]


def sample_pairs(rules: GameRules, n: int, rng: np.random.Generator) -> list[tuple[GameState, Move]]:
    """``n`` (state, legal move) pairs met along uniformly random games."""
    game = game_for(rules)
    pairs: list[tuple[GameState, Move]] = []
    state = game.initial_state()
    while len(pairs) < n:
        if state.is_terminal:
            state = game.initial_state()
            continue
        moves = game.legal_moves(state)
        move = moves[int(rng.integers(len(moves)))]
        pairs.append((state, move))
        state = game.apply_move(state, move)
    return pairs


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(42)


@pytest.fixture
def random_pairs() -> PairSampler:
    return sample_pairs


@pytest.fixture(scope="session")
def tictactoe() -> GameRules:
    return load_builtin("tictactoe")


@pytest.fixture(scope="session")
def yavalath() -> GameRules:
    return load_builtin("yavalath")


@pytest.fixture(scope="session")
def hex7() -> GameRules:
    return load_builtin("hex7")


@pytest.fixture(scope="session")
def breakthrough6() -> GameRules:
    return load_builtin("breakthrough6")


@pytest.fixture(scope="session")
def tictactoe_atomic(tictactoe: GameRules) -> CompiledFeatureSet:
    return compile_features(generate_atomic_features(tictactoe), tictactoe.graph)


@pytest.fixture(scope="session")
def breakthrough6_atomic(breakthrough6: GameRules) -> CompiledFeatureSet:
    return compile_features(generate_atomic_features(breakthrough6), breakthrough6.graph)


@pytest.fixture(scope="session")
def yavalath_atomic(yavalath: GameRules) -> CompiledFeatureSet:
    return compile_features(generate_atomic_features(yavalath), yavalath.graph)
