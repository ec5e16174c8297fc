"""
Head-to-head matches between two agents.

Seats alternate: agent A moves first in even-numbered games. Each game builds
fresh agents from their factories with random streams derived from
(seed, "eval", game index, seat), so games are independent and may run
concurrently without changing the result.
"""

import asyncio
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from ..agents import BaseAgent, GreedyAgent, RandomAgent, SearchAgent
from ..config import thread_limit
from ..features import CompiledFeatureSet
from ..games import GameRules, Status, game_for
from ..logging import logger
from ..policy import LinearPolicy
from ..rng import substream
from ..search import BiasedSearch, UctSearch
from ..search.selection import DEFAULT_C
from ..types import SearchBudget
from .stats import wilson_interval

AgentFactory = Callable[[GameRules, np.random.Generator], BaseAgent]

MATCH_HEADER = ["game", "a_seat", "moves", "outcome", "winner_seat", "score_a"]


def uct_agent(budget: SearchBudget, c: float = DEFAULT_C) -> AgentFactory:
    def make(rules: GameRules, rng: np.random.Generator) -> BaseAgent:
        return SearchAgent(UctSearch(rules, rng, c), budget, final="argmax", name="uct")

    return make


def biased_agent(
    policy: LinearPolicy,
    cfs: CompiledFeatureSet,
    budget: SearchBudget,
    c: float = DEFAULT_C,
    playout_guided_moves: int = 1,
) -> AgentFactory:
    def make(rules: GameRules, rng: np.random.Generator) -> BaseAgent:
        search = BiasedSearch(rules, rng, policy, cfs, c, playout_guided_moves)
        return SearchAgent(search, budget, final="argmax", name="biased")

    return make


def greedy_agent(policy: LinearPolicy, cfs: CompiledFeatureSet) -> AgentFactory:
    def make(rules: GameRules, rng: np.random.Generator) -> BaseAgent:
        return GreedyAgent(rules, policy, cfs)

    return make


def random_agent() -> AgentFactory:
    def make(rules: GameRules, rng: np.random.Generator) -> BaseAgent:
        return RandomAgent(rules, rng)

    return make


@dataclass(frozen=True)
class GameRecord:
    index: int
    a_seat: int
    moves: int
    status: Status
    winner: int | None

    @property
    def score_a(self) -> float:
        if self.status is Status.TIE:
            return 0.5
        return 1.0 if self.winner == self.a_seat else 0.0

    def as_row(self) -> dict:
        return {
            "game": self.index,
            "a_seat": self.a_seat,
            "moves": self.moves,
            "outcome": self.status.value,
            "winner_seat": self.winner or "",
            "score_a": self.score_a,
        }


@dataclass(frozen=True)
class MatchResult:
    """Aggregate of a match from agent A's perspective; ties count half a win."""

    records: tuple[GameRecord, ...] = field(default=())

    @property
    def games_played(self) -> int:
        return len(self.records)

    @property
    def wins_a(self) -> float:
        return sum(r.score_a for r in self.records)

    @property
    def win_rate_a(self) -> float:
        return self.wins_a / self.games_played

    @property
    def ci95(self) -> tuple[float, float]:
        return wilson_interval(self.wins_a, self.games_played)

    def summary(self) -> str:
        lo, hi = self.ci95
        return f"A scored {self.wins_a:g}/{self.games_played} ({self.win_rate_a:.3f}, 95% CI [{lo:.3f}, {hi:.3f}])"


def play_game(rules: GameRules, agents: dict[int, BaseAgent], index: int, a_seat: int) -> GameRecord:
    """Play one game between the agents seated at players 1 and 2."""
    game = game_for(rules)
    state = game.initial_state()
    for agent in agents.values():
        agent.reset()
    while not state.is_terminal:
        move = agents[state.mover].select_move(state)
        for agent in agents.values():
            agent.observe(move)
        state = game.apply_move(state, move)
    return GameRecord(index, a_seat, state.move_count, state.status, state.winner)


def play_match_game(rules: GameRules, make_a: AgentFactory, make_b: AgentFactory, index: int, seed: int) -> GameRecord:
    a_seat = 1 if index % 2 == 0 else 2
    b_seat = 3 - a_seat
    agents = {
        a_seat: make_a(rules, substream(seed, "eval", index, a_seat)),
        b_seat: make_b(rules, substream(seed, "eval", index, b_seat)),
    }
    record = play_game(rules, agents, index, a_seat)
    logger.debug(f"Evaluation game {index}: A as player {a_seat}, {record.status.value}, score {record.score_a}")
    return record


def play_match(rules: GameRules, make_a: AgentFactory, make_b: AgentFactory, games: int, seed: int = 0) -> MatchResult:
    """Play ``games`` games between A and B with alternating seats.

    Returns:
        The per-game records and aggregate score of A
    """
    if games < 1:
        raise ValueError(f"A match needs at least one game, got {games}")
    result = MatchResult(tuple(play_match_game(rules, make_a, make_b, g, seed) for g in range(games)))
    logger.info(f"Match on '{rules.name}': {result.summary()}")
    return result


async def play_match_async(
    rules: GameRules,
    make_a: AgentFactory,
    make_b: AgentFactory,
    games: int,
    seed: int = 0,
    max_concurrency: int | None = None,
) -> MatchResult:
    """Concurrent variant of :func:`play_match` with identical results for the same seed."""
    if games < 1:
        raise ValueError(f"A match needs at least one game, got {games}")
    semaphore = asyncio.Semaphore(max_concurrency or thread_limit())

    async def run(index: int) -> GameRecord:
        async with semaphore:
            return await asyncio.to_thread(play_match_game, rules, make_a, make_b, index, seed)

    records = await asyncio.gather(*(run(g) for g in range(games)))
    result = MatchResult(tuple(sorted(records, key=lambda r: r.index)))
    logger.info(f"Match on '{rules.name}': {result.summary()}")
    return result
