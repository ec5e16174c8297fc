import math

import numpy as np
import pytest

from fmcts.evaluation import (
    CURVE_HEADER,
    GameRecord,
    MatchResult,
    checkpoint_games,
    emit_learning_curve,
    find_checkpoints,
    greedy_agent,
    measure_slowdown,
    play_match,
    play_match_async,
    random_agent,
    uct_agent,
    wilson_interval,
)
from fmcts.evaluation.match import MATCH_HEADER
from fmcts.features import generate_atomic_features, write_feature_file
from fmcts.games import Status
from fmcts.policy import LinearPolicy
from fmcts.types import SearchBudget


class TestWilsonInterval:
    def test_half_score(self):
        lo, hi = wilson_interval(100, 200)
        assert lo == pytest.approx(0.43136, abs=1e-4)
        assert hi == pytest.approx(0.56864, abs=1e-4)
        assert lo + hi == pytest.approx(1.0, abs=1e-12)

    def test_closed_form(self):
        z = 1.959963984540054
        for successes, n in [(3, 10), (17.5, 40), (1, 1000)]:
            p = successes / n
            centre = (p + z * z / (2 * n)) / (1 + z * z / n)
            half = z / (1 + z * z / n) * math.sqrt(p * (1 - p) / n + z * z / (4 * n * n))
            lo, hi = wilson_interval(successes, n)
            assert lo == pytest.approx(centre - half, abs=1e-9)
            assert hi == pytest.approx(centre + half, abs=1e-9)

    def test_boundaries(self):
        assert wilson_interval(0, 50)[0] == 0.0
        assert wilson_interval(50, 50)[1] == 1.0
        assert wilson_interval(0, 50)[1] < 0.1

    def test_invalid(self):
        with pytest.raises(ValueError):
            wilson_interval(0, 0)
        with pytest.raises(ValueError):
            wilson_interval(11, 10)
        with pytest.raises(ValueError):
            wilson_interval(-1, 10)


class TestMatchResult:
    def test_ties_count_half(self):
        records = (
            GameRecord(0, 1, 5, Status.WIN, 1),
            GameRecord(1, 2, 9, Status.TIE, None),
            GameRecord(2, 1, 6, Status.WIN, 2),
        )
        result = MatchResult(records)
        assert result.games_played == 3
        assert result.wins_a == 1.5
        assert result.win_rate_a == 0.5
        assert "1.5/3" in result.summary()

    def test_row_layout(self):
        row = GameRecord(1, 2, 9, Status.TIE, None).as_row()
        assert list(row) == MATCH_HEADER
        assert row["winner_seat"] == ""
        assert row["score_a"] == 0.5


class TestPlayMatch:
    def test_seats_alternate(self, tictactoe):
        result = play_match(tictactoe, random_agent(), random_agent(), 6, seed=1)
        assert [r.a_seat for r in result.records] == [1, 2, 1, 2, 1, 2]
        assert [r.index for r in result.records] == list(range(6))

    def test_same_seed_same_games(self, tictactoe):
        a = play_match(tictactoe, random_agent(), random_agent(), 8, seed=3)
        b = play_match(tictactoe, random_agent(), random_agent(), 8, seed=3)
        assert a.records == b.records

    def test_search_beats_random(self, tictactoe):
        result = play_match(tictactoe, uct_agent(SearchBudget(iterations=300)), random_agent(), 10, seed=0)
        assert result.win_rate_a >= 0.8

    def test_greedy_agent_plays(self, tictactoe, tictactoe_atomic):
        policy = LinearPolicy.zeros(tictactoe_atomic.num_features)
        result = play_match(tictactoe, greedy_agent(policy, tictactoe_atomic), random_agent(), 4)
        assert result.games_played == 4

    def test_needs_a_game(self, tictactoe):
        with pytest.raises(ValueError):
            play_match(tictactoe, random_agent(), random_agent(), 0)

    @pytest.mark.asyncio
    async def test_concurrent_match_matches_sequential(self, tictactoe):
        budget = SearchBudget(iterations=30)
        sequential = play_match(tictactoe, uct_agent(budget), random_agent(), 6, seed=9)
        concurrent = await play_match_async(tictactoe, uct_agent(budget), random_agent(), 6, seed=9, max_concurrency=3)
        assert concurrent.records == sequential.records


class TestSlowdown:
    def test_iteration_budget_is_rejected(self, tictactoe, tictactoe_atomic):
        policy = LinearPolicy.zeros(tictactoe_atomic.num_features)
        with pytest.raises(ValueError):
            measure_slowdown(tictactoe, policy, tictactoe_atomic, SearchBudget(iterations=10), 1)

    def test_wall_clock_report(self, tictactoe, tictactoe_atomic):
        policy = LinearPolicy.zeros(tictactoe_atomic.num_features)
        report = measure_slowdown(tictactoe, policy, tictactoe_atomic, SearchBudget(time_ms=5), 2)
        assert report.samples == 4
        assert report.i_uct >= 1 and report.i_biased >= 1
        assert report.ratio == pytest.approx(report.i_uct / report.i_biased)
        assert report.as_row("tictactoe")["game"] == "tictactoe"


class TestLearningCurve:
    @pytest.fixture
    def checkpoint_dir(self, tmp_path, tictactoe):
        fs = generate_atomic_features(tictactoe)
        for games in (25, 0, 100):
            write_feature_file(tmp_path / f"checkpoint-{games}.feat", fs, np.zeros(len(fs)))
        (tmp_path / "final.feat").write_text("", encoding="utf-8")
        return tmp_path

    def test_checkpoint_names(self):
        assert checkpoint_games("runs/checkpoint-25.feat") == 25
        with pytest.raises(ValueError):
            checkpoint_games("runs/final.feat")

    def test_find_checkpoints_sorts_by_games(self, checkpoint_dir):
        assert [p.name for p in find_checkpoints(checkpoint_dir)] == [
            "checkpoint-0.feat",
            "checkpoint-25.feat",
            "checkpoint-100.feat",
        ]

    def test_rows(self, tictactoe, checkpoint_dir):
        rows = emit_learning_curve(
            tictactoe, find_checkpoints(checkpoint_dir), greedy_agent, random_agent(), games=4, seed=2
        )
        assert [r["gamesOfSelfPlay"] for r in rows] == [0, 25, 100]
        for row in rows:
            assert list(row) == CURVE_HEADER
            assert row["featureCount"] == 37
            assert float(row["ciLo"]) <= float(row["winRate"]) <= float(row["ciHi"])

    def test_missing_checkpoint(self, tictactoe, tmp_path):
        with pytest.raises(FileNotFoundError):
            emit_learning_curve(tictactoe, [tmp_path / "checkpoint-5.feat"], greedy_agent, random_agent(), games=2)
