import csv

import numpy as np
import pytest
from scipy import stats

from fmcts.features import FeatureSet, feature_vector, generate_atomic_features, read_feature_file, write_feature_file
from fmcts.games import game_for
from fmcts.policy import LinearPolicy
from fmcts.training import (
    ExperienceBuffer,
    ExperienceTuple,
    SelfPlayTrainer,
    correlation_score,
    discover_feature,
    evaluate_batch,
    pearson,
    prune,
)
from fmcts.training.selfplay import LOG_HEADER
from fmcts.types import DiscoveryStrategy, SearchBudget, TrainConfig


def uniform_tuple(rules, state) -> ExperienceTuple:
    moves = tuple(game_for(rules).legal_moves(state))
    return ExperienceTuple(state, moves, np.full(len(moves), 1 / len(moves)))


def skewed_tuple(rules, state) -> ExperienceTuple:
    moves = tuple(game_for(rules).legal_moves(state))
    target = np.zeros(len(moves))
    target[-1] = 1.0
    return ExperienceTuple(state, moves, target)


@pytest.fixture
def tictactoe_buffer(tictactoe, random_pairs, rng) -> ExperienceBuffer:
    buffer = ExperienceBuffer(200)
    for state, _ in random_pairs(tictactoe, 40, rng):
        buffer.append(skewed_tuple(tictactoe, state))
    return buffer


def atomic_slice(rules, n: int) -> FeatureSet:
    return generate_atomic_features(rules).select(range(n))


class TestExperienceBuffer:
    def test_oldest_tuples_are_evicted(self, tictactoe, random_pairs, rng):
        pairs = random_pairs(tictactoe, 5, rng)
        buffer = ExperienceBuffer(3)
        items = [uniform_tuple(tictactoe, state) for state, _ in pairs]
        for item in items:
            buffer.append(item)
        assert len(buffer) == 3
        assert all(a is b for a, b in zip(buffer, items[2:], strict=True))

    def test_rejects_bad_tuples(self, tictactoe, random_pairs, rng):
        (state, _), = random_pairs(tictactoe, 1, rng)
        moves = tuple(game_for(tictactoe).legal_moves(state))
        buffer = ExperienceBuffer(3)
        with pytest.raises(ValueError):
            buffer.append(ExperienceTuple(state, moves, np.ones(len(moves) + 1) / (len(moves) + 1)))
        with pytest.raises(ValueError):
            buffer.append(ExperienceTuple(state, moves, np.ones(len(moves))))
        with pytest.raises(ValueError):
            ExperienceBuffer(0)

    def test_sample(self, tictactoe, random_pairs, rng):
        buffer = ExperienceBuffer(10)
        assert buffer.sample(5, rng) == []
        for state, _ in random_pairs(tictactoe, 4, rng):
            buffer.append(uniform_tuple(tictactoe, state))
        assert len(buffer.sample(3, rng)) == 3
        whole = buffer.sample(20, rng)
        assert len(whole) == 4
        assert len({id(t) for t in whole}) == 4


class TestPearson:
    def test_matches_scipy(self, rng):
        for _ in range(50):
            n = int(rng.integers(3, 40))
            x = rng.normal(size=n)
            y = 0.5 * x + rng.normal(size=n)
            assert pearson(x, y) == pytest.approx(stats.pearsonr(x, y).statistic, abs=1e-9)

    def test_matches_two_pass_formula(self, rng):
        for k in range(1000):
            n = int(rng.integers(2, 30))
            x = rng.integers(0, 2, size=n).astype(float) if k % 2 else rng.normal(size=n)
            y = rng.integers(0, 2, size=n).astype(float) if k % 3 else rng.normal(size=n)
            dx, dy = x - x.mean(), y - y.mean()
            denominator = np.sqrt((dx * dx).sum() * (dy * dy).sum())
            expected = 0.0 if np.ptp(x) == 0 or np.ptp(y) == 0 else float((dx * dy).sum() / denominator)
            assert pearson(x, y) == pytest.approx(expected, abs=1e-12)

    def test_constant_series(self):
        assert pearson([1, 1, 1], [0, 1, 2]) == 0.0
        assert pearson([0, 1, 2], [3, 3, 3]) == 0.0

    def test_invalid_input(self):
        with pytest.raises(ValueError):
            pearson([1.0], [2.0])
        with pytest.raises(ValueError):
            pearson([1.0, 2.0], [1.0, 2.0, 3.0])

    def test_correlation_score(self):
        errors = np.array([1.0, -1.0, 1.0, -1.0])
        coactive = np.array([1.0, 0.0, 1.0, 0.0])
        # Perfect error correlation, but co-activity duplicates the first constituent
        assert correlation_score(errors, coactive, coactive, np.ones(4)) == pytest.approx(0.0)
        # Constituents that are always active leave the error correlation intact
        assert correlation_score(errors, coactive, np.ones(4), np.ones(4)) == pytest.approx(1.0)


class TestPrune:
    def test_keeps_largest_absolute_weights_in_order(self, tictactoe):
        fs = atomic_slice(tictactoe, 5)
        theta = np.array([0.1, -5.0, 3.0, 0.0, -3.0])
        pruned, kept = prune(fs, theta, k=2)
        assert list(pruned) == [fs[1], fs[2]]
        assert kept.tolist() == [-5.0, 3.0]

    def test_ties_go_to_the_lower_index(self, tictactoe):
        fs = atomic_slice(tictactoe, 5)
        theta = np.array([0.1, -5.0, 3.0, 0.0, -3.0])
        pruned, kept = prune(fs, theta, k=3)
        assert list(pruned) == [fs[1], fs[2], fs[4]]
        assert kept.tolist() == [-5.0, 3.0, -3.0]

    def test_small_sets_are_unchanged(self, tictactoe):
        fs = atomic_slice(tictactoe, 3)
        pruned, kept = prune(fs, np.array([1.0, 2.0, 3.0]), k=15)
        assert pruned == fs
        assert kept.tolist() == [1.0, 2.0, 3.0]

    def test_invalid_arguments(self, tictactoe):
        fs = atomic_slice(tictactoe, 3)
        with pytest.raises(ValueError):
            prune(fs, np.zeros(3), k=0)
        with pytest.raises(ValueError):
            prune(fs, np.zeros(2), k=1)


class TestDiscovery:
    def test_evaluate_batch_covers_every_move(self, tictactoe_atomic, tictactoe_buffer):
        batch = list(tictactoe_buffer)[:5]
        policy = LinearPolicy.zeros(tictactoe_atomic.num_features)
        records = evaluate_batch(batch, policy, tictactoe_atomic)
        assert len(records) == sum(len(s.moves) for s in batch)
        for record in records:
            assert record.features == frozenset(feature_vector(tictactoe_atomic, record.state, record.move))
        # Uniform apprentice against a one-hot target: errors sum to zero per state
        assert sum(r.error for r in records) == pytest.approx(0.0, abs=1e-9)

    @pytest.mark.parametrize("strategy", [DiscoveryStrategy.ADD_RANDOM, DiscoveryStrategy.CORRELATION])
    def test_finds_a_new_active_feature(self, strategy, tictactoe_atomic, tictactoe_buffer, rng):
        policy = LinearPolicy.zeros(tictactoe_atomic.num_features)
        found = discover_feature(strategy, tictactoe_buffer, policy, tictactoe_atomic, rng)
        assert found is not None
        assert found.feature not in tictactoe_atomic.feature_set
        extended = tictactoe_atomic.extend(found.feature)
        assert extended.num_features - 1 in feature_vector(extended, found.state, found.move)

    @pytest.mark.parametrize("strategy", [DiscoveryStrategy.COMBINE_RANDOM, DiscoveryStrategy.COMBINE_MAX])
    def test_worst_pair_strategies(self, strategy, tictactoe_atomic, tictactoe_buffer, rng):
        theta = rng.normal(size=tictactoe_atomic.num_features)
        found = discover_feature(strategy.value, tictactoe_buffer, LinearPolicy(theta), tictactoe_atomic, rng)
        if found is not None:
            assert found.feature not in tictactoe_atomic.feature_set
            i, j = found.constituents
            assert i.to_pos == j.to_pos == found.move.to

    def test_correlation_reports_its_score(self, tictactoe_atomic, tictactoe_buffer, rng):
        policy = LinearPolicy.zeros(tictactoe_atomic.num_features)
        found = discover_feature("correlation", tictactoe_buffer, policy, tictactoe_atomic, rng)
        assert found is not None
        assert 0.0 <= found.score <= 1.0

    def test_empty_buffer(self, tictactoe_atomic, rng):
        with pytest.raises(ValueError):
            discover_feature("add-random", ExperienceBuffer(5), LinearPolicy.zeros(tictactoe_atomic.num_features), tictactoe_atomic, rng)

    def test_unknown_strategy(self, tictactoe_atomic, tictactoe_buffer, rng):
        with pytest.raises(ValueError):
            discover_feature("combine-all", tictactoe_buffer, LinearPolicy.zeros(tictactoe_atomic.num_features), tictactoe_atomic, rng)


def small_config(tmp_path, **overrides) -> TrainConfig:
    values = dict(
        game="tictactoe",
        games=2,
        budget=SearchBudget(iterations=20),
        seed=7,
        checkpoints=(0, 1, 2),
        out_dir=tmp_path,
        discovery_batch=10,
    )
    values.update(overrides)
    return TrainConfig(**values)


class TestSelfPlayTrainer:
    def test_run_writes_checkpoints_and_log(self, tmp_path, tictactoe):
        artifacts = SelfPlayTrainer(small_config(tmp_path), tictactoe).run()
        assert sorted(artifacts.checkpoints) == [0, 1, 2]
        for games, path in artifacts.checkpoints.items():
            assert path.name == f"checkpoint-{games}.feat"
            assert path.exists()

        fs, theta = read_feature_file(artifacts.final_path)
        assert fs == artifacts.feature_set
        assert np.array_equal(theta, artifacts.policy.theta)

        initial, _ = read_feature_file(artifacts.checkpoints[0])
        assert len(initial) == 37
        assert len(fs) <= 39

        with artifacts.log_path.open(newline="", encoding="utf-8") as f:
            rows = list(csv.DictReader(f))
        assert list(rows[0]) == LOG_HEADER
        assert [int(r["game"]) for r in rows] == [1, 2]
        assert int(rows[-1]["feature_count"]) == len(fs)
        assert len(artifacts.losses) == 2
        assert all(np.isfinite(artifacts.losses))

    def test_runs_are_deterministic(self, tmp_path, tictactoe):
        first = SelfPlayTrainer(small_config(tmp_path / "a"), tictactoe).run()
        second = SelfPlayTrainer(small_config(tmp_path / "b"), tictactoe).run()
        assert first.final_path.read_bytes() == second.final_path.read_bytes()
        assert first.log_path.read_bytes() == second.log_path.read_bytes()

    def test_frozen_features(self, tmp_path, tictactoe):
        artifacts = SelfPlayTrainer(small_config(tmp_path, freeze_features=True), tictactoe).run()
        assert len(artifacts.feature_set) == 37

    def test_initial_features(self, tmp_path, tictactoe):
        fs = generate_atomic_features(tictactoe).select([0, 1, 2])
        start = write_feature_file(tmp_path / "start.feat", fs, [0.5, -0.5, 0.0])
        config = small_config(tmp_path / "run", initial_features=start, freeze_features=True, checkpoints=(0,))
        artifacts = SelfPlayTrainer(config, tictactoe).run()
        checkpoint, theta = read_feature_file(artifacts.checkpoints[0])
        assert checkpoint == fs
        assert theta.tolist() == [0.5, -0.5, 0.0]
        assert artifacts.feature_set == fs

    def test_last_game_is_always_checkpointed(self, tmp_path, tictactoe):
        artifacts = SelfPlayTrainer(small_config(tmp_path, checkpoints=(1,)), tictactoe).run()
        assert sorted(artifacts.checkpoints) == [1, 2]
        assert artifacts.checkpoints[2].read_bytes() == artifacts.final_path.read_bytes()

    def test_buffer_holds_every_move(self, tmp_path, tictactoe):
        artifacts = SelfPlayTrainer(small_config(tmp_path, games=1, checkpoints=()), tictactoe).run()
        assert 5 <= len(artifacts.buffer) <= 9
        for item in artifacts.buffer:
            assert abs(item.target.sum() - 1.0) <= 1e-9
