import json
import logging

import pytest
from pydantic import ValidationError

from fmcts.config import THREADS_ENV, load_config_file, load_eval_config, load_train_config, thread_limit
from fmcts.logging import Logger
from fmcts.rng import substream
from fmcts.types import DEFAULT_CHECKPOINTS, DiscoveryStrategy, SearchBudget, TrainConfig


class TestTrainConfig:
    def test_defaults(self):
        config = TrainConfig(game="hex7")
        assert config.strategy is DiscoveryStrategy.CORRELATION
        assert config.alpha == 0.05
        assert config.lam == 1e-6
        assert config.sgd_batch == 20
        assert config.discovery_batch == 30
        assert config.buffer_capacity == 200
        assert config.checkpoints == DEFAULT_CHECKPOINTS
        assert config.budget == SearchBudget(time_ms=5000)

    def test_checkpoints_are_sorted_and_deduplicated(self):
        assert TrainConfig(game="hex7", checkpoints=(50, 0, 50, 25)).checkpoints == (0, 25, 50)
        with pytest.raises(ValidationError):
            TrainConfig(game="hex7", checkpoints=(-1,))

    def test_unknown_keys_are_rejected(self):
        with pytest.raises(ValidationError):
            TrainConfig(game="hex7", learning_rate=0.1)


class TestLoading:
    def test_file_then_overrides(self, tmp_path):
        path = tmp_path / "train.json"
        path.write_text(
            json.dumps({"game": "yavalath", "games": 50, "budget": {"iterations": 100}, "strategy": "add-random"}),
            encoding="utf-8",
        )
        config = load_train_config(path, games=10, seed=None)
        assert config.game == "yavalath"
        assert config.games == 10
        assert config.seed == 0
        assert config.budget.iterations == 100
        assert config.strategy is DiscoveryStrategy.ADD_RANDOM

    def test_overrides_only(self):
        config = load_eval_config(game="tictactoe", budget=SearchBudget(iterations=5), games=4)
        assert config.games == 4
        assert config.budget.iterations == 5

    def test_invalid_file_content(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("[1, 2]", encoding="utf-8")
        with pytest.raises(ValueError):
            load_config_file(path)
        path.write_text(json.dumps({"game": "hex7", "alpha": -1}), encoding="utf-8")
        with pytest.raises(ValidationError):
            load_train_config(path)


class TestThreadLimit:
    def test_environment_wins(self, monkeypatch):
        monkeypatch.setenv(THREADS_ENV, "3")
        assert thread_limit(8) == 3

    def test_default_without_environment(self, monkeypatch):
        monkeypatch.setenv(THREADS_ENV, "")
        assert thread_limit(5) == 5
        assert thread_limit() >= 1

    @pytest.mark.parametrize("value", ["zero", "0", "-2"])
    def test_invalid_values(self, monkeypatch, value):
        monkeypatch.setenv(THREADS_ENV, value)
        with pytest.raises(ValueError):
            thread_limit()


class TestSubstream:
    def test_same_path_same_numbers(self):
        a = substream(4, "eval", 3, 1).random(5)
        b = substream(4, "eval", 3, 1).random(5)
        assert a.tolist() == b.tolist()

    def test_paths_are_independent(self):
        base = substream(4, "eval", 3, 1).random(5).tolist()
        assert substream(4, "eval", 3, 2).random(5).tolist() != base
        assert substream(4, "eval", 4, 1).random(5).tolist() != base
        assert substream(5, "eval", 3, 1).random(5).tolist() != base
        assert substream(4, "train", 3, 1).random(5).tolist() != base

    def test_negative_indices(self):
        with pytest.raises(ValueError):
            substream(0, "eval", -1)


class TestLogger:
    def test_configure_sets_level_and_file(self, tmp_path):
        log_file = tmp_path / "logs" / "run.log"
        try:
            Logger.configure(level="INFO", log_to_console=False, log_to_file=str(log_file))
            Logger.get_logger().info("checkpoint written")
            for handler in Logger.get_logger().handlers:
                handler.flush()
            assert "checkpoint written" in log_file.read_text(encoding="utf-8")
        finally:
            for handler in Logger.get_logger().handlers:
                handler.close()
            Logger.configure()

    def test_set_debug(self):
        try:
            Logger.set_debug(2)
            assert Logger.get_logger().level == logging.DEBUG
            Logger.set_debug(1)
            assert Logger.get_logger().level == logging.INFO
        finally:
            Logger.set_debug(0)
