"""
The self-play training loop.

Two biased-MCTS agents sharing one feature set and one weight vector play each
other. After every move the visit distribution is stored and one SGD step is
taken on a batch from the buffer; after every game one feature is discovered
and appended with weight 0.
"""

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..agents import SearchAgent
from ..features import (
    CompiledFeatureSet,
    FeatureSet,
    compile_features,
    generate_atomic_features,
    read_feature_file,
    write_feature_file,
)
from ..games import GameRules, load_builtin
from ..logging import logger
from ..policy import LinearPolicy
from ..rng import substream
from ..search import BiasedSearch, final_move
from ..types import TrainConfig
from .buffer import ExperienceBuffer, ExperienceTuple
from .discovery import discover_feature

LOG_HEADER = ["game", "buffer_size", "feature_count", "mean_batch_loss", "discovered"]
CHECKPOINT_PATTERN = "checkpoint-{games}.feat"
FINAL_NAME = "final.feat"
LOG_NAME = "train-log.csv"


@dataclass
class TrainingArtifacts:
    """What a training run leaves behind.

    Attributes:
        feature_set: Final features
        policy: Final weights
        checkpoints: Game count -> checkpoint file
        log_path: Per-game CSV log
        final_path: Final feature file
        losses: Mean batch loss per game (NaN for games without updates)
    """

    feature_set: FeatureSet
    policy: LinearPolicy
    checkpoints: dict[int, Path] = field(default_factory=dict)
    log_path: Path | None = None
    final_path: Path | None = None
    losses: list[float] = field(default_factory=list)
    buffer: ExperienceBuffer | None = None


def initial_features(config: TrainConfig, rules: GameRules) -> tuple[FeatureSet, np.ndarray]:
    if config.initial_features is not None:
        fs, theta = read_feature_file(config.initial_features)
        logger.info(f"Starting from {len(fs)} features in {config.initial_features}")
        return fs, theta
    fs = generate_atomic_features(rules)
    return fs, np.zeros(len(fs))


class SelfPlayTrainer:
    """Runs a TrainConfig; one instance per run.

    Args:
        config: Run configuration
        rules: Rules to train on; loaded from ``config.game`` when omitted
    """

    def __init__(self, config: TrainConfig, rules: GameRules | None = None):
        self.config = config
        self.rules = rules or load_builtin(config.game)
        fs, theta = initial_features(config, self.rules)
        self.policy = LinearPolicy(theta, config.alpha, config.lam)
        self.cfs: CompiledFeatureSet = compile_features(fs, self.rules.graph)
        self.buffer = ExperienceBuffer(config.buffer_capacity)
        self._sgd_rng = substream(config.seed, "train", "sgd")
        self._discovery_rng = substream(config.seed, "train", "discovery")

    def _agent(self, game_index: int, seat: int) -> SearchAgent:
        search = BiasedSearch(
            self.rules,
            substream(self.config.seed, "train", "game", game_index, seat),
            self.policy,
            self.cfs,
            c=self.config.c_puct,
            playout_guided_moves=self.config.playout_guided_moves,
        )
        return SearchAgent(search, self.config.budget, final="sample", name=f"self-play-{seat}")

    def _sgd_step(self) -> float:
        batch = self.buffer.sample(self.config.sgd_batch, self._sgd_rng)
        rows_batch = [(self.policy.rows(self.cfs, s.state, s.moves), s.target) for s in batch]
        loss = float(np.mean([self.policy.loss_from_rows(rows, target) for rows, target in rows_batch]))
        self.policy = self.policy.update_from_rows(rows_batch)
        return loss

    def play_game(self, game_index: int) -> list[float]:
        """Play one self-play game, updating the weights after every move.

        Returns:
            The mean batch loss of each SGD step
        """
        agents = {1: self._agent(game_index, 1), 2: self._agent(game_index, 2)}
        game = agents[1].game
        state = game.initial_state()
        losses = []
        while not state.is_terminal:
            agent = agents[state.mover]
            result = agent.think(state)
            self.buffer.append(ExperienceTuple(state, result.moves, result.expert_distribution()))
            losses.append(self._sgd_step())
            for a in agents.values():
                a.search.update_policy(self.policy, self.cfs)
            move = final_move(result.moves, result.visits, "sample", agent.search.rng)
            for a in agents.values():
                a.observe(move)
            state = game.apply_move(state, move)
        logger.debug(f"Game {game_index}: {state.move_count} moves, {state.status.value}, winner {state.winner}")
        return losses

    def discover(self) -> str:
        found = discover_feature(
            self.config.strategy,
            self.buffer,
            self.policy,
            self.cfs,
            self._discovery_rng,
            self.config.discovery_batch,
        )
        if found is None:
            return ""
        self.cfs = self.cfs.extend(found.feature)
        self.policy = self.policy.append_feature()
        description = found.feature.describe()
        logger.info(f"Discovered feature {len(self.cfs.feature_set) - 1}: {description}")
        return description

    def checkpoint(self, out_dir: Path, games: int) -> Path:
        path = write_feature_file(out_dir / CHECKPOINT_PATTERN.format(games=games), self.cfs.feature_set, self.policy.theta)
        logger.info(f"Wrote checkpoint after {games} games to {path}")
        return path

    def run(self) -> TrainingArtifacts:
        config = self.config
        out_dir = Path(config.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        artifacts = TrainingArtifacts(self.cfs.feature_set, self.policy, buffer=self.buffer)
        artifacts.log_path = out_dir / LOG_NAME

        logger.info(
            f"Training on '{self.rules.name}': {config.games} games, strategy {config.strategy}, "
            f"budget {config.budget.describe()}, {len(self.cfs.feature_set)} initial features"
        )
        if 0 in config.checkpoints:
            artifacts.checkpoints[0] = self.checkpoint(out_dir, 0)

        with artifacts.log_path.open("w", newline="", encoding="utf-8") as log_file:
            log = csv.DictWriter(log_file, fieldnames=LOG_HEADER)
            log.writeheader()
            for game_index in range(1, config.games + 1):
                losses = self.play_game(game_index)
                mean_loss = float(np.mean(losses)) if losses else float("nan")
                artifacts.losses.append(mean_loss)

                discovered = ""
                if not config.freeze_features:
                    discovered = self.discover()

                log.writerow(
                    {
                        "game": game_index,
                        "buffer_size": len(self.buffer),
                        "feature_count": len(self.cfs.feature_set),
                        "mean_batch_loss": f"{mean_loss:.6f}",
                        "discovered": discovered,
                    }
                )
                log_file.flush()
                if game_index in config.checkpoints or game_index == config.games:
                    artifacts.checkpoints[game_index] = self.checkpoint(out_dir, game_index)

        artifacts.feature_set = self.cfs.feature_set
        artifacts.policy = self.policy
        artifacts.final_path = write_feature_file(out_dir / FINAL_NAME, self.cfs.feature_set, self.policy.theta)
        logger.info(f"Training finished with {len(self.cfs.feature_set)} features")
        return artifacts


def run_self_play(config: TrainConfig, rules: GameRules | None = None) -> TrainingArtifacts:
    """Train a feature set and weights by self-play as configured."""
    return SelfPlayTrainer(config, rules).run()
