"""
Command-line interface.

Subcommands: ``train``, ``eval``, ``features show|prune``, ``slowdown`` and
``games list``. Exit status is 0 on success, 1 on runtime failure and 2 on
invalid arguments.
"""

import argparse
import asyncio
import shutil
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .config import load_eval_config, load_train_config
from .evaluation import (
    CURVE_HEADER,
    MATCH_HEADER,
    SLOWDOWN_HEADER,
    AgentFactory,
    biased_agent,
    emit_learning_curve,
    find_checkpoints,
    greedy_agent,
    measure_slowdown,
    play_match,
    play_match_async,
    random_agent,
    uct_agent,
)
from .features import (
    CompiledFeatureSet,
    compile_features,
    generate_atomic_features,
    read_feature_file,
    render_feature,
    write_feature_file,
)
from .games import BUILTIN_IDS, load_builtin
from .logging import Logger, logger
from .policy import LinearPolicy
from .reports import write_csv
from .training import prune, run_self_play
from .types import DiscoveryStrategy, SearchBudget


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def non_negative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def checkpoint_list(text: str) -> tuple[int, ...]:
    return tuple(non_negative_int(part) for part in text.split(",") if part.strip())


def _add_budget(parser: argparse.ArgumentParser, wall_clock_only: bool = False) -> None:
    if wall_clock_only:
        parser.add_argument("--time-ms", type=positive_int, required=True, help="Thinking time per move (ms)")
        return
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--iterations", type=positive_int, help="MCTS iterations per move")
    group.add_argument("--time-ms", type=positive_int, help="Thinking time per move (ms)")


def _budget(args: argparse.Namespace) -> SearchBudget:
    if getattr(args, "iterations", None) is not None:
        return SearchBudget(iterations=args.iterations)
    return SearchBudget(time_ms=args.time_ms)


def _add_game(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--game", required=True, choices=BUILTIN_IDS, help="Built-in game id")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fmcts", description="Feature-biased MCTS workbench")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug logging")
    parser.add_argument("--log-file", help="Also write logs to this file")
    commands = parser.add_subparsers(dest="command", required=True)

    train = commands.add_parser("train", help="Train features and weights by self-play")
    _add_game(train)
    train.add_argument("--strategy", choices=[s.value for s in DiscoveryStrategy], help="Feature discovery strategy")
    train.add_argument("--games", type=non_negative_int, help="Self-play games")
    _add_budget(train)
    train.add_argument("--seed", type=non_negative_int, help="Root random seed")
    train.add_argument("--out", required=True, type=Path, help="Output directory")
    train.add_argument("--config", type=Path, help="JSON file with training options")
    train.add_argument("--alpha", type=float, help="SGD step size")
    train.add_argument("--lam", type=float, help="L2 coefficient")
    train.add_argument("--c-puct", type=float, help="PUCT exploration constant")
    train.add_argument("--checkpoints", type=checkpoint_list, help="Comma-separated game counts")
    train.add_argument("--initial-features", type=Path, help="Start from this feature file")
    train.add_argument("--freeze", action="store_true", help="Disable feature discovery")
    train.add_argument("--guided-moves", type=int, help="Apprentice-guided play-out moves (negative: all)")
    train.set_defaults(handler=cmd_train)

    evaluate = commands.add_parser("eval", help="Play an evaluation match or a learning curve")
    _add_game(evaluate)
    source = evaluate.add_mutually_exclusive_group(required=True)
    source.add_argument("--features", type=Path, help="Feature file of the evaluated agent")
    source.add_argument("--checkpoints", type=Path, help="Directory of checkpoint-<g>.feat files")
    evaluate.add_argument("--agent", choices=("biased", "greedy"), default="biased")
    evaluate.add_argument("--opponent", choices=("uct", "random"), default="uct")
    evaluate.add_argument("--n", type=positive_int, default=200, help="Games per match")
    _add_budget(evaluate)
    evaluate.add_argument("--seed", type=non_negative_int, default=0)
    evaluate.add_argument("--guided-moves", type=int, default=1)
    evaluate.add_argument("--parallel", action="store_true", help="Run games concurrently (FMCTS_THREADS)")
    evaluate.add_argument("--config", type=Path, help="JSON file with evaluation options")
    evaluate.add_argument("--out", type=Path, help="CSV output (match.csv or curve.csv by default)")
    evaluate.set_defaults(handler=cmd_eval)

    features = commands.add_parser("features", help="Inspect or prune feature files")
    feature_commands = features.add_subparsers(dest="features_command", required=True)
    show = feature_commands.add_parser("show", help="Print features by absolute weight")
    show.add_argument("--file", required=True, type=Path)
    show.add_argument("--top", type=positive_int, help="Only the strongest N features")
    show.add_argument("--game", choices=BUILTIN_IDS, help="Render each pattern on this game's board")
    show.set_defaults(handler=cmd_features_show)
    prune_cmd = feature_commands.add_parser("prune", help="Keep the k strongest features")
    prune_cmd.add_argument("--file", required=True, type=Path)
    prune_cmd.add_argument("--k", type=positive_int, default=15)
    prune_cmd.add_argument("--out", required=True, type=Path)
    prune_cmd.set_defaults(handler=cmd_features_prune)

    slowdown = commands.add_parser("slowdown", help="Measure biased-search slowdown against UCT")
    _add_game(slowdown)
    slowdown.add_argument("--features", type=Path, help="Feature file; atomic features with zero weights by default")
    _add_budget(slowdown, wall_clock_only=True)
    slowdown.add_argument("--games", type=positive_int, default=10)
    slowdown.add_argument("--seed", type=non_negative_int, default=0)
    slowdown.add_argument("--out", type=Path, default=Path("slowdown.csv"))
    slowdown.set_defaults(handler=cmd_slowdown)

    games = commands.add_parser("games", help="Built-in games")
    game_commands = games.add_subparsers(dest="games_command", required=True)
    list_cmd = game_commands.add_parser("list", help="List built-in games")
    list_cmd.set_defaults(handler=cmd_games_list)
    return parser


def cmd_train(args: argparse.Namespace) -> int:
    config = load_train_config(
        args.config,
        game=args.game,
        strategy=args.strategy,
        games=args.games,
        budget=_budget(args),
        seed=args.seed,
        out_dir=args.out,
        alpha=args.alpha,
        lam=args.lam,
        c_puct=args.c_puct,
        checkpoints=args.checkpoints,
        initial_features=args.initial_features,
        freeze_features=args.freeze or None,
        playout_guided_moves=args.guided_moves,
    )
    artifacts = run_self_play(config)
    print(f"{len(artifacts.feature_set)} features written to {artifacts.final_path}")
    return 0


def _opponent(args: argparse.Namespace, budget: SearchBudget, c_ucb1: float) -> AgentFactory:
    return uct_agent(budget, c_ucb1) if args.opponent == "uct" else random_agent()


def cmd_eval(args: argparse.Namespace) -> int:
    config = load_eval_config(
        args.config,
        game=args.game,
        budget=_budget(args),
        games=args.n,
        seed=args.seed,
        playout_guided_moves=args.guided_moves,
    )
    rules = load_builtin(config.game)
    opponent = _opponent(args, config.budget, config.c_ucb1)

    def make_agent(policy: LinearPolicy, cfs: CompiledFeatureSet) -> AgentFactory:
        if args.agent == "greedy":
            return greedy_agent(policy, cfs)
        return biased_agent(policy, cfs, config.budget, config.c_puct, config.playout_guided_moves)

    if args.checkpoints is not None:
        paths = find_checkpoints(args.checkpoints)
        if not paths:
            raise FileNotFoundError(f"No checkpoint-<g>.feat files in {args.checkpoints}")
        rows = emit_learning_curve(rules, paths, make_agent, opponent, config.games, config.seed)
        out = write_csv(args.out or Path("curve.csv"), rows, CURVE_HEADER)
        for row in rows:
            print(f"{row['gamesOfSelfPlay']}\t{row['winRate']}\t[{row['ciLo']}, {row['ciHi']}]")
        logger.info(f"Learning curve written to {out}")
        return 0

    fs, theta = read_feature_file(args.features)
    cfs = compile_features(fs, rules.graph)
    agent = make_agent(LinearPolicy(theta), cfs)
    if args.parallel:
        result = asyncio.run(play_match_async(rules, agent, opponent, config.games, config.seed))
    else:
        result = play_match(rules, agent, opponent, config.games, config.seed)
    out = write_csv(args.out or Path("match.csv"), (r.as_row() for r in result.records), MATCH_HEADER)
    print(result.summary())
    logger.info(f"Match records written to {out}")
    return 0


def cmd_features_show(args: argparse.Namespace) -> int:
    fs, theta = read_feature_file(args.file)
    order = sorted(range(len(fs)), key=lambda i: (-abs(theta[i]), i))
    if args.top is not None:
        order = order[: args.top]
    graph = load_builtin(args.game).graph if args.game else None
    for rank, index in enumerate(order, start=1):
        print(f"{rank}\t#{index}\tw={theta[index]:+g}\t{fs[index].describe()}")
        if graph is not None:
            print(render_feature(fs[index], graph))
            print()
    return 0


def cmd_features_prune(args: argparse.Namespace) -> int:
    fs, theta = read_feature_file(args.file)
    if len(fs) <= args.k:
        shutil.copyfile(args.file, args.out)
        print(f"{len(fs)} features kept; copied to {args.out}")
        return 0
    kept, kept_theta = prune(fs, theta, args.k)
    write_feature_file(args.out, kept, kept_theta)
    print(f"Kept {len(kept)} of {len(fs)} features in {args.out}")
    return 0


def cmd_slowdown(args: argparse.Namespace) -> int:
    rules = load_builtin(args.game)
    if args.features is not None:
        fs, theta = read_feature_file(args.features)
    else:
        fs = generate_atomic_features(rules)
        theta = np.zeros(len(fs))
    cfs = compile_features(fs, rules.graph)
    report = measure_slowdown(rules, LinearPolicy(theta), cfs, _budget(args), args.games, args.seed)
    write_csv(args.out, [report.as_row(args.game)], SLOWDOWN_HEADER)
    print(f"I_uct={report.i_uct:.1f}\tI_biased={report.i_biased:.1f}\tratio={report.ratio:.3f}")
    return 0


def cmd_games_list(args: argparse.Namespace) -> int:
    for game_id in BUILTIN_IDS:
        rules = load_builtin(game_id)
        graph = rules.graph
        print(f"{game_id}\t{rules.name}\t{graph.describe()}\t{graph.num_vertices} vertices")
    return 0


def main(argv: list[str] | None = None) -> int:
    """Main entry point for the command-line interface."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.verbose or args.log_file:
        Logger.set_debug(min(args.verbose, 2))
        Logger.configure(level=["WARNING", "INFO", "DEBUG"][min(args.verbose, 2)], log_to_file=args.log_file)

    try:
        return args.handler(args)
    except Exception as e:
        logger.error(f"{args.command} failed: {e}")
        logger.debug("Traceback", exc_info=True)
        return 1


if __name__ == "__main__":
    sys.exit(main())
