"""
Rule engine: legal moves, move application and terminal detection.

A Game binds GameRules to their board graph and precomputes what the rules need
(line directions, edge sets, step slots). Games are immutable and cached per
rules value, so the module-level helpers are cheap to call repeatedly.
"""

from collections import deque
from functools import lru_cache

from ..board import BoardGraph
from ..logging import logger
from .rules import (
    ConnectSidesRule,
    GameRules,
    LineRule,
    NoPiecesRule,
    PlaceOnEmpty,
    ReachOppositeRule,
    StepMoveRule,
)
from .state import EMPTY, GameState, IllegalMoveError, Move, Status, TerminalStateError

# Slot offsets on an 8-slot square board relative to a player's forward slot.
_STEP_OFFSETS = {"forward": 0, "forward-left": -1, "forward-right": 1}


class Game:
    """Executable form of GameRules."""

    def __init__(self, rules: GameRules):
        self.rules = rules
        self.graph: BoardGraph = rules.graph
        self._line_pairs = self.graph.line_slot_pairs()
        self._win_lines = sorted(
            {r.length for r in rules.end_rules if isinstance(r, LineRule) and r.result == "win"}
        )
        self._loss_lines = sorted(
            {r.length for r in rules.end_rules if isinstance(r, LineRule) and r.result == "loss"}
        )
        self._connect = any(isinstance(r, ConnectSidesRule) for r in rules.end_rules)
        self._reach = any(isinstance(r, ReachOppositeRule) for r in rules.end_rules)
        self._no_pieces = any(isinstance(r, NoPiecesRule) for r in rules.end_rules)

        xs = [c[0] for c in self.graph.coords]
        ys = [c[1] for c in self.graph.coords]
        low_y, high_y = min(ys), max(ys)
        low_x, high_x = min(xs), max(xs)
        # player -> (start side, goal side)
        self._sides = {
            1: (
                frozenset(v for v, c in enumerate(self.graph.coords) if c[1] == low_y),
                frozenset(v for v, c in enumerate(self.graph.coords) if c[1] == high_y),
            ),
            2: (
                frozenset(v for v, c in enumerate(self.graph.coords) if c[0] == low_x),
                frozenset(v for v, c in enumerate(self.graph.coords) if c[0] == high_x),
            ),
        }
        # Player 1 advances towards +y (north), player 2 towards -y
        self._home_ranks = {1: (low_y, low_y + 1), 2: (high_y, high_y - 1)}
        self._goal_rank = {1: high_y, 2: low_y}

        self._step_slots: dict[int, tuple[tuple[int, bool], ...]] = {}
        if isinstance(rules.move_rule, StepMoveRule):
            if self.graph.kind != "square":
                raise ValueError("Step move rules need a square board")
            rule = rules.move_rule
            for player, base in ((1, 0), (2, 4)):
                slots = []
                for direction in rule.directions:
                    offset = _STEP_OFFSETS[direction]
                    may_capture = rule.capture == "all" or (rule.capture == "diagonal" and offset != 0)
                    slots.append(((base + offset) % 8, may_capture))
                self._step_slots[player] = tuple(slots)
        if self._connect and self.graph.kind != "hex":
            logger.warning(f"Connection rule on a {self.graph.kind} board in '{rules.name}'")

    def initial_state(self) -> GameState:
        board = [EMPTY] * self.graph.num_vertices
        if isinstance(self.rules.move_rule, StepMoveRule):
            for v, (_, y) in enumerate(self.graph.coords):
                for player, ranks in self._home_ranks.items():
                    if y in ranks:
                        board[v] = player
        return GameState(tuple(board))

    def legal_moves(self, state: GameState) -> list[Move]:
        """Legal moves for the mover, ascending by (from, to)."""
        if state.is_terminal:
            raise TerminalStateError("No legal moves in a terminal state")
        return self._generate(state)

    def _generate(self, state: GameState) -> list[Move]:
        board = state.board
        if isinstance(self.rules.move_rule, PlaceOnEmpty):
            return [Move(None, v) for v, owner in enumerate(board) if owner == EMPTY]

        mover, opponent = state.mover, state.opponent
        moves = []
        adjacency = self.graph.adjacency
        for v, owner in enumerate(board):
            if owner != mover:
                continue
            targets = []
            for slot, may_capture in self._step_slots[mover]:
                to = adjacency[v][slot]
                if to is None:
                    continue
                if board[to] == EMPTY or (may_capture and board[to] == opponent):
                    targets.append(to)
            moves.extend(Move(v, to) for to in sorted(targets))
        return moves

    def apply_move(self, state: GameState, move: Move, validate: bool = True) -> GameState:
        """Play ``move`` and return the successor state.

        Args:
            state: Current state
            move: Move to play
            validate: Check legality first (search code passes moves it generated itself)

        Raises:
            IllegalMoveError: If the move is not legal in ``state``
        """
        if state.is_terminal:
            raise TerminalStateError("Cannot play a move in a terminal state")
        if validate and move not in self._generate(state):
            raise IllegalMoveError(f"Move {move} is not legal for player {state.mover}")

        board = list(state.board)
        mover = state.mover
        if move.from_ is not None:
            board[move.from_] = EMPTY
        board[move.to] = mover
        after = tuple(board)

        status, winner = self._outcome(after, mover, move)
        count = state.move_count + 1
        next_state = GameState(after, 3 - mover, count, status, winner)
        if status is Status.ONGOING:
            if not self._has_moves(next_state):
                next_state = GameState(after, 3 - mover, count, Status.TIE, None)
            elif count >= self.rules.move_cap:
                next_state = GameState(after, 3 - mover, count, Status.TIE, None)
        return next_state

    def _outcome(self, board: tuple[int, ...], mover: int, move: Move) -> tuple[Status, int | None]:
        opponent = 3 - mover
        if self._win_lines or self._loss_lines:
            longest = self.longest_line(board, move.to)
            if self._win_lines and longest >= self._win_lines[0]:
                return Status.WIN, mover
            if self._loss_lines and longest >= self._loss_lines[0]:
                return Status.WIN, opponent
        if self._connect and self._connects(board, mover, move.to):
            return Status.WIN, mover
        if self._reach and self.graph.coords[move.to][1] == self._goal_rank[mover]:
            return Status.WIN, mover
        if self._no_pieces and opponent not in board:
            return Status.WIN, mover
        return Status.ONGOING, None

    def longest_line(self, board: tuple[int, ...], v: int) -> int:
        """Length of the longest straight line of ``board[v]``'s pieces through ``v``."""
        owner = board[v]
        adjacency = self.graph.adjacency
        best = 0
        for a, b in self._line_pairs:
            length = 1
            for slot in (a, b):
                u = adjacency[v][slot]
                while u is not None and board[u] == owner:
                    length += 1
                    u = adjacency[u][slot]
            best = max(best, length)
        return best

    def _connects(self, board: tuple[int, ...], player: int, start: int) -> bool:
        first, second = self._sides[player]
        seen = {start}
        queue = deque([start])
        touches_first = touches_second = False
        while queue:
            v = queue.popleft()
            touches_first = touches_first or v in first
            touches_second = touches_second or v in second
            if touches_first and touches_second:
                return True
            for u in self.graph.adjacency[v]:
                if u is not None and u not in seen and board[u] == player:
                    seen.add(u)
                    queue.append(u)
        return False

    def _has_moves(self, state: GameState) -> bool:
        if isinstance(self.rules.move_rule, PlaceOnEmpty):
            return EMPTY in state.board
        return bool(self._generate(state))


@lru_cache(maxsize=64)
def game_for(rules: GameRules) -> Game:
    return Game(rules)


def initial_state(rules: GameRules) -> GameState:
    return game_for(rules).initial_state()


def legal_moves(rules: GameRules, state: GameState) -> list[Move]:
    return game_for(rules).legal_moves(state)


def apply_move(rules: GameRules, state: GameState, move: Move) -> GameState:
    return game_for(rules).apply_move(state, move)
