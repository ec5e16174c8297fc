import numpy as np
import pytest

from fmcts.games import (
    BUILTIN_IDS,
    ArityError,
    DescriptionError,
    GameRules,
    LexicalError,
    LineRule,
    PlaceOnEmpty,
    StepMoveRule,
    UnknownLudemeError,
    UnsupportedConstructError,
    builtin_games,
    load_builtin,
    parse_game,
    parse_tree,
    print_game,
)

TICTACTOE = """
(game "Tic-Tac-Toe"
    (players 2)
    (board (square 3 3))
    (rules
        (moves (to Mover (empty)))
        (end (line length:3 win))))
"""


class TestParseGame:
    def test_tictactoe(self):
        rules = parse_game(TICTACTOE)
        assert rules.name == "Tic-Tac-Toe"
        assert rules.board.kind == "square"
        assert rules.board.params == (3, 3)
        assert rules.move_rule == PlaceOnEmpty()
        assert rules.end_rules == (LineRule(3, "win"),)

    def test_bytes_input(self):
        assert parse_game(TICTACTOE.encode("utf-8")) == parse_game(TICTACTOE)

    def test_comments_are_ignored(self):
        text = "; a comment\n" + TICTACTOE.replace("(players 2)", "(players 2) ; two")
        assert parse_game(text) == parse_game(TICTACTOE)

    def test_square_with_single_dimension(self):
        rules = parse_game(TICTACTOE.replace("(square 3 3)", "(square 3)"))
        assert rules.board.params == (3, 3)

    def test_step_rule(self):
        rules = load_builtin("breakthrough6")
        assert rules.move_rule == StepMoveRule(("forward", "forward-left", "forward-right"), "diagonal")
        assert rules.pieces == ("Pawn",)

    def test_yavalath_rules(self):
        rules = load_builtin("yavalath")
        assert rules.board.kind == "hex-hexagon"
        assert rules.end_rules == (LineRule(4, "win"), LineRule(3, "loss"))

    @pytest.mark.parametrize("game_id", BUILTIN_IDS)
    def test_print_parse_round_trip(self, game_id):
        rules = load_builtin(game_id)
        assert parse_game(print_game(rules)) == rules

    def test_builtin_texts(self):
        texts = builtin_games()
        assert list(texts) == list(BUILTIN_IDS)
        assert all(isinstance(parse_game(t), GameRules) for t in texts.values())

    def test_unknown_builtin(self):
        with pytest.raises(ValueError, match="Unknown game"):
            load_builtin("chess")


class TestDescriptionErrors:
    def test_unclosed_paren(self):
        with pytest.raises(LexicalError) as info:
            parse_game('(game "x"\n  (players 2)')
        assert info.value.line == 1
        assert info.value.column == 1

    def test_unbalanced_close(self):
        with pytest.raises(LexicalError) as info:
            parse_game('(game "x"))')
        assert info.value.column == 11

    def test_unterminated_string(self):
        with pytest.raises(LexicalError):
            parse_game('(game "x)')

    def test_invalid_utf8(self):
        with pytest.raises(LexicalError):
            parse_game(b"(game \xff)")

    def test_trailing_garbage(self):
        with pytest.raises(LexicalError):
            parse_tree("(game) (game)")

    def test_unknown_ludeme_is_located(self):
        text = TICTACTOE.replace("(players 2)", "(teams 2)")
        with pytest.raises(UnknownLudemeError) as info:
            parse_game(text)
        assert info.value.line == 3

    def test_unknown_board_shape(self):
        with pytest.raises(UnknownLudemeError):
            parse_game(TICTACTOE.replace("(square 3 3)", "(triangle 3)"))

    def test_missing_board(self):
        with pytest.raises(ArityError):
            parse_game(TICTACTOE.replace("(board (square 3 3))", ""))

    def test_line_without_length(self):
        with pytest.raises(ArityError):
            parse_game(TICTACTOE.replace("(line length:3 win)", "(line 3 win)"))

    def test_three_players_unsupported(self):
        with pytest.raises(UnsupportedConstructError):
            parse_game(TICTACTOE.replace("(players 2)", "(players 3)"))

    def test_bad_capture_mode(self):
        text = builtin_games()["breakthrough6"].replace("capture:diagonal", "capture:sideways")
        with pytest.raises(UnsupportedConstructError):
            parse_game(text)

    def test_short_line_unsupported(self):
        with pytest.raises(UnsupportedConstructError):
            parse_game(TICTACTOE.replace("length:3", "length:1"))

    def test_nesting_limit(self):
        with pytest.raises(LexicalError):
            parse_tree("(" * 200 + ")" * 200)

    def test_all_errors_are_description_errors(self):
        for cls in (LexicalError, UnknownLudemeError, ArityError, UnsupportedConstructError):
            assert issubclass(cls, DescriptionError)

    def test_mutated_descriptions_parse_or_fail_cleanly(self):
        rng = np.random.default_rng(1234)
        alphabet = list('()" :;abcflnw019-\n')
        sources = list(builtin_games().values())
        for _ in range(300):
            text = list(sources[int(rng.integers(len(sources)))])
            for _ in range(int(rng.integers(1, 4))):
                pos = int(rng.integers(len(text)))
                action = int(rng.integers(3))
                if action == 0:
                    del text[pos]
                elif action == 1:
                    text.insert(pos, alphabet[int(rng.integers(len(alphabet)))])
                else:
                    text[pos] = alphabet[int(rng.integers(len(alphabet)))]
            try:
                result = parse_game("".join(text))
            except DescriptionError:
                continue
            assert isinstance(result, GameRules)
