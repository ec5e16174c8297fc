from fractions import Fraction

import pytest

from fmcts.board import make_walk
from fmcts.features import (
    EMPTY,
    ENEMY,
    FRIEND,
    OFF,
    ElementKind,
    Feature,
    FeatureSet,
    InconsistentFeatureError,
    Requirement,
    active_instances,
    compile_features,
    feature_vector,
    generate_atomic_features,
    naive_active_instances,
    naive_feature_vector,
    owned_by,
)
from fmcts.features.atomic import atomic_walks
from fmcts.features.feature import Element, elements_conflict, item_index
from fmcts.games import BUILTIN_IDS, Move, apply_move, initial_state, load_builtin
from fmcts.games.protos import proto_features


def compiled_keys(instances) -> set:
    return {(i.feature_id, i.from_pos, i.to_pos, frozenset(i.tests)) for i in instances}


class TestElements:
    def test_conflicts(self):
        assert elements_conflict(EMPTY, FRIEND)
        assert elements_conflict(FRIEND, ENEMY)
        assert elements_conflict(OFF, EMPTY)
        assert elements_conflict(owned_by(1), owned_by(2))
        assert not elements_conflict(FRIEND, FRIEND)
        assert not elements_conflict(FRIEND, owned_by(1))

    def test_parametric_elements_need_an_index(self):
        with pytest.raises(ValueError):
            Element(ElementKind.OWNED_BY)
        with pytest.raises(ValueError):
            Element(ElementKind.EMPTY, 1)

    def test_tokens(self):
        assert [e.token for e in (OFF, EMPTY, FRIEND, ENEMY, owned_by(2))] == ["off", "empty", "friend", "enemy", "own2"]

    def test_item_index_elements(self):
        assert item_index(1).token == "item1"
        assert elements_conflict(item_index(1), item_index(2))
        assert elements_conflict(item_index(1), EMPTY)
        assert not elements_conflict(item_index(1), FRIEND)
        assert not elements_conflict(item_index(2), owned_by(2))
        with pytest.raises(ValueError):
            item_index(0)


class TestFeature:
    def test_normalization_ignores_order_and_duplicates(self):
        a = Feature.create([Requirement(make_walk(0), FRIEND), Requirement((), EMPTY)])
        b = Feature.create([((), EMPTY), (make_walk(0), FRIEND), (make_walk(0), FRIEND)])
        assert a == b
        assert hash(a) == hash(b)
        assert a.pattern[0] == Requirement((), EMPTY)

    def test_conflicting_requirements(self):
        with pytest.raises(InconsistentFeatureError):
            Feature.create([((), EMPTY), ((), FRIEND)])

    def test_restriction(self):
        base = Feature.create([((), EMPTY)])
        wider = base.with_requirement(Requirement(make_walk(0), ENEMY))
        assert wider.is_restriction_of(base)
        assert not base.is_restriction_of(wider)

    def test_describe(self):
        feature = Feature.create([((), EMPTY), (make_walk(0, "1/4"), ENEMY)])
        assert feature.describe() == "from=- to={} [empty@{}, enemy@{0, 1/4}]"


class TestFeatureSet:
    def test_rejects_duplicates(self):
        f = Feature.create([((), EMPTY)])
        with pytest.raises(ValueError):
            FeatureSet([f, f])
        with pytest.raises(ValueError):
            FeatureSet([f]).append(f)

    def test_append_and_select_keep_order(self):
        features = [Feature.create([((), EMPTY), (make_walk(0), e)]) for e in (EMPTY, FRIEND, ENEMY, OFF)]
        fs = FeatureSet(features[:3]).append(features[3])
        assert list(fs) == features
        assert fs.index_of(features[2]) == 2
        assert list(fs.select([3, 0])) == [features[0], features[3]]


class TestProtoFeatures:
    def test_placement_proto(self, tictactoe):
        assert proto_features(tictactoe) == [Feature.create([((), EMPTY)], to_walk=())]

    def test_step_protos(self, breakthrough6):
        protos = proto_features(breakthrough6)
        assert len(protos) == 3
        assert all(p.from_walk == () for p in protos)
        assert [p.to_walk for p in protos] == [make_walk(0), make_walk("7/8"), make_walk("1/8")]
        # Forward steps cannot capture, so the forward proto requires an empty target
        assert Requirement(make_walk(0), EMPTY) in protos[0].pattern

    @pytest.mark.parametrize("game_id", BUILTIN_IDS)
    def test_some_proto_is_active_for_every_move(self, game_id, random_pairs, rng):
        rules = load_builtin(game_id)
        cfs = compile_features(FeatureSet(proto_features(rules)), rules.graph)
        for state, move in random_pairs(rules, 300, rng):
            assert feature_vector(cfs, state, move)


class TestAtomicFeatures:
    def test_walks(self, tictactoe):
        walks = atomic_walks(tictactoe.graph)
        assert walks[:2] == [(), (Fraction(0),)]
        assert len(walks) == 10

    def test_tictactoe_count(self, tictactoe):
        fs = generate_atomic_features(tictactoe)
        assert len(fs) == 37
        assert fs[0] == proto_features(tictactoe)[0]

    def test_hex_count(self, yavalath):
        assert len(generate_atomic_features(yavalath)) == 29

    def test_breakthrough_count(self, breakthrough6):
        fs = generate_atomic_features(breakthrough6)
        assert len(fs) == 107
        assert list(fs[:3]) == proto_features(breakthrough6)

    def test_each_atomic_feature_extends_a_proto_by_one_requirement(self, breakthrough6):
        protos = proto_features(breakthrough6)
        for feature in generate_atomic_features(breakthrough6)[3:]:
            parents = [p for p in protos if feature.is_restriction_of(p)]
            assert any(len(feature.pattern) == len(p.pattern) + 1 for p in parents)


class TestCompiledFeatureSet:
    def test_proto_instances_are_deduplicated(self, tictactoe):
        cfs = compile_features(FeatureSet(proto_features(tictactoe)), tictactoe.graph)
        assert cfs.num_instances == 9
        assert set(cfs.index) == {(None, v) for v in range(9)}

    def test_empty_board_activates_only_empty_and_off_requirements(self, tictactoe, tictactoe_atomic):
        state = initial_state(tictactoe)
        centre = feature_vector(tictactoe_atomic, state, Move(None, 4))
        fs = tictactoe_atomic.feature_set
        for fid in centre:
            assert all(r.element in (EMPTY, OFF) for r in fs[fid].pattern)
        assert 0 in centre

    def test_off_board_requirements_hold_at_the_edge(self, tictactoe, tictactoe_atomic):
        state = initial_state(tictactoe)
        fs = tictactoe_atomic.feature_set
        off_step = fs.index_of(Feature.create([((), EMPTY), (make_walk(0), OFF)]))
        assert off_step in feature_vector(tictactoe_atomic, state, Move(None, 0))
        assert off_step not in feature_vector(tictactoe_atomic, state, Move(None, 4))

    def test_friend_and_enemy_are_relative_to_the_mover(self, tictactoe, tictactoe_atomic):
        fs = tictactoe_atomic.feature_set
        friend_north = fs.index_of(Feature.create([((), EMPTY), (make_walk(0), FRIEND)]))
        enemy_north = fs.index_of(Feature.create([((), EMPTY), (make_walk(0), ENEMY)]))
        state = apply_move(tictactoe, initial_state(tictactoe), Move(None, 4))
        # Player 2 to move; the centre stone is an enemy seen from cell 1
        phi = feature_vector(tictactoe_atomic, state, Move(None, 1))
        assert enemy_north in phi
        assert friend_north not in phi

    def test_extend_equals_recompile(self, tictactoe, tictactoe_atomic):
        extra = Feature.create([((), EMPTY), (make_walk(0), FRIEND), (make_walk(0, 0), FRIEND)])
        extended = tictactoe_atomic.extend(extra)
        recompiled = compile_features(tictactoe_atomic.feature_set.append(extra), tictactoe.graph)
        assert extended.num_features == recompiled.num_features
        for key in recompiled.index:
            assert {i.key for i in extended.index[key]} == {i.key for i in recompiled.index[key]}

    def test_lookup_includes_placement_instances_for_steps(self, breakthrough6_atomic):
        move = Move(7, 13)
        found = breakthrough6_atomic.lookup(move)
        assert found
        assert all(i.action in ((7, 13), (None, 13)) for i in found)

    @pytest.mark.parametrize(("fixture", "samples"), [("tictactoe", 40), ("breakthrough6", 8), ("yavalath", 10)])
    def test_compiled_matches_naive(self, fixture, samples, request, random_pairs, rng):
        rules = request.getfixturevalue(fixture)
        cfs = request.getfixturevalue(f"{fixture}_atomic")
        for state, move in random_pairs(rules, samples, rng):
            active = active_instances(cfs, state, move)
            assert compiled_keys(active) == naive_active_instances(cfs.feature_set, rules.graph, state, move)
            assert feature_vector(cfs, state, move) == naive_feature_vector(cfs.feature_set, rules.graph, state, move)

    def test_feature_vector_is_sorted_and_unique(self, tictactoe, tictactoe_atomic, random_pairs, rng):
        for state, move in random_pairs(tictactoe, 100, rng):
            phi = feature_vector(tictactoe_atomic, state, move)
            assert list(phi) == sorted(set(phi))
            assert all(0 <= f < tictactoe_atomic.num_features for f in phi)
