import json

import pytest

from conftest import DATA, all_fixture_games, random_games
from efgpath.game import (GameSemanticError, GameSyntaxError, experience_sequence, game_from_dict,
                          load_game, parse_game, serialize, subgame_decomposition,
                          validate_perfect_recall)


def _doc(game):
    return json.loads(serialize(game))


def test_notation_game_shape(notation):
    assert notation.num_players == 3
    assert len(notation.infosets) == 6
    root = notation.nodes[notation.root]
    assert root.kind == "chance"
    assert root.chance_probs == pytest.approx((1 / 7, 2 / 7, 4 / 7))


def test_chance_probabilities_from_fraction_strings(notation):
    doc = _doc(notation)
    for a, p in zip(doc["nodes"]["r"]["actions"], ("1/7", "2/7", "4/7")):
        a["prob"] = p
    again = game_from_dict(doc)
    assert again.nodes["r"].chance_probs == pytest.approx((1 / 7, 2 / 7, 4 / 7))


def test_single_terminal_game():
    g = parse_game('{"num_players": 2, "root": "z", "nodes": {"z": {"kind": "terminal", "payoffs": [0, 0]}}}')
    assert g.num_players == 2 and not g.infosets
    assert list(g.terminals) == ["z"]


def test_example1_infosets(ex1):
    assert sorted(ex1.infosets) == ["p1.1", "p1.2", "p2.1", "p3.1"]
    assert ex1.infosets["p3.1"].members == ("ARb", "B")


def test_history_is_action_labels(notation):
    assert notation.history("r") == ()
    assert notation.history("b.y.e.F") == ("b", "y", "e", "F")


@pytest.mark.parametrize("mutate, kind", [
    (lambda d: d["nodes"]["A"]["actions"][0].update(child="nowhere"), GameSemanticError),
    (lambda d: d["nodes"]["AL"].update(payoffs=[1, 2]), GameSemanticError),
    (lambda d: d["infosets"]["p3.1"].update(actions=["N", "X"]), GameSemanticError),
    (lambda d: d["nodes"]["r"].pop("actions"), GameSyntaxError),
    (lambda d: d["nodes"]["B"].update(owner=2), GameSemanticError),
    (lambda d: d["nodes"]["AL"].update(payoffs=["x", 1, 2]), GameSyntaxError),
])
def test_semantic_and_syntax_errors(ex1, mutate, kind):
    doc = _doc(ex1)
    mutate(doc)
    with pytest.raises(kind):
        game_from_dict(doc)


def test_chance_probabilities_must_sum_to_one(notation):
    doc = _doc(notation)
    doc["nodes"]["r"]["actions"][0]["prob"] = 0.2
    with pytest.raises(GameSemanticError):
        game_from_dict(doc)
    doc["nodes"]["r"]["actions"][0]["prob"] = 0.0
    doc["nodes"]["r"]["actions"][1]["prob"] = "3/7"
    with pytest.raises(GameSemanticError):
        game_from_dict(doc)


def test_infoset_action_mismatch_names_the_infoset(ex1):
    doc = _doc(ex1)
    doc["nodes"]["B"]["actions"][1]["label"] = "Z"
    with pytest.raises(GameSemanticError, match="p3.1"):
        game_from_dict(doc)


def test_bad_json():
    with pytest.raises(GameSyntaxError):
        parse_game("{not json")


def test_experience_sequence(notation):
    assert experience_sequence(notation, 2, "b.y.e.F") == (("p2.1", "e"), ("p2.2", None))
    assert experience_sequence(notation, 3, "b.y.d.U") == ()
    assert experience_sequence(notation, 1, "r") == ()


def test_perfect_recall_on_fixtures_and_generated():
    for g in all_fixture_games() + random_games(20) + random_games(10, "B", 3, (2, 3, 2)) \
            + random_games(10, "C", 2, (2, 2), layers=3):
        assert validate_perfect_recall(g) == []


def _forgetful_doc():
    # player 1 moves twice and forgets the first move
    return {"num_players": 1, "root": "r", "nodes": {
        "r": {"kind": "decision", "owner": 1, "infoset": "i1",
              "actions": [{"label": "L", "child": "x"}, {"label": "R", "child": "y"}]},
        "x": {"kind": "decision", "owner": 1, "infoset": "i2",
              "actions": [{"label": "l", "child": "x1"}, {"label": "r", "child": "x2"}]},
        "y": {"kind": "decision", "owner": 1, "infoset": "i2",
              "actions": [{"label": "l", "child": "y1"}, {"label": "r", "child": "y2"}]},
        **{k: {"kind": "terminal", "payoffs": [v]} for k, v in
           (("x1", 1), ("x2", 0), ("y1", 0), ("y2", 1))}},
        "infosets": {"i1": {"player": 1, "members": ["r"], "actions": ["L", "R"]},
                     "i2": {"player": 1, "members": ["x", "y"], "actions": ["l", "r"]}}}


def test_recall_violation_reported():
    g = game_from_dict(_forgetful_doc(), check_recall=False)
    report = validate_perfect_recall(g)
    assert len(report) == 1
    assert report[0].infoset == "i2" and {report[0].first, report[0].second} == {"x", "y"}


def test_recall_violation_rejected_by_default():
    with pytest.raises(GameSemanticError):
        game_from_dict(_forgetful_doc())


def test_perfect_information_recall_and_subgames():
    doc = _forgetful_doc()
    doc["infosets"]["i2"]["members"] = ["x"]
    doc["infosets"]["i3"] = {"player": 1, "members": ["y"], "actions": ["l", "r"]}
    doc["nodes"]["y"]["infoset"] = "i3"
    g = game_from_dict(doc)
    assert validate_perfect_recall(g) == []
    sub = subgame_decomposition(g)
    assert sub.subgame_roots >= {"r", "x", "y"}


def test_subgames_of_example3(ex3):
    sub = subgame_decomposition(ex3)
    assert {"r", "Y"} <= set(sub.subgame_roots)
    # p1.2 spans both children of YI, so nothing below YI starts a subgame
    assert sub.node_to_root["YIA"] == "YI"
    assert sub.infoset_root["p1.2"] == "YI"


def test_no_proper_subgame_when_infoset_spans_root_children(ex1):
    sub = subgame_decomposition(ex1)
    assert set(sub.subgame_roots) == {"r"}


def test_node_to_root_idempotent():
    for g in all_fixture_games() + random_games(10, "C", 2, (2, 2), layers=2):
        sub = subgame_decomposition(g)
        for nid in g.nodes:
            r = sub.node_to_root[nid]
            assert r in sub.subgame_roots
            assert sub.node_to_root[r] == r


def test_serialize_round_trip():
    for g in all_fixture_games() + random_games(5) + random_games(5, "B", 4, (2, 2, 5, 3)):
        assert parse_game(serialize(g)) == g


def test_fixture_files_match_builders(ex1, ex3, notation):
    assert load_game(DATA / "example1.game.json") == ex1
    assert load_game(DATA / "example3.game.json") == ex3
    assert load_game(DATA / "notation.game.json") == notation
