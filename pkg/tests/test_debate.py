import json
import random

import pytest

from polarize.debate import (
    SDebT,
    aggregate,
    load_debate_tree,
    parse_debate_tree,
    propagate_sides,
)
from polarize.errors import DebateStructureError, MalformedInstanceError, ValueRangeError


def _tree(*comments, root="r"):
    return json.dumps({"root": root, "comments": [dict(c) for c in comments]})


@pytest.fixture
def sdebt(data_dir) -> SDebT:
    return propagate_sides(load_debate_tree(data_dir / "debate_tree.json"))


def test_side_propagation_rules(sdebt):
    assert sdebt.sides["c0"] == 1
    # 以 -1.5 回复根 -> 反对
    assert sdebt.sides["c1"] == -1
    # 以 -0.5 回复反对者 -> 赞同
    assert sdebt.sides["c2"] == 1
    # W = 0 归入 <= 0
    assert sdebt.sides["c3"] == 1
    assert sdebt.sides["c4"] == -1
    assert sdebt.sides["c8"] == 1
    assert sdebt.check_sides()


def test_check_sides_rejects_tampered_labels(sdebt):
    tampered = dict(sdebt.sides)
    tampered["c3"] = -1
    assert not SDebT(tree=sdebt.tree, sides=tampered).check_sides()


def test_aggregate(sdebt):
    g = aggregate(sdebt)
    assert [node.id for node in g.nodes] == ["u1", "u2", "u3", "u4"]
    assert g.s == (-1.0, 1.0, 0.0, 1.0)
    edges = [(e.src, e.dst, e.w) for e in g.edges]
    # u1 两次回复 u2 (w = -2, -1)；u2 的自我回复不产生边；回复根评论不产生边
    assert edges == [(0, 1, -1.5), (1, 0, -0.5), (2, 0, 0.0)]
    # 只回复根评论的 u4 没有出边
    assert g.out_degree(3) == 0


def test_root_author_without_other_comments_has_no_node(sdebt):
    g = aggregate(sdebt)
    assert "op" not in g.index_of()


def test_aggregation_ignores_input_order(data_dir):
    doc = json.loads((data_dir / "debate_tree.json").read_text(encoding="utf-8"))
    expected = aggregate(propagate_sides(parse_debate_tree(json.dumps(doc))))
    rng = random.Random(42)
    for _ in range(5):
        rng.shuffle(doc["comments"])
        g = aggregate(propagate_sides(parse_debate_tree(json.dumps(doc))))
        assert g.nodes == expected.nodes
        assert g.edges == expected.edges


def test_all_root_replies_give_edgeless_graph():
    text = _tree(
        {"id": "a", "author": "x", "parent": "r", "w": 1.0},
        {"id": "b", "author": "y", "parent": "r", "w": -1.0},
        {"id": "c", "author": "x", "parent": "r", "w": -2.0},
    )
    g = aggregate(propagate_sides(parse_debate_tree(text)))
    assert g.node_count == 2
    assert g.edge_count == 0
    # x 的评论立场为 {+1, -1}
    assert g.s[g.index_of()["x"]] == 0.0


def test_root_only_in_document_root_field():
    text = _tree({"id": "a", "author": "x", "parent": "r", "w": 0.5})
    tree = parse_debate_tree(text)
    assert tree.root_author is None
    assert len(tree.comments) == 1


class TestStructureErrors:
    def test_cycle(self):
        text = _tree(
            {"id": "a", "author": "x", "parent": "b", "w": 1.0},
            {"id": "b", "author": "y", "parent": "a", "w": 1.0},
        )
        with pytest.raises(DebateStructureError):
            parse_debate_tree(text)

    def test_multiple_roots(self):
        text = _tree({"id": "r", "author": "x", "parent": None}, {"id": "s", "author": "y", "parent": None})
        with pytest.raises(DebateStructureError):
            parse_debate_tree(text)

    def test_unknown_parent(self):
        text = _tree({"id": "a", "author": "x", "parent": "zz", "w": 1.0})
        with pytest.raises(DebateStructureError):
            parse_debate_tree(text)

    def test_duplicate_comment_id(self):
        text = _tree(
            {"id": "a", "author": "x", "parent": "r", "w": 1.0},
            {"id": "a", "author": "y", "parent": "r", "w": 1.0},
        )
        with pytest.raises(DebateStructureError):
            parse_debate_tree(text)

    def test_duplicate_root_record(self):
        text = _tree(
            {"id": "r", "author": "x", "parent": None},
            {"id": "r", "author": "y", "parent": None},
            {"id": "a", "author": "z", "parent": "r", "w": 1.0},
        )
        with pytest.raises(DebateStructureError, match="重复"):
            parse_debate_tree(text)

    def test_root_with_parent(self):
        text = _tree({"id": "r", "author": "x", "parent": "a", "w": 1.0}, {"id": "a", "author": "y", "parent": "r", "w": 1.0})
        with pytest.raises(DebateStructureError):
            parse_debate_tree(text)

    def test_w_out_of_range(self):
        text = _tree({"id": "a", "author": "x", "parent": "r", "w": 2.5})
        with pytest.raises(ValueRangeError):
            parse_debate_tree(text)

    def test_missing_w(self):
        text = _tree({"id": "a", "author": "x", "parent": "r"})
        with pytest.raises(MalformedInstanceError):
            parse_debate_tree(text)

    def test_invalid_json(self):
        with pytest.raises(MalformedInstanceError):
            parse_debate_tree("{")
