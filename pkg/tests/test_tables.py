import pytest

from golden import ANTIPODE, COPRODUCT, GRAFT_GL, SHUFFLE
from helpers import F, L
from otree.forest import order
from otree.lincomb import TensorComb
from otree.tables import TABLES, render_json, render_text, rows


def T(*terms):
    return TensorComb([((F(l), F(r)), c) for c, l, r in terms])


def test_row_counts():
    assert [len(rows(name)) for name in TABLES] == [19, 11, 23, 23]


def test_graft_rows_match_reference():
    expected = {(F(a), F(b)): (L(*g), L(*p)) for (a, b), (g, p) in GRAFT_GL}
    got = {(r["left"], r["right"]): (r["graft"], r["gl"]) for r in rows("graft")}
    assert got == expected


def test_shuffle_rows_match_reference():
    expected = {frozenset([F(a), F(b)]): L(*v) for (a, b), v in SHUFFLE}
    got = {frozenset([r["left"], r["right"]]): r["shuffle"] for r in rows("shuffle")}
    assert got == expected


def test_coproduct_and_antipode_rows():
    assert {r["forest"]: r["coproduct"] for r in rows("coproduct")} == {F(f): T(*v) for f, v in COPRODUCT}
    assert {r["forest"]: r["antipode"] for r in rows("antipode")} == {F(f): L(*v) for f, v in ANTIPODE}


def test_rows_sorted_by_total_order():
    totals = [order(r["left"]) + order(r["right"]) for r in rows("graft")]
    assert totals == sorted(totals)
    assert [r["forest"] for r in rows("antipode")][:3] == [(), F("()"), F("()()")]


def test_text_rendering():
    text = render_text(["shuffle"], 3)
    lines = text.splitlines()
    assert lines[0] == "# shuffle product (order <= 3)"
    assert lines[1] == "left | right | shuffle"
    assert lines[2] == "() | () | 2·()()"


def test_latex_rendering():
    line = render_text(["antipode"], 1, "latex").splitlines()[2]
    assert line == r"\mathbb{1} & \mathbb{1} \\"


def test_json_rendering():
    data = render_json(["coproduct"], 1)
    assert data["coproduct"][1] == {
        "forest": "()",
        "coproduct": [{"coeff": "1", "left": "", "right": "()"}, {"coeff": "1", "left": "()", "right": ""}],
    }


def test_unknown_table():
    with pytest.raises(ValueError):
        rows("butcher")
