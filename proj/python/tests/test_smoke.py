from pathlib import Path

import pytest

import tdl

FIXTURES = Path(__file__).resolve().parents[2] / "tests" / "fixtures"


@pytest.fixture
def fig2():
    return tdl.load_workspace(str(FIXTURES / "fig2.json"))


def test_load(fig2):
    assert fig2.graph.genus == 4
    assert fig2.points["v1"] == "e1@1/2"
    assert fig2.divisors["D2"]["w4"] == 2
    assert fig2.serialize() == (FIXTURES / "fig2.json").read_text()


def test_dhar(fig2):
    g = fig2.graph
    out, layers = tdl.dhar(g, fig2.divisors["D1"], fig2.points["v0"])
    assert out == []
    assert sorted(layers[0]) == ["e1@1/2", "w3"]
    out, _ = tdl.dhar(g, fig2.divisors["D2"], fig2.points["v0"])
    assert sorted(out) == ["e1@1/2", "e3@1/2", "w4"]


def test_move_and_reduce(fig2):
    g = fig2.graph
    moved = tdl.move_step(g, fig2.divisors["D2"], ["e1@1/2", "e3@1/2", "w4"], "e6@1/2")
    assert moved == {"w1": 1, "w2": 1, "w3": 2, "e4@1/2": 1, "e5@1/2": 1}
    reduced = tdl.reduce(g, fig2.divisors["D2"], "e6@1/2")
    assert sum(reduced.values()) == 6
    assert tdl.is_reduced(g, reduced, "e6@1/2")


def test_rank(fig2):
    g = fig2.graph
    report = tdl.rr_check(g, fig2.divisors["D2"])
    assert report["lhs"] == report["rhs"] == 3
    assert tdl.rank(g, {"w1": 1, "w2": -1}) == -1


def test_rds():
    k4 = tdl.load_workspace(str(FIXTURES / "k4.json"))
    g = k4.graph
    assert tdl.is_rank_determining(g, ["w1", "w2", "w4"]) is None
    assert tdl.is_rank_determining(g, ["w1", "w2"]) == {"w1": 1, "w2": 1}
    assert tdl.is_minimal_rds(g, ["w1", "w2", "w4"]) == (True, [])
    assert len(tdl.construct_rds(g)) == g.genus + 1
    assert tdl.fg_rank(g, k4.divisors["K"]) == 2


def test_errors():
    with pytest.raises(tdl.TdlError, match="NonpositiveLength"):
        tdl.parse_workspace(
            '{"graph":{"vertices":["a","b"],"edges":[{"id":"e","ends":["a","b"],"length":"0"}]}}'
        )
