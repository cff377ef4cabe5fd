from fractions import Fraction
from math import log2

import pytest

import lri

COLUMNS = {
    "A": [1, 0, 0, 0], "B": [0, 1, 0, 0], "C": [0, 0, 1, 0], "D": [0, 0, 0, 1],
    "W": [0, 1, 1, 1], "X": [1, 0, 1, 1], "Y": [1, 1, 0, 1], "Z": [1, 1, 1, 0],
}


def columns_over(p):
    ctx = lri.Assignment(p, 4)
    for name, v in COLUMNS.items():
        ctx.bind(name, lri.Subspace(p, 4, [v]))
    return ctx


def test_subspace_lattice():
    a = lri.Subspace(3, 3, [[1, 1, 0], [0, 1, 1]])
    b = lri.Subspace(3, 3, [[1, 0, 0]])
    assert a.dim == 2
    assert a.join(b).dim == 3
    assert a.intersect(b).dim == 0
    assert a.contains([1, 2, 1])
    assert a == lri.Subspace(3, 3, [[1, 2, 1], [1, 1, 0]])


def test_t8_counterexample():
    t8 = lri.Expression.builtin("t8")
    assert t8.evaluate(columns_over(3)) == Fraction(-1)
    assert not t8.applies_to(3)
    assert len(t8.joint_form()) == 31


def test_non_t8_counterexamples():
    nt = lri.Expression.builtin("non-t8")
    for p in (2, 5, 7):
        ctx = columns_over(p)
        assert nt.evaluate(ctx) == -1
        assert lri.cond_rank(ctx, {"A"}, {"W", "X", "Y", "Z"}) == 0
    assert lri.cond_rank(columns_over(3), {"A"}, {"W", "X", "Y", "Z"}) == 1


def test_search():
    found = lri.search(lri.Expression.builtin("ingleton"), 2, 3)
    assert not found["found"]
    random = lri.search(lri.Expression.builtin("t8"), 2, 4, strategy="random", seed=1, trials=200)
    assert not random["found"] and random["space"] == 200
    with pytest.raises(lri.Error) as err:
        lri.search(lri.Expression.builtin("t8"), 2, 4, strategy="annealing")
    assert err.value.code == "invalid-strategy"


def test_networks():
    t8 = lri.Network.builtin("t8")
    assert lri.verify(t8, lri.Code.builtin("t8", 3))["ok"]
    failing = [d["label"] for d in lri.verify(t8, lri.Code.builtin("t8", 5))["demands"] if not d["ok"]]
    assert failing == ["n9", "n11", "n13", "n14"]
    with pytest.raises(lri.Error) as err:
        lri.verify(lri.Network.builtin("non-t8"), lri.Code.builtin("non-t8", 3))
    assert err.value.code == "missing-inverse"
    bound = lri.capacity_bound(t8, lri.Expression.builtin("t8"))
    assert bound["value"] == Fraction(48, 49)
    assert "H(Y|W,X,Z) = 0 [derive Y <- W,X,Z]" in bound["trace"]
    nt = lri.Network.builtin("non-t8")
    assert lri.capacity_bound(nt, lri.Expression.builtin("non-t8"))["value"] == Fraction(28, 29)
    assert lri.cut_bound(nt)["value"] == 1
    assert lri.cut_bound(lri.Network.builtin("butterfly"), "n6")["value"] == 1


def test_network_text_round_trip():
    net = lri.Network.parse("messages x,y\nderive z <- x,y\ndemand n5: y <- x,z\n")
    assert lri.Network.parse(net.format()) == net
    code = lri.Code.parse("field 2\nk 1\nn 1\nencode z: x=[1] y=[1]\ndecode n5: z=[1] x=[1]\n")
    assert lri.verify(net, code)["ok"]


def test_matroids():
    m = lri.Matroid.builtin("t8-example-2x5", 2)
    assert m.full_rank == 2
    assert len(m.bases()) == 5
    assert m.circuits() == [{"a", "b", "e"}, {"a", "d"}, {"b", "d", "e"}, {"c"}]
    assert m.check_axioms() is None
    assert {"W", "X", "Y", "Z"} in lri.Matroid.builtin("t8", 3).circuits()
    assert lri.Matroid(["u", "v"], 2, [[1, 1]]).rank({"u", "v"}) == 1


def test_entropy():
    d = lri.Distribution.builtin("ingleton-4atom")
    assert abs(d.entropy({"A", "B"}) - 1.5) < 1e-12
    assert abs(d.evaluate(lri.Expression.builtin("ingleton")) + (5 - log2(27)) / 2) < 1e-9
    bit = lri.Distribution(["A"], [([0], (1, 2)), ([1], (1, 2))])
    assert abs(bit.entropy({"A"}) - 1.0) < 1e-12
    with pytest.raises(lri.Error):
        lri.Distribution(["A"], [([0], (1, 3))])


def test_rank_entropy_bridge():
    ctx = columns_over(3)
    d = lri.Distribution.induced(ctx)
    for s in ({"A"}, {"A", "W"}, {"W", "X", "Y", "Z"}):
        assert abs(d.entropy(s, base=3) - lri.joint_rank(ctx, s)) < 1e-9
