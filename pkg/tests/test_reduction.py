import pytest

from aomotocurves import fixtures
from aomotocurves.aomoto import h1
from aomotocurves.reduction import (
    Partition,
    completely_p_reductive,
    coordinate_elimination,
    p_transversal_points,
    reduction_step,
    transversality_graph,
    triviality_certificate,
)


def load(name):
    return fixtures.load(name).curve


def test_partition_union_find():
    part = Partition(["a", "b", "c", "d"])
    assert part.union("c", "a")
    assert not part.union("a", "c")
    assert part.class_of("c") == ("a", "c")
    assert part.classes() == [("a", "c"), ("b",), ("d",)]
    clone = part.copy()
    clone.union("b", "d")
    assert len(part) == 3 and len(clone) == 2


def test_triangle_graph_complete():
    for p in (2, 3, 5):
        g = transversality_graph(load("three-lines"), p)
        assert g.is_complete() and g.is_connected()


def test_two_conics_graph_edgeless_mod_2():
    w = load("two-conics-tangent")
    g = transversality_graph(w, 2)
    assert g.edges == {}
    assert not g.is_connected()
    assert reduction_step(w, 2, [1, 1]) == []
    assert transversality_graph(w, 3).is_complete()


def test_hesse_b_graph_mod_2():
    w = load("hesse-B")
    q = fixtures.load("hesse-B").pencil()
    g = transversality_graph(w, 2)
    pairs = {frozenset(e) for e in g.edges}
    triples = [set(f.ids) for f in q.fibers]
    expected = {frozenset((a, b)) for t in triples for a in t for b in t if a < b}
    assert pairs == expected
    assert len(pairs) == 9
    assert not g.is_connected()


def test_two_lines_single_merge():
    w = load("two-lines")
    merges = reduction_step(w, 7, [1, 1])
    assert {m.witness for m in merges} == {b.id for b in w.points[0].branches}
    assert completely_p_reductive(w, 7, [1, 1]).success


def test_tc_quartic_2_cusps_then_node():
    w = load("tc-quartic-2")
    alpha = [1, 2, 3]
    first = reduction_step(w, 5, alpha)
    assert {m.point for m in first} == {"Q", "R1", "R2", "R3"}
    assert not any(m.point == "P" for m in first)
    part = Partition(w.component_ids)
    part.apply(next(m for m in first if m.point == "R1"))
    second = reduction_step(w, 5, alpha, part)
    assert any(m.point == "P" for m in second)
    assert completely_p_reductive(w, 5, alpha).success
    # at p = 3 the cusps are not transversal
    assert not any(m.point.startswith("R") for m in reduction_step(w, 3, alpha))


def test_p_transversal_points_ignore_multi_component_points():
    w = load("tc-quartic-2")
    assert {m.point for m in p_transversal_points(w, 5)} == {"Q", "R1", "R2", "R3"}


def test_strategies_and_trace_lines():
    w = load("tc-quartic-2")
    greedy = completely_p_reductive(w, 5, [1, 2, 3], "greedy")
    exhaustive = completely_p_reductive(w, 5, [1, 2, 3], "exhaustive")
    assert greedy.success and exhaustive.success
    assert exhaustive.lines()[-1].startswith("single class reached")
    with pytest.raises(ValueError):
        completely_p_reductive(w, 5, [1, 2, 3], "random")
    with pytest.raises(ValueError):
        completely_p_reductive(w, 5, [1, 2])


def test_failure_reports_final_classes():
    res = completely_p_reductive(load("two-conics-tangent"), 2, [1, 1])
    assert not res.success
    assert res.lines()[-1] == "final classes: {C1} {C2}"


def test_search_budget_is_reported():
    res = completely_p_reductive(load("hesse-A"), 3, [1] * 12, max_states=10)
    assert not res.success
    assert "inconclusive" in res.warnings[0]


def test_coordinate_elimination_drops_forced_component():
    w = load("three-lines")
    elim = coordinate_elimination(w, 5, [1, 2, 0])
    assert elim.removed == ["L3"]
    assert elim.form == [1, 2]
    assert h1(elim.curve, 5, elim.form) == h1(w, 5, [1, 2, 0])


def test_coordinate_elimination_zero_form():
    w = load("three-lines")
    elim = coordinate_elimination(w, 5, [0, 0, 0])
    assert elim.removed == [] and elim.warnings


def test_certificate_document():
    w = load("tc-quartic-2")
    cert = triviality_certificate(w, 5, [2, 1, 2])
    assert cert is not None
    doc = cert.to_document()
    assert doc["conclusion"] == "h1 = 0"
    assert doc["prime"] == 5
    assert len(doc["merges"]) == 2
    assert cert.lines()[0].startswith("certificate: h1 = 0 over GF(5)")
    assert h1(w, 5, [2, 1, 2]) == 0


def test_no_certificate_when_resonant():
    assert triviality_certificate(load("tc-quartic-2"), 3, [2, 1, 2]) is None
    assert triviality_certificate(load("two-conics-tangent"), 2, [1, 1]) is None
