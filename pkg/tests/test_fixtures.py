import pytest
import yaml

from aomotocurves import fixtures
from aomotocurves.aomoto import build_basis, h1
from aomotocurves.bounds_report import TwistSpecification, candidate_orders, upper_bound
from aomotocurves.combinatorics import pairwise_degree, parse, validate


def _run(w, operation, inputs):
    if operation == "h1":
        omega = inputs["omega"]
        return h1(w, inputs["p"], [1] * w.r if omega == "ones" else omega)
    if operation == "dim_a2":
        return build_basis(w, inputs["p"]).dim_a2
    if operation == "pairwise_degree":
        return pairwise_degree(w, inputs["i"], inputs["j"])
    if operation == "candidate_orders":
        return candidate_orders(w)
    if operation == "upper_bound":
        return upper_bound(w, TwistSpecification.classical(w), inputs["order"])
    raise AssertionError(f"unknown operation {operation}")


def _expected_cases():
    for name in fixtures.names():
        for n, entry in enumerate(fixtures.load(name).expected):
            yield pytest.param(name, entry, id=f"{name}-{entry['operation']}-{n}")


@pytest.mark.parametrize("name", fixtures.names())
def test_bezout_gate(name):
    rep = validate(fixtures.load(name).curve)
    assert rep.ok, rep.lines()


@pytest.mark.parametrize("name, entry", list(_expected_cases()))
def test_expected_values(name, entry):
    w = fixtures.load(name).curve
    assert validate(w).ok
    got = _run(w, entry["operation"], entry["inputs"])
    assert got == entry["value"], f"{entry['source']}: {entry}"


def test_names_and_dump():
    names = fixtures.names()
    assert "icosidodecahedron" in names and names == sorted(names)
    doc = yaml.safe_load(fixtures.dump("two-lines"))
    assert parse(doc["curve"]) == fixtures.load("two-lines").curve
    with pytest.raises(fixtures.UnknownFixture):
        fixtures.load("nope")
    with pytest.raises(fixtures.UnknownFixture):
        fixtures.find_pencil("nope")


def test_find_pencil():
    fx, q = fixtures.find_pencil("hesse-A-pencil")
    assert fx.name == "hesse-A" and q.r == 4


def test_two_conics_shape():
    w = fixtures.load("two-conics-tangent").curve
    assert w.degrees == [2, 2] and len(w.points) == 1
    assert list(w.points[0].mu.values()) == [4]


def test_degenerate_hesse_a_shape():
    w = fixtures.load("degenerate-hesse-A").curve
    assert w.r == 12
    sizes = sorted(len(p.branches) for p in w.points)
    assert sizes == [2] * 9 + [11] * 3
    for pid in ("P", "Q", "R"):
        assert sorted(w.point(pid).mu.values()).count(2) == 9


def test_degenerate_hesse_a_tangency_table_at_p():
    w = fixtures.load("degenerate-hesse-A").curve
    pt = w.point("P")
    comp = {b.id: b.component for b in pt.branches}
    tangent = {frozenset(comp[x] for x in key) for key, v in pt.mu.items() if v == 2}
    listed = [{4, 10}, {5, 11}, {6, 7}, {4, 12}, {5, 8}, {6, 9}, {7, 9}, {10, 12}, {8, 11}]
    assert tangent == {frozenset(f"C{i}" for i in s) for s in listed}


def test_icosidodecahedron_incidence():
    w = fixtures.load("icosidodecahedron").curve
    sizes = [len(p.branches) for p in w.points]
    assert (w.r, sizes.count(4), sizes.count(2), len(sizes)) == (16, 15, 30, 45)
    # Hirzebruch count: every pair of lines meets exactly once
    assert sum(k * (k - 1) // 2 for k in sizes) == 16 * 15 // 2
    on = {c: [len(p.branches) for p in w.points if c in p.components()] for c in w.component_ids}
    special = [c for c, s in on.items() if s == [4] * 5]
    ordinary = [c for c, s in on.items() if sorted(s) == [2] * 6 + [4] * 3]
    assert len(special) == 6 and len(ordinary) == 10


@pytest.mark.parametrize("d", [1, 2, 3, 5])
def test_contact_pair_family(d):
    w = fixtures.contact_pair(d)
    assert validate(w).ok
    assert list(w.points[0].mu.values()) == [d * d]
