import pytest
import yaml

from aomotocurves import fixtures
from aomotocurves.bounds_report import (
    TwistError,
    TwistSpecification,
    assemble_report,
    candidate_orders,
    upper_bound,
)


def report(name, **kw):
    fx = fixtures.load(name)
    return assemble_report(fx.curve, None, fx.pencils(), fx.external, **kw)


def test_candidate_orders():
    w = fixtures.load("hesse-A").curve
    assert candidate_orders(w) == [3, 7, 21]
    assert candidate_orders(fixtures.load("icosidodecahedron").curve) == [2, 4, 8, 16]
    line = {"components": [{"id": "L", "degree": 1}], "points": []}
    from aomotocurves.combinatorics import parse

    assert candidate_orders(parse(line)) == []


def test_twist_validation():
    w = fixtures.load("two-conics-tangent").curve
    with pytest.raises(TwistError):
        TwistSpecification.for_curve(w, [2, 2])
    with pytest.raises(TwistError):
        TwistSpecification.for_curve(w, [1])
    t = TwistSpecification.for_curve(w, [1, 2])
    assert t.total_degree(w) == 6
    assert candidate_orders(w, t) == [2, 3, 6]


@pytest.mark.parametrize(
    "name, order, value",
    [
        ("hesse-A", 7, 2),
        ("hesse-B", 2, 2),
        ("hesse-B", 3, 1),
        ("hesse-B", 9, 1),
        ("hesse-conics", 2, 3),
        ("hesse-conics", 4, 3),
        ("hesse-conics", 8, 3),
        ("hesse-conics", 3, 0),
    ],
)
def test_upper_bounds(name, order, value):
    w = fixtures.load(name).curve
    assert upper_bound(w, TwistSpecification.classical(w), order) == value


def test_upper_bound_needs_prime_power():
    w = fixtures.load("hesse-A").curve
    assert upper_bound(w, TwistSpecification.classical(w), 21) is None


@pytest.mark.parametrize("name", fixtures.names())
def test_prime_power_independence(name):
    w = fixtures.load(name).curve
    t = TwistSpecification.classical(w)
    for p in (2, 3):
        assert upper_bound(w, t, p) == upper_bound(w, t, p**2) == upper_bound(w, t, p**3)


def test_hesse_a_report():
    rep = report("hesse-A")
    assert rep.get(3).exact and rep.get(3).lower == 0
    assert rep.get(7).exact and rep.get(7).lower == 2
    b21 = rep.get(21)
    assert b21.upper is None and b21.lower == 0 and not b21.exact
    assert "not a prime power" in b21.provenance[0]
    assert rep.background == 11


def test_hesse_conics_report():
    rep = report("hesse-conics")
    assert (rep.get(2).lower, rep.get(2).upper, rep.get(2).exact) == (2, 3, False)
    assert (rep.get(4).lower, rep.get(4).upper) == (2, 3)
    assert rep.get(8).exact and rep.get(8).lower == 3
    assert rep.get(3).exact and rep.get(3).upper == 0
    assert rep.get(2).external[0]["value"] == 2


def test_icosidodecahedron_report():
    rep = report("icosidodecahedron")
    for n in (2, 4, 8, 16):
        assert rep.get(n).upper == 1
        assert rep.get(n).lower == 0


def test_certificate_rows_carry_provenance():
    rep = report("hesse-B")
    assert any("reduced fiber-type certificate" in x for x in rep.get(3).provenance)
    rep = report("tc-quartic-conic")
    assert any("complete 3-reduction" in x for x in rep.get(3).provenance)


@pytest.mark.parametrize("name", fixtures.names())
def test_reports_consistent_and_deterministic(name):
    first = report(name)
    for b in first.bounds:
        if b.upper is not None:
            assert b.lower <= b.upper
        if b.exact:
            assert b.upper == b.lower
        for e in b.external:
            assert b.contains(e["value"])
    assert report(name).structured() == first.structured()
    doc = yaml.safe_load(first.structured())
    assert [row["order"] for row in doc["bounds"]] == candidate_orders(fixtures.load(name).curve)


def test_twisted_report_has_no_background():
    w = fixtures.load("two-conics-tangent").curve
    rep = assemble_report(w, TwistSpecification.for_curve(w, [1, 2]))
    assert rep.background is None
    assert "background" not in rep.text()


def test_text_rendering():
    text = report("hesse-A").text()
    assert "order 1: 11 (background)" in text
    assert "     7  = 2" in text
