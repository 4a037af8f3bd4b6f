"""Regenerate the YAML fixtures shipped in aomotocurves/fixtures/data.

Run from the repository root:  python3 tools/make_fixtures.py

Incidence tables for the conic arrangements were obtained by exact symbolic
intersection of the defining equations over Q(w), w^2 + w + 1 = 0 (see the
comments next to each table); the remaining fixtures are small enough to be
written down directly. Every generated curve is checked against Bezout before
it is written.
"""

from __future__ import annotations

import itertools
import pathlib
import sys

import yaml

ROOT = pathlib.Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from aomotocurves.combinatorics import parse, validate  # noqa: E402

OUT = ROOT / "src" / "aomotocurves" / "fixtures" / "data"


class Curve:
    def __init__(self, name: str, description: str):
        self.meta = {"name": name, "description": description}
        self.components: list[dict] = []
        self.points: list[dict] = []

    def component(self, cid: str, degree: int) -> None:
        self.components.append({"id": cid, "degree": degree})

    def point(self, pid: str, branches: list[tuple[str, str]], mu: dict | None = None, default: int | None = 1):
        """``branches`` is a list of (branch suffix, component); mu keys are suffix pairs."""
        bl = [{"id": f"{pid}.{s}", "component": c} for s, c in branches]
        entries = []
        for (s1, c1), (s2, c2) in itertools.combinations(branches, 2):
            if c1 == c2:
                continue
            value = (mu or {}).get((s1, s2), (mu or {}).get((s2, s1), default))
            if value is None:
                raise ValueError(f"missing mu for {pid}: {s1},{s2}")
            entries.append([f"{pid}.{s1}", f"{pid}.{s2}", value])
        self.points.append({"id": pid, "branches": bl, "mu": entries})

    def ordinary(self, pid: str, comps: list[str]) -> None:
        self.point(pid, [(c, c) for c in comps])

    def document(self) -> dict:
        return {"meta": self.meta, "components": self.components, "points": self.points}


def pencil(degree: int, index: int, fibers: list, base_points: list[str], twists=None) -> dict:
    doc = {"degree": degree, "index": index, "fibers": [], "base_points": base_points}
    for comps, res_m, res_deg in fibers:
        doc["fibers"].append(
            {
                "components": [{"id": c, "m": m} for c, m in comps],
                "residual": {"m": res_m, "degree": res_deg},
            }
        )
    if twists:
        doc["twists"] = [{"id": c, "nu": v} for c, v in twists]
    return doc


def reduced(comps):
    return [(c, 1) for c in comps]


FIXTURES: dict[str, dict] = {}


def register(name, curve: Curve, pencils=None, expected=None, external=None, notes=None):
    doc = curve.document()
    w = parse(doc)
    report = validate(w)
    if not report.ok:
        raise SystemExit(f"{name}: " + "; ".join(report.lines()))
    entry = {"name": name, "curve": doc}
    if notes:
        entry["notes"] = notes
    if pencils:
        entry["pencils"] = pencils
    entry["expected"] = expected or []
    if external:
        entry["external"] = external
    FIXTURES[name] = entry


def ex(op, value, source="worked-example", **inputs):
    return {"operation": op, "inputs": inputs, "value": value, "source": source}


# -- small curves --------------------------------------------------------------

c = Curve("two-lines", "two lines meeting in a node")
c.component("L1", 1)
c.component("L2", 1)
c.ordinary("N", ["L1", "L2"])
register(
    "two-lines",
    c,
    expected=[
        ex("dim_a2", 1, source="trivial", p=2),
        ex("h1", 0, source="independent-oracle", p=5, omega=[1, 1]),
    ],
)

c = Curve("three-lines", "triangle of three lines in general position")
for i in (1, 2, 3):
    c.component(f"L{i}", 1)
c.ordinary("N12", ["L1", "L2"])
c.ordinary("N13", ["L1", "L3"])
c.ordinary("N23", ["L2", "L3"])
register("three-lines", c, expected=[ex("h1", 0, source="trivial", p=5, omega=[1, 1, 1])])

c = Curve("two-conics-tangent", "two smooth conics with a single point of maximal contact (intersection number 4)")
c.component("C1", 2)
c.component("C2", 2)
c.point("P", [("C1", "C1"), ("C2", "C2")], {("C1", "C2"): 4})
register(
    "two-conics-tangent",
    c,
    pencils={
        "two-conics-tangent-pencil": pencil(2, 2, [(reduced(["C1"]), 0, 0), (reduced(["C2"]), 0, 0)], ["P"]),
    },
    expected=[
        ex("dim_a2", 3, p=2),
        ex("dim_a2", 1, p=3),
        ex("h1", 1, p=2, omega=[1, 1]),
        ex("h1", 0, p=3, omega=[1, 1]),
        ex("pairwise_degree", 4, i="C1", j="C2"),
    ],
)

c = Curve("transversal-conic-cubic", "smooth conic and smooth cubic meeting transversally in six points")
c.component("C2", 2)
c.component("C3", 3)
for n in range(1, 7):
    c.ordinary(f"T{n}", ["C2", "C3"])
register(
    "transversal-conic-cubic",
    c,
    expected=[ex("h1", 0, p=p, omega=[1, 1]) for p in (2, 3, 5)],
)

# Tricuspidal quartic with the conic through its cusps tangent to it at P.
# The conic passes through each cusp with intersection 2 and touches the
# quartic at P with intersection 2 (2 + 3*2 = 8).
c = Curve("tc-quartic-conic", "tricuspidal quartic and the conic through its cusps, tangent to it at P")
c.component("C4", 4)
c.component("C2", 2)
c.point("P", [("C4", "C4"), ("C2", "C2")], {("C4", "C2"): 2})
for n in (1, 2, 3):
    c.point(f"R{n}", [("C4", "C4"), ("C2", "C2")], {("C4", "C2"): 2})
register(
    "tc-quartic-conic",
    c,
    notes=(
        "Only the quartic and the conic are components; the bitangent line used to build the "
        "pencil is a residual member, so its tangency point Q is a smooth point of this curve."
    ),
    pencils={
        # members: (line)^2 * quartic, conic^3, and the double cubic as the index-2 member
        "tc-quartic-conic-pencil": pencil(6, 2, [([("C4", 1)], 2, 1), ([("C2", 3)], 0, 0)], ["P", "R1", "R2", "R3"]),
    },
    expected=[
        ex("dim_a2", 6, p=2),
        ex("h1", 1, p=2, omega=[1, 1]),
        ex("h1", 0, p=3, omega=[1, 1]),
    ],
)

# Bitangent line C1, tricuspidal quartic C4, nodal cubic C3. At P the cubic has
# a node: branch "t" transversal to C1 and C4, branch "g" tangent to both.
c = Curve(
    "tc-quartic-2",
    "bitangent line, tricuspidal quartic and a nodal cubic through the cusps (a node at the tangency point P)",
)
c.component("C1", 1)
c.component("C4", 4)
c.component("C3", 3)
c.point(
    "P",
    [("C1", "C1"), ("C4", "C4"), ("C3t", "C3"), ("C3g", "C3")],
    {("C1", "C4"): 2, ("C1", "C3t"): 1, ("C1", "C3g"): 2, ("C4", "C3t"): 1, ("C4", "C3g"): 2},
    default=None,
)
c.point("Q", [("C1", "C1"), ("C4", "C4")], {("C1", "C4"): 2})
for n in (1, 2, 3):
    c.point(f"R{n}", [("C4", "C4"), ("C3", "C3")], {("C4", "C3"): 3})
register(
    "tc-quartic-2",
    c,
    pencils={
        "tc-quartic-2-pencil": pencil(
            6, 3, [([("C1", 2), ("C4", 1)], 0, 0), ([("C3", 2)], 0, 0)], ["P", "R1", "R2", "R3"]
        ),
    },
    expected=[
        ex("dim_a2", 8, p=2),
        ex("dim_a2", 8, p=3),
        ex("dim_a2", 7, p=5),
        ex("h1", 1, p=3, omega=[2, 1, 2]),
        ex("h1", 0, p=2, omega=[2, 1, 2]),
        ex("h1", 0, p=5, omega=[2, 1, 2]),
    ],
)

# -- Hesse-type conic-line arrangements ---------------------------------------
# Lines x=0, y=0, z=0 and nine conics in three triples. Base points computed
# exactly; each lies on one line and on two conics of every triple.
HESSE_TRIPLES = [["C4", "C5", "C6"], ["C7", "C9", "C11"], ["C8", "C10", "C12"]]
HESSE_BASE = {
    "B1": ["L2", "C4", "C5", "C8", "C9", "C11", "C12"],
    "B2": ["L3", "C4", "C6", "C8", "C9", "C10", "C11"],
    "B3": ["L1", "C4", "C6", "C7", "C8", "C9", "C12"],
    "B4": ["L1", "C5", "C6", "C9", "C10", "C11", "C12"],
    "B5": ["L1", "C4", "C5", "C7", "C8", "C10", "C11"],
    "B6": ["L2", "C5", "C6", "C7", "C8", "C9", "C10"],
    "B7": ["L3", "C5", "C6", "C7", "C8", "C11", "C12"],
    "B8": ["L2", "C4", "C6", "C7", "C10", "C11", "C12"],
    "B9": ["L3", "C4", "C5", "C7", "C9", "C10", "C12"],
}


def hesse(with_lines: bool) -> Curve:
    name = "hesse-A" if with_lines else "hesse-B"
    desc = "nine conics in three pencil triples" + (" plus the three coordinate lines" if with_lines else "")
    c = Curve(name, desc)
    if with_lines:
        for i in (1, 2, 3):
            c.component(f"L{i}", 1)
    for i in range(4, 13):
        c.component(f"C{i}", 2)
    for pid, comps in HESSE_BASE.items():
        c.ordinary(pid, [x for x in comps if with_lines or not x.startswith("L")])
    for triple in HESSE_TRIPLES:
        for a, b in itertools.combinations(triple, 2):
            c.ordinary(f"N{a[1:]}-{b[1:]}", [a, b])
    if with_lines:
        for a, b in itertools.combinations(["L1", "L2", "L3"], 2):
            c.ordinary(f"N{a}-{b}", [a, b])
    return c


ONES = "ones"
register(
    "hesse-A",
    hesse(True),
    pencils={
        "hesse-A-pencil": pencil(
            6,
            1,
            [(reduced(t), 0, 0) for t in HESSE_TRIPLES] + [([("L1", 2), ("L2", 2), ("L3", 2)], 0, 0)],
            list(HESSE_BASE),
        ),
    },
    expected=[
        ex("h1", 0, p=3, omega=ONES),
        ex("h1", 2, p=7, omega=ONES),
        ex("candidate_orders", [3, 7, 21]),
        ex("upper_bound", 2, order=7),
    ],
)
register(
    "hesse-B",
    hesse(False),
    pencils={
        # the double coordinate triangle is the multiple member outside the curve
        "hesse-B-pencil": pencil(6, 2, [(reduced(t), 0, 0) for t in HESSE_TRIPLES], list(HESSE_BASE)),
    },
    expected=[
        ex("h1", 2, p=2, omega=ONES),
        ex("h1", 1, p=3, omega=ONES),
        ex("upper_bound", 2, order=2),
        ex("upper_bound", 1, order=3),
        ex("upper_bound", 1, order=9),
    ],
)

# Degenerate Hesse arrangement: all nine conics pass through P, Q, R; the three
# lines are PQ, PR, QR. Pairs of conics from different triples are tangent at
# exactly one of P, Q, R (intersection 2 there, 1 at the other two). The
# tangency pairs below come from exact computation.
DEG_TRIPLES = [["C4", "C5", "C6"], ["C7", "C10", "C11"], ["C8", "C9", "C12"]]
DEG_TANGENT = {
    "P": [(4, 10), (4, 12), (5, 8), (5, 11), (6, 7), (6, 9), (7, 9), (8, 11), (10, 12)],
    "Q": [(4, 9), (4, 11), (5, 7), (5, 12), (6, 8), (6, 10), (7, 12), (8, 10), (9, 11)],
    "R": [(4, 7), (4, 8), (5, 9), (5, 10), (6, 11), (6, 12), (7, 8), (9, 10), (11, 12)],
}
DEG_LINES = {"P": ["L1", "L2"], "Q": ["L1", "L3"], "R": ["L2", "L3"]}


def degenerate_hesse(with_lines: bool) -> Curve:
    name = "degenerate-hesse-A" if with_lines else "degenerate-hesse-B"
    desc = "degenerate Hesse arrangement of nine conics through three points" + (
        " plus the three lines joining them" if with_lines else ""
    )
    c = Curve(name, desc)
    if with_lines:
        for i in (1, 2, 3):
            c.component(f"L{i}", 1)
    for i in range(4, 13):
        c.component(f"C{i}", 2)
    conics = [f"C{i}" for i in range(4, 13)]
    for pid in ("P", "Q", "R"):
        comps = (DEG_LINES[pid] if with_lines else []) + conics
        mu = {(f"C{a}", f"C{b}"): 2 for a, b in DEG_TANGENT[pid]}
        c.point(pid, [(x, x) for x in comps], mu)
    for triple in DEG_TRIPLES:
        for a, b in itertools.combinations(triple, 2):
            c.ordinary(f"N{a[1:]}-{b[1:]}", [a, b])
    return c


register(
    "degenerate-hesse-A",
    degenerate_hesse(True),
    notes="Line-conic intersections at P, Q, R are transversal: each line meets each conic exactly at its two points.",
    pencils={
        "degenerate-hesse-A-pencil": pencil(
            6,
            1,
            [(reduced(t), 0, 0) for t in DEG_TRIPLES] + [([("L1", 2), ("L2", 2), ("L3", 2)], 0, 0)],
            ["P", "Q", "R"],
        ),
    },
    expected=[ex("candidate_orders", [3, 7, 21])],
)
register(
    "degenerate-hesse-B",
    degenerate_hesse(False),
    pencils={
        "degenerate-hesse-B-pencil": pencil(6, 2, [(reduced(t), 0, 0) for t in DEG_TRIPLES], ["P", "Q", "R"]),
    },
)

# Non-degenerate Hesse arrangement of twelve conics: the nine Hesse conics above
# plus a fourth triple D1, D2, D3, where Dj passes through the six base points
# not on the line Lj. Each base point lies on two conics of every triple.
c = Curve("hesse-conics", "twelve conics in four triples of a Halphen pencil of index 2")
for i in range(4, 13):
    c.component(f"C{i}", 2)
for j in (1, 2, 3):
    c.component(f"D{j}", 2)
for pid, comps in HESSE_BASE.items():
    line = next(x for x in comps if x.startswith("L"))
    ds = [f"D{j}" for j in (1, 2, 3) if f"L{j}" != line]
    c.ordinary(pid, [x for x in comps if not x.startswith("L")] + ds)
for triple in HESSE_TRIPLES + [["D1", "D2", "D3"]]:
    for a, b in itertools.combinations(triple, 2):
        c.ordinary(f"N{a}-{b}", [a, b])
register(
    "hesse-conics",
    c,
    pencils={
        "hesse-conics-pencil": pencil(
            6, 2, [(reduced(t), 0, 0) for t in HESSE_TRIPLES + [["D1", "D2", "D3"]]], list(HESSE_BASE)
        ),
    },
    expected=[
        ex("h1", 0, p=3, omega=ONES),
        ex("h1", 3, p=2, omega=ONES),
        ex("upper_bound", 3, order=2),
        ex("upper_bound", 3, order=4),
        ex("upper_bound", 3, order=8),
        ex("upper_bound", 0, order=3),
    ],
    external=[
        {"order": 2, "value": 2, "source": "Alexander polynomial computed in the literature for this family"},
        {"order": 4, "value": 2, "source": "Alexander polynomial computed in the literature for this family"},
    ],
)

# Icosidodecahedral arrangement of 16 lines. Label the six special lines by
# {1..6}; the 15 quadruple points are the pairs ab. Fix the synthematic total
# below; the other ten lines are the remaining ten synthemes (perfect matchings
# of K6), passing through the quadruple points of their three edges. Two of
# these synthemes with no common edge meet in a double point.
TOTAL = [
    ((1, 2), (3, 4), (5, 6)),
    ((1, 3), (2, 5), (4, 6)),
    ((1, 4), (2, 6), (3, 5)),
    ((1, 5), (2, 4), (3, 6)),
    ((1, 6), (2, 3), (4, 5)),
]


def synthemes(points=(1, 2, 3, 4, 5, 6)):
    """All perfect matchings of the given points, edges sorted."""
    if not points:
        return [()]
    first, rest = points[0], points[1:]
    out = []
    for n, partner in enumerate(rest):
        remaining = rest[:n] + rest[n + 1 :]
        for tail in synthemes(remaining):
            out.append(((first, partner),) + tail)
    return out


def icosidodecahedron() -> tuple[Curve, list[str], list[str]]:
    c = Curve("icosidodecahedron", "icosidodecahedral arrangement of 16 lines: t4 = 15, t2 = 30")
    others = [s for s in synthemes() if s not in TOTAL]
    assert len(others) == 10
    line_of = {}
    for n, s in enumerate(others, start=1):
        line_of[s] = f"L{n}"
    for n in range(1, 17):
        c.component(f"L{n}", 1)
    special = {a: f"L{10 + a}" for a in range(1, 7)}
    for a, b in itertools.combinations(range(1, 7), 2):
        through = [special[a], special[b]] + [line_of[s] for s in others if (a, b) in s]
        assert len(through) == 4
        c.ordinary(f"Q{a}{b}", through)
    for s, t in itertools.combinations(others, 2):
        if not set(s) & set(t):
            c.ordinary(f"D{line_of[s][1:]}-{line_of[t][1:]}", [line_of[s], line_of[t]])
    ordinary_ids = [line_of[s] for s in others]
    return c, ordinary_ids, [special[a] for a in range(1, 7)]


ico, ten, six = icosidodecahedron()
register(
    "icosidodecahedron",
    ico,
    notes="L1..L10 carry three quadruple and six double points each; L11..L16 carry five quadruple points each.",
    pencils={
        # ten lines (no residual), six lines times a double conic; double quintic of index 2
        "icosidodecahedron-pencil": pencil(
            10, 2, [(reduced(ten), 0, 0), (reduced(six), 2, 2)], [p["id"] for p in ico.points if p["id"][0] == "Q"]
        ),
    },
    expected=[
        ex("h1", 1, p=2, omega=ONES),
        ex("candidate_orders", [2, 4, 8, 16]),
    ]
    + [ex("upper_bound", 1, order=n) for n in (2, 4, 8, 16)],
    external=[{"order": 2, "value": 0, "source": "Alexander polynomial computed in the literature"}],
)


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    for old in OUT.glob("*.yaml"):
        old.unlink()
    for name, entry in FIXTURES.items():
        text = yaml.safe_dump(entry, sort_keys=False, default_flow_style=None, allow_unicode=True, width=120)
        (OUT / f"{name}.yaml").write_text(text, encoding="utf-8")
    print(f"wrote {len(FIXTURES)} fixtures to {OUT}")


if __name__ == "__main__":
    main()
