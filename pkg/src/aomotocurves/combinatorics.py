"""Weak combinatorial type of a plane curve.

A curve is described by its irreducible components (with degrees) and its
singular points. Each point lists its local branches, the component each
branch belongs to, and the local intersection number of every pair of
branches lying on distinct components. Pairs are unordered.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence

import yaml

from .field_linalg import gcd_list


class CurveFormatError(ValueError):
    """A curve document is malformed; ``location`` points at the offending node."""

    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location


class DegreeRecoveryError(ValueError):
    pass


@dataclass(frozen=True)
class Component:
    id: str
    degree: int


@dataclass(frozen=True)
class Branch:
    id: str
    component: str


@dataclass(frozen=True, eq=False)
class SingularPoint:
    id: str
    branches: tuple[Branch, ...]
    mu: Mapping[frozenset, int]

    def branch(self, branch_id: str) -> Branch:
        for b in self.branches:
            if b.id == branch_id:
                return b
        raise KeyError(f"no branch {branch_id!r} at point {self.id!r}")

    def components(self) -> list[str]:
        """Incident component ids, in first-branch order."""
        return list(dict.fromkeys(b.component for b in self.branches))

    def mu_pair(self, a: str, b: str) -> int:
        return self.mu.get(frozenset((a, b)), 0)

    def __eq__(self, other):
        if not isinstance(other, SingularPoint):
            return NotImplemented
        return (self.id, self.branches, dict(self.mu)) == (other.id, other.branches, dict(other.mu))


@dataclass(frozen=True, eq=False)
class WeakCombinatorics:
    components: tuple[Component, ...]
    points: tuple[SingularPoint, ...]
    meta: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "_index", {c.id: i for i, c in enumerate(self.components)})
        object.__setattr__(self, "_points", {pt.id: pt for pt in self.points})

    def __eq__(self, other):
        if not isinstance(other, WeakCombinatorics):
            return NotImplemented
        return (self.components, self.points, dict(self.meta)) == (
            other.components,
            other.points,
            dict(other.meta),
        )

    @property
    def r(self) -> int:
        return len(self.components)

    @property
    def component_ids(self) -> list[str]:
        return [c.id for c in self.components]

    @property
    def degrees(self) -> list[int]:
        return [c.degree for c in self.components]

    @property
    def total_degree(self) -> int:
        return sum(self.degrees)

    @property
    def name(self) -> str:
        return str(self.meta.get("name", "curve"))

    def index(self, component_id: str) -> int:
        return self._index[component_id]

    def degree(self, component_id: str) -> int:
        return self.components[self._index[component_id]].degree

    def point(self, point_id: str) -> SingularPoint:
        return self._points[point_id]


# -- parsing -----------------------------------------------------------------

_TOP_KEYS = {"components", "points", "meta"}
_COMPONENT_KEYS = {"id", "degree"}
_POINT_KEYS = {"id", "branches", "mu", "default_mu"}
_BRANCH_KEYS = {"id", "component"}


def _check_keys(node: Any, allowed: set, required: set, loc: str) -> None:
    if not isinstance(node, Mapping):
        raise CurveFormatError(loc, f"expected a mapping, got {type(node).__name__}")
    unknown = set(node) - allowed
    if unknown:
        raise CurveFormatError(loc, f"unknown key(s) {sorted(map(str, unknown))}")
    missing = required - set(node)
    if missing:
        raise CurveFormatError(loc, f"missing key(s) {sorted(missing)}")


def _positive_int(value: Any, loc: str, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise CurveFormatError(loc, f"{what} must be a positive integer, got {value!r}")
    return value


def load_document(source: str | Mapping) -> Mapping:
    """Accept a YAML/JSON text or an already-loaded mapping."""
    if isinstance(source, Mapping):
        return source
    try:
        doc = yaml.safe_load(source)
    except yaml.YAMLError as exc:
        raise CurveFormatError("<document>", f"not valid YAML: {exc}") from exc
    if not isinstance(doc, Mapping):
        raise CurveFormatError("<document>", "top level must be a mapping")
    return doc


def parse(source: str | Mapping) -> WeakCombinatorics:
    """Build a WeakCombinatorics from a curve document.

    Every cross-component branch pair at a point needs a multiplicity, either
    listed in ``mu`` or supplied through the point's ``default_mu``.
    """
    doc = load_document(source)
    _check_keys(doc, _TOP_KEYS, {"components", "points"}, "<document>")

    comps: list[Component] = []
    seen: set[str] = set()
    if not isinstance(doc["components"], list):
        raise CurveFormatError("components", "expected a list")
    for n, node in enumerate(doc["components"]):
        loc = f"components[{n}]"
        _check_keys(node, _COMPONENT_KEYS, _COMPONENT_KEYS, loc)
        cid = str(node["id"])
        if cid in seen:
            raise CurveFormatError(loc, f"duplicate component id {cid!r}")
        seen.add(cid)
        comps.append(Component(cid, _positive_int(node["degree"], loc, "degree")))

    points: list[SingularPoint] = []
    point_ids: set[str] = set()
    branch_ids: set[str] = set()
    if not isinstance(doc["points"], list):
        raise CurveFormatError("points", "expected a list")
    for n, node in enumerate(doc["points"]):
        loc = f"points[{n}]"
        _check_keys(node, _POINT_KEYS, {"id", "branches"}, loc)
        pid = str(node["id"])
        if pid in point_ids:
            raise CurveFormatError(loc, f"duplicate point id {pid!r}")
        point_ids.add(pid)
        loc = f"points[{pid}]"
        if not isinstance(node["branches"], list) or not node["branches"]:
            raise CurveFormatError(loc, "branches must be a nonempty list")
        branches = []
        for m, bnode in enumerate(node["branches"]):
            bloc = f"{loc}.branches[{m}]"
            _check_keys(bnode, _BRANCH_KEYS, _BRANCH_KEYS, bloc)
            bid, comp = str(bnode["id"]), str(bnode["component"])
            if comp not in seen:
                raise CurveFormatError(bloc, f"unknown component {comp!r}")
            if bid in branch_ids:
                raise CurveFormatError(bloc, f"duplicate branch id {bid!r}")
            branch_ids.add(bid)
            branches.append(Branch(bid, comp))
        by_id = {b.id: b for b in branches}

        mu: dict[frozenset, int] = {}
        for m, entry in enumerate(node.get("mu") or []):
            mloc = f"{loc}.mu[{m}]"
            if not isinstance(entry, (list, tuple)) or len(entry) != 3:
                raise CurveFormatError(mloc, "expected [branchA, branchB, multiplicity]")
            a, b, value = str(entry[0]), str(entry[1]), entry[2]
            for x in (a, b):
                if x not in by_id:
                    raise CurveFormatError(mloc, f"branch {x!r} is not a branch of point {pid!r}")
            if by_id[a].component == by_id[b].component:
                raise CurveFormatError(
                    mloc, f"branches {a!r} and {b!r} lie on the same component {by_id[a].component!r}"
                )
            key = frozenset((a, b))
            if key in mu:
                raise CurveFormatError(mloc, f"duplicate multiplicity for pair ({a}, {b})")
            mu[key] = _positive_int(value, mloc, "multiplicity")

        default = node.get("default_mu")
        if default is not None:
            default = _positive_int(default, f"{loc}.default_mu", "default_mu")
        for b1, b2 in itertools.combinations(branches, 2):
            if b1.component == b2.component:
                continue
            key = frozenset((b1.id, b2.id))
            if key not in mu:
                if default is None:
                    raise CurveFormatError(f"{loc}.mu", f"missing multiplicity for pair ({b1.id}, {b2.id})")
                mu[key] = default
        points.append(SingularPoint(pid, tuple(branches), mu))

    meta = doc.get("meta") or {}
    if not isinstance(meta, Mapping):
        raise CurveFormatError("meta", "expected a mapping")
    return WeakCombinatorics(tuple(comps), tuple(points), dict(meta))


def serialize(w: WeakCombinatorics) -> dict:
    """Canonical document: explicit branch ids and the full mu list in branch order."""
    doc: dict[str, Any] = {}
    if w.meta:
        doc["meta"] = dict(w.meta)
    doc["components"] = [{"id": c.id, "degree": c.degree} for c in w.components]
    points = []
    for pt in w.points:
        mu = []
        for b1, b2 in itertools.combinations(pt.branches, 2):
            if b1.component != b2.component:
                mu.append([b1.id, b2.id, pt.mu[frozenset((b1.id, b2.id))]])
        points.append(
            {
                "id": pt.id,
                "branches": [{"id": b.id, "component": b.component} for b in pt.branches],
                "mu": mu,
            }
        )
    doc["points"] = points
    return doc


def dumps(w: WeakCombinatorics) -> str:
    return yaml.safe_dump(serialize(w), sort_keys=False, default_flow_style=None, allow_unicode=True)


# -- validation --------------------------------------------------------------


@dataclass
class BezoutViolation:
    first: str
    second: str
    observed: int
    expected: int

    def __str__(self):
        return (
            f"Bezout violation for ({self.first}, {self.second}): "
            f"sum of local multiplicities {self.observed} != {self.expected}"
        )


@dataclass
class ValidationReport:
    bezout_violations: list[BezoutViolation] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.bezout_violations

    def lines(self) -> list[str]:
        out = [str(v) for v in self.bezout_violations]
        out += [f"warning: {w}" for w in self.warnings]
        return out


def pairwise_degrees(w: WeakCombinatorics) -> dict[frozenset, int]:
    """Intersection number of every pair of distinct components, summed over points."""
    totals: dict[frozenset, int] = defaultdict(int)
    for pt in w.points:
        comp_of = {b.id: b.component for b in pt.branches}
        for key, value in pt.mu.items():
            a, b = tuple(key)
            totals[frozenset((comp_of[a], comp_of[b]))] += value
    return dict(totals)


def pairwise_degree(w: WeakCombinatorics, i: str, j: str) -> int:
    if i == j:
        raise ValueError("pairwise_degree needs two distinct components")
    w.index(i), w.index(j)
    return pairwise_degrees(w).get(frozenset((i, j)), 0)


def validate(w: WeakCombinatorics) -> ValidationReport:
    """Bezout check for every component pair, plus the torsion-freeness warning."""
    report = ValidationReport()
    totals = pairwise_degrees(w)
    for a, b in itertools.combinations(w.components, 2):
        observed = totals.get(frozenset((a.id, b.id)), 0)
        expected = a.degree * b.degree
        if observed != expected:
            report.bezout_violations.append(BezoutViolation(a.id, b.id, observed, expected))
    g = gcd_list(w.degrees)
    if g != 1:
        report.warnings.append(
            f"gcd of component degrees is {g} != 1; first homology of the complement may have torsion"
        )
    return report


def recover_degrees_from_pairs(ids: Sequence[str], pair_degree: Mapping[frozenset, int]) -> dict[str, int]:
    """Solve d_i = sqrt(d_ij d_ik / d_jk), checking every triple agrees."""
    if len(ids) < 3:
        raise DegreeRecoveryError("degree recovery needs at least 3 components")
    dij = {}
    for a, b in itertools.combinations(ids, 2):
        v = pair_degree.get(frozenset((a, b)), 0)
        if v <= 0:
            raise DegreeRecoveryError(f"components {a} and {b} do not meet; degrees are not recoverable")
        dij[frozenset((a, b))] = v
    result = {}
    for i in ids:
        value = None
        others = [x for x in ids if x != i]
        for j, k in itertools.combinations(others, 2):
            num = dij[frozenset((i, j))] * dij[frozenset((i, k))]
            den = dij[frozenset((j, k))]
            if num % den:
                raise DegreeRecoveryError(f"d_{i}^2 = {num}/{den} is not an integer (triple {i},{j},{k})")
            sq = num // den
            root = math.isqrt(sq)
            if root * root != sq:
                raise DegreeRecoveryError(f"d_{i}^2 = {sq} is not a perfect square (triple {i},{j},{k})")
            if value is not None and value != root:
                raise DegreeRecoveryError(f"triples disagree on d_{i}: {value} vs {root}")
            value = root
        result[i] = value
    for a, b in itertools.combinations(ids, 2):
        if result[a] * result[b] != dij[frozenset((a, b))]:
            raise DegreeRecoveryError(f"recovered degrees violate d_{a} d_{b} = d_{a}{b}")
    return result


def recover_degrees(w: WeakCombinatorics) -> dict[str, int]:
    """Degrees recovered from the intersection data alone (stored degrees are ignored)."""
    return recover_degrees_from_pairs(w.component_ids, pairwise_degrees(w))


def branch_to_component_multiplicity(w: WeakCombinatorics, point_id: str, branch_id: str, component_id: str) -> int:
    pt = w.point(point_id)
    branch = pt.branch(branch_id)
    w.index(component_id)
    if branch.component == component_id:
        raise ValueError("component must differ from the branch's own component")
    return sum(pt.mu_pair(branch_id, b.id) for b in pt.branches if b.component == component_id)


def is_ordinary(w: WeakCombinatorics, point_id: str) -> bool:
    """Pairwise transversal smooth branches, at most one branch per component."""
    pt = w.point(point_id)
    comps = [b.component for b in pt.branches]
    if len(set(comps)) != len(comps):
        return False
    return all(v == 1 for v in pt.mu.values())


def restrict(w: WeakCombinatorics, component_ids: Iterable[str], name: str | None = None) -> WeakCombinatorics:
    """Subcurve on the given components; points keep only their branches."""
    keep = set(component_ids)
    for c in keep:
        w.index(c)
    comps = tuple(c for c in w.components if c.id in keep)
    points = []
    for pt in w.points:
        branches = tuple(b for b in pt.branches if b.component in keep)
        if len({b.component for b in branches}) < 2:
            continue
        ids = {b.id for b in branches}
        mu = {k: v for k, v in pt.mu.items() if k <= ids}
        points.append(SingularPoint(pt.id, branches, mu))
    meta = dict(w.meta)
    meta["name"] = name or f"{w.name}|{','.join(c.id for c in comps)}"
    return WeakCombinatorics(comps, tuple(points), meta)


def with_degrees(w: WeakCombinatorics, degrees: Mapping[str, int]) -> WeakCombinatorics:
    comps = tuple(Component(c.id, degrees[c.id]) for c in w.components)
    return WeakCombinatorics(comps, w.points, dict(w.meta))
