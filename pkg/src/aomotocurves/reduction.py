"""p-transversality and the merging procedure that certifies h^1 = 0.

Components start in singleton classes. At a point whose incident components
fall into exactly two current classes I and J, the classes may be merged when
some branch on the I side has a weighted intersection with J,
``sum over components j in J of mu(branch, j) * alpha_j``, nonzero mod p.
Reaching a single class proves that every kernel partner of alpha is a
multiple of alpha.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .combinatorics import WeakCombinatorics, restrict
from .field_linalg import require_prime


class Partition:
    """Union-find over component ids with a replayable merge trace."""

    def __init__(self, ids: Sequence[str]):
        self._ids = list(ids)
        self._parent = {c: c for c in ids}
        self.trace: list[Merge] = []

    def find(self, c: str) -> str:
        root = c
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[c] != root:
            self._parent[c], c = root, self._parent[c]
        return root

    def union(self, a: str, b: str) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        # keep the earlier id as representative so classes print stably
        if self._ids.index(rb) < self._ids.index(ra):
            ra, rb = rb, ra
        self._parent[rb] = ra
        return True

    def apply(self, merge: "Merge") -> None:
        self.union(merge.classes[0][0], merge.classes[1][0])
        self.trace.append(merge)

    def classes(self) -> list[tuple[str, ...]]:
        groups: dict[str, list[str]] = {}
        for c in self._ids:
            groups.setdefault(self.find(c), []).append(c)
        return [tuple(g) for g in groups.values()]

    def class_of(self, c: str) -> tuple[str, ...]:
        root = self.find(c)
        return tuple(x for x in self._ids if self.find(x) == root)

    def key(self) -> frozenset:
        return frozenset(frozenset(g) for g in self.classes())

    def copy(self) -> "Partition":
        other = Partition(self._ids)
        other._parent = dict(self._parent)
        other.trace = list(self.trace)
        return other

    def __len__(self) -> int:
        return len(self.classes())


@dataclass(frozen=True)
class Merge:
    point: str
    classes: tuple[tuple[str, ...], tuple[str, ...]]
    witness: str
    value: int

    def describe(self) -> str:
        a, b = ("{" + ",".join(c) + "}" for c in self.classes)
        return f"merge {a} + {b} at {self.point} (branch {self.witness}, weighted sum {self.value})"


def _merges_at(w: WeakCombinatorics, p: int, alpha: Sequence[int], part: Partition, pt) -> list[Merge]:
    comp_class = {b.component: part.find(b.component) for b in pt.branches}
    roots = list(dict.fromkeys(comp_class.values()))
    if len(roots) != 2:
        return []
    found = []
    for b in pt.branches:
        own = comp_class[b.component]
        other = roots[1] if own == roots[0] else roots[0]
        total = 0
        for x in pt.branches:
            if comp_class[x.component] == other:
                total += pt.mu_pair(b.id, x.id) * alpha[w.index(x.component)]
        total %= p
        if total:
            pair = (part.class_of(own), part.class_of(other))
            found.append(Merge(pt.id, pair, b.id, total))
    return found


def reduction_step(w: WeakCombinatorics, p: int, alpha: Sequence[int], part: Partition | None = None) -> list[Merge]:
    """Every merge enabled for the current partition, all witnesses listed."""
    require_prime(p)
    part = part or Partition(w.component_ids)
    alpha = [int(a) % p for a in alpha]
    out = []
    for pt in w.points:
        out.extend(_merges_at(w, p, alpha, part, pt))
    return out


def p_transversal_points(w: WeakCombinatorics, p: int) -> list[Merge]:
    """Witnesses at points on exactly two components, independent of any form."""
    return reduction_step(w, p, [1] * w.r)


@dataclass
class TransversalityGraph:
    vertices: list[str]
    edges: dict[frozenset, list[str]]

    def is_complete(self) -> bool:
        n = len(self.vertices)
        return len(self.edges) == n * (n - 1) // 2

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            v = stack.pop()
            for e in self.edges:
                if v in e:
                    for u in e - {v}:
                        if u not in seen:
                            seen.add(u)
                            stack.append(u)
        return len(seen) == len(self.vertices)


def transversality_graph(w: WeakCombinatorics, p: int) -> TransversalityGraph:
    edges: dict[frozenset, list[str]] = {}
    for m in p_transversal_points(w, p):
        key = frozenset((m.classes[0][0], m.classes[1][0]))
        pts = edges.setdefault(key, [])
        if m.point not in pts:
            pts.append(m.point)
    return TransversalityGraph(w.component_ids, edges)


@dataclass
class ReductionResult:
    success: bool
    strategy: str
    trace: list[Merge]
    classes: list[tuple[str, ...]]
    explored: int = 1
    non_coordinate: bool = True
    warnings: list[str] = field(default_factory=list)

    def lines(self) -> list[str]:
        out = [m.describe() for m in self.trace]
        verdict = "single class reached" if self.success else "stuck"
        out.append(f"{verdict} ({self.strategy}, {self.explored} partition(s) explored)")
        out += [f"warning: {x}" for x in self.warnings]
        if not self.success:
            out.append("final classes: " + " ".join("{" + ",".join(c) + "}" for c in self.classes))
        return out


def _greedy(w, p, alpha) -> ReductionResult:
    part = Partition(w.component_ids)
    explored = 1
    while len(part) > 1:
        merges = reduction_step(w, p, alpha, part)
        if not merges:
            break
        part.apply(merges[0])
        explored += 1
    return ReductionResult(len(part) == 1, "greedy", part.trace, part.classes(), explored)


DEFAULT_STATE_BUDGET = 2000


def _exhaustive(w, p, alpha, max_states: int) -> ReductionResult:
    start = Partition(w.component_ids)
    seen = {start.key()}
    stack = [start]
    coarsest = start
    while stack:
        part = stack.pop()
        if len(part) == 1:
            return ReductionResult(True, "exhaustive", part.trace, part.classes(), len(seen))
        if len(part) < len(coarsest):
            coarsest = part
        # reversed so the first enabled merge is explored first
        for m in reversed(reduction_step(w, p, alpha, part)):
            nxt = part.copy()
            nxt.apply(m)
            k = nxt.key()
            if k not in seen:
                seen.add(k)
                stack.append(nxt)
        if len(seen) > max_states:
            result = ReductionResult(False, "exhaustive", coarsest.trace, coarsest.classes(), len(seen))
            result.warnings.append(f"search stopped after {max_states} partitions; result inconclusive")
            return result
    return ReductionResult(False, "exhaustive", coarsest.trace, coarsest.classes(), len(seen))


def completely_p_reductive(
    w: WeakCombinatorics,
    p: int,
    alpha: Sequence[int],
    strategy: str = "exhaustive",
    max_states: int = DEFAULT_STATE_BUDGET,
) -> ReductionResult:
    """Run the merging procedure; success means a single class was reached.

    The exhaustive strategy backtracks over merge orders, visiting each
    partition once, and gives up after ``max_states`` partitions.
    """
    require_prime(p)
    alpha = [int(a) % p for a in alpha]
    if len(alpha) != w.r:
        raise ValueError(f"form has {len(alpha)} coefficients, expected {w.r}")
    if strategy == "greedy":
        result = _greedy(w, p, alpha)
    elif strategy == "exhaustive":
        greedy = _greedy(w, p, alpha)
        result = greedy if greedy.success else _exhaustive(w, p, alpha, max_states)
        result.strategy = "exhaustive"
        if greedy.success != result.success and not result.warnings:
            result.warnings.append("greedy and exhaustive strategies disagree on this input")
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    result.non_coordinate = all(alpha)
    return result


@dataclass
class EliminationResult:
    curve: WeakCombinatorics
    form: list[int]
    removed: list[str]
    warnings: list[str] = field(default_factory=list)


def _removable(w: WeakCombinatorics, p: int, alpha: Sequence[int], i: int) -> bool:
    if sum(d * a for d, a in zip(w.degrees, alpha)) % p:
        return True
    cid = w.components[i].id
    for pt in w.points:
        for b in pt.branches:
            if b.component != cid:
                continue
            s = sum(pt.mu_pair(b.id, x.id) * alpha[w.index(x.component)] for x in pt.branches if x.component != cid)
            if s % p:
                return True
    return False


def coordinate_elimination(w: WeakCombinatorics, p: int, alpha: Sequence[int]) -> EliminationResult:
    """Drop zero-coefficient components that every kernel partner must vanish on."""
    require_prime(p)
    alpha = [int(a) % p for a in alpha]
    if not any(alpha):
        return EliminationResult(w, alpha, [], ["zero form: nothing to eliminate"])
    removed = []
    while True:
        idx = next((i for i, a in enumerate(alpha) if a == 0 and _removable(w, p, alpha, i)), None)
        if idx is None:
            break
        removed.append(w.components[idx].id)
        keep = [c.id for n, c in enumerate(w.components) if n != idx]
        w = restrict(w, keep, name=w.name)
        alpha = alpha[:idx] + alpha[idx + 1 :]
    return EliminationResult(w, alpha, removed)


@dataclass
class TrivialityCertificate:
    """Merge trace proving h^1(alpha) = 0 over GF(p)."""

    modulus: int
    curve: str
    form: list[int]
    removed: list[str]
    reduction: ReductionResult

    def to_document(self) -> dict:
        return {
            "curve": self.curve,
            "prime": self.modulus,
            "form": list(self.form),
            "removed_components": list(self.removed),
            "strategy": self.reduction.strategy,
            "merges": [
                {
                    "point": m.point,
                    "classes": [list(m.classes[0]), list(m.classes[1])],
                    "witness_branch": m.witness,
                    "weighted_sum": m.value,
                }
                for m in self.reduction.trace
            ],
            "conclusion": "h1 = 0",
        }

    def lines(self) -> list[str]:
        out = [f"certificate: h1 = 0 over GF({self.modulus}) for form {self.form}"]
        if self.removed:
            out.append("removed zero-coefficient components: " + ", ".join(self.removed))
        out += [m.describe() for m in self.reduction.trace]
        return out


def triviality_certificate(w: WeakCombinatorics, p: int, alpha: Sequence[int]) -> TrivialityCertificate | None:
    """Certificate that h^1 vanishes, or None when the procedure cannot decide."""
    elim = coordinate_elimination(w, p, alpha)
    if not any(elim.form) or not all(elim.form):
        return None
    result = completely_p_reductive(elim.curve, p, elim.form, "exhaustive")
    if not result.success:
        return None
    return TrivialityCertificate(p, w.name, [int(a) % p for a in alpha], elim.removed, result)
