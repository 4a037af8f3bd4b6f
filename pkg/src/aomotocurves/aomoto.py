"""The combinatorial Aomoto complex A^0 -> A^1 -> A^2 over GF(p).

A^1 has one generator sigma_i per component. A^2 has one generator per
non-preferred branch at every point meeting at least two components, plus one
"infinity" generator for each component whose degree is divisible by p.

For a branch delta of component c at a point, write
``mu(delta, k)`` for its total intersection with component k there. Then

    coeff of psi(P, delta) in a ^ b = b_c * sum_k mu(delta,k) a_k
                                    - a_c * sum_k mu(delta,k) b_k
    coeff of psi(inf, c)   in a ^ b = a_c * sum_k d_k b_k - b_c * sum_k d_k a_k

which extends ``sigma_i ^ sigma_j`` bilinearly. Summed over all branches at a
point the first expression vanishes, which is why dropping the preferred
branch loses nothing.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .combinatorics import WeakCombinatorics, is_ordinary
from .field_linalg import FieldMatrix, nullspace_basis, rank_gf2, require_prime, row_space_basis

DEFAULT_SCAN_BUDGET = 2**20
SCAN_BUDGET_ENV = "AOMOTOCURVES_SCAN_BUDGET"


class ScanBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class PointForm:
    point: str
    branch: str
    component: int
    # sparse row of mu(delta, k) over component indices k
    mu_to: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class AomotoBasis:
    """Ordered bases of A^1 and A^2 over GF(p) for one weak combinatorial type."""

    modulus: int
    components: tuple[str, ...]
    degrees: tuple[int, ...]
    point_forms: tuple[PointForm, ...]
    preferred: Mapping[str, str]
    infinity: tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.components)

    @property
    def dim_a2(self) -> int:
        return len(self.point_forms) + len(self.infinity)

    def labels(self) -> list[str]:
        out = [f"psi[{f.point};{f.branch}]" for f in self.point_forms]
        out += [f"psi[inf;{self.components[i]}]" for i in self.infinity]
        return out


def build_basis(w: WeakCombinatorics, p: int, preferred: Mapping[str, str] | None = None) -> AomotoBasis:
    """Basis with the first branch preferred at each point unless overridden."""
    require_prime(p)
    preferred = dict(preferred or {})
    chosen: dict[str, str] = {}
    forms: list[PointForm] = []
    for pt in w.points:
        if len({b.component for b in pt.branches}) < 2:
            continue
        pref = preferred.get(pt.id, pt.branches[0].id)
        pt.branch(pref)
        chosen[pt.id] = pref
        for b in pt.branches:
            if b.id == pref:
                continue
            totals: dict[int, int] = {}
            for other in pt.branches:
                if other.component != b.component:
                    k = w.index(other.component)
                    totals[k] = totals.get(k, 0) + pt.mu_pair(b.id, other.id)
            forms.append(PointForm(pt.id, b.id, w.index(b.component), tuple(sorted(totals.items()))))
    infinity = tuple(i for i, d in enumerate(w.degrees) if d % p == 0)
    return AomotoBasis(p, tuple(w.component_ids), tuple(w.degrees), tuple(forms), chosen, infinity)


@dataclass(frozen=True)
class TwoForm:
    modulus: int
    point_part: tuple[int, ...]
    infinity_part: tuple[int, ...]

    @property
    def vector(self) -> tuple[int, ...]:
        return self.point_part + self.infinity_part

    def is_zero(self) -> bool:
        return not any(self.vector)


def _form(basis: AomotoBasis, alpha: Sequence[int], name: str) -> list[int]:
    if len(alpha) != basis.r:
        raise ValueError(f"{name} has {len(alpha)} coefficients, expected {basis.r}")
    return [int(a) % basis.modulus for a in alpha]


def _basis_for(w: WeakCombinatorics, p: int, basis: AomotoBasis | None) -> AomotoBasis:
    return basis if basis is not None else build_basis(w, p)


def wedge(
    w: WeakCombinatorics, p: int, alpha: Sequence[int], beta: Sequence[int], basis: AomotoBasis | None = None
) -> TwoForm:
    basis = _basis_for(w, p, basis)
    a = _form(basis, alpha, "alpha")
    b = _form(basis, beta, "beta")
    point = []
    for f in basis.point_forms:
        sa = sum(m * a[k] for k, m in f.mu_to)
        sb = sum(m * b[k] for k, m in f.mu_to)
        point.append((b[f.component] * sa - a[f.component] * sb) % p)
    da = sum(d * x for d, x in zip(basis.degrees, a))
    db = sum(d * x for d, x in zip(basis.degrees, b))
    inf = [(a[i] * db - b[i] * da) % p for i in basis.infinity]
    return TwoForm(p, tuple(point), tuple(inf))


def _matrix_rows(basis: AomotoBasis, omega: Sequence[int]) -> list[list[int]]:
    # row of the map beta -> beta ^ omega, i.e. column j is sigma_j ^ omega
    p, r = basis.modulus, basis.r
    rows = []
    for f in basis.point_forms:
        row = [0] * r
        c = f.component
        for k, m in f.mu_to:
            row[k] = omega[c] * m % p
        row[c] = -sum(m * omega[k] for k, m in f.mu_to) % p
        rows.append(row)
    dw = sum(d * x for d, x in zip(basis.degrees, omega))
    for i in basis.infinity:
        row = [(-omega[i] * d) % p for d in basis.degrees]
        row[i] = (row[i] + dw) % p
        rows.append(row)
    return rows


def wedge_matrix(
    w: WeakCombinatorics, p: int, omega: Sequence[int], basis: AomotoBasis | None = None
) -> FieldMatrix:
    """Matrix of beta -> beta ^ omega; column j is sigma_j ^ omega."""
    basis = _basis_for(w, p, basis)
    om = _form(basis, omega, "omega")
    return FieldMatrix.from_rows(p, _matrix_rows(basis, om), cols=basis.r)


def h1(w: WeakCombinatorics, p: int, omega: Sequence[int], basis: AomotoBasis | None = None) -> int:
    """dim H^1 of the complex; equals r when omega = 0."""
    basis = _basis_for(w, p, basis)
    om = _form(basis, omega, "omega")
    m = FieldMatrix.from_rows(p, _matrix_rows(basis, om), cols=basis.r)
    return m.nullity() - (1 if any(om) else 0)


def kernel(w: WeakCombinatorics, p: int, omega: Sequence[int], basis: AomotoBasis | None = None) -> list[tuple[int, ...]]:
    """Basis of {beta : beta ^ omega = 0}."""
    return nullspace_basis(wedge_matrix(w, p, omega, basis))


def resonance_membership(w: WeakCombinatorics, p: int, omega: Sequence[int], k: int) -> bool:
    if k < 0:
        raise ValueError("k must be nonnegative")
    return h1(w, p, omega) >= k


# -- exhaustive scan ---------------------------------------------------------


@dataclass
class ScanResult:
    modulus: int
    classes: int
    counts: dict[int, int]
    representatives: dict[int, tuple[int, ...]]
    resonant: list[tuple[int, ...]] = field(default_factory=list)

    def stratum(self, value: int) -> int:
        return self.counts.get(value, 0)


def scan_budget() -> int:
    raw = os.environ.get(SCAN_BUDGET_ENV)
    return int(raw) if raw else DEFAULT_SCAN_BUDGET


def projective_classes(p: int, r: int):
    """Nonzero vectors of GF(p)^r whose first nonzero coordinate is 1."""
    for lead in range(r):
        tail = r - lead - 1
        for n in range(p**tail):
            v = [0] * lead + [1]
            digits = []
            for _ in range(tail):
                n, d = divmod(n, p)
                digits.append(d)
            yield tuple(v + digits[::-1])


def _scan_gf2(basis: AomotoBasis):
    # Gray-code walk over GF(2)^r with columns kept as bitmasks; column j of
    # the matrix is linear in omega, so one flip updates every column by XOR.
    r = basis.r
    table = [[0] * r for _ in range(r)]
    for k in range(r):
        unit = [0] * r
        unit[k] = 1
        rows = _matrix_rows(basis, unit)
        for j in range(r):
            table[k][j] = sum(1 << i for i, row in enumerate(rows) if row[j])
    cols = [0] * r
    omega = [0] * r
    for n in range(1, 2**r):
        k = (n & -n).bit_length() - 1
        omega[k] ^= 1
        tk = table[k]
        for j in range(r):
            cols[j] ^= tk[j]
        yield tuple(omega), r - rank_gf2(cols) - 1


def _span_classes(p: int, generators: Sequence[Sequence[int]]):
    """Normalized projective classes of the span of ``generators``."""
    rows = row_space_basis(p, generators)
    if not rows:
        return
    for coeffs in projective_classes(p, len(rows)):
        # echelon rows: the first nonzero entry of the combination is the first coefficient, i.e. 1
        yield tuple(sum(c * row[j] for c, row in zip(coeffs, rows)) % p for j in range(len(rows[0])))


def resonance_scan(
    w: WeakCombinatorics,
    p: int,
    k: int = 1,
    budget: int | None = None,
    within: Sequence[Sequence[int]] | None = None,
) -> ScanResult:
    """h^1 of every nonzero form up to scalar.

    ``within`` restricts the scan to the span of the given vectors.
    ``resonant`` lists the normalized classes with h^1 >= k.
    """
    require_prime(p)
    basis = build_basis(w, p)
    r = basis.r
    limit = scan_budget() if budget is None else budget
    if within is not None:
        vectors = list(_span_classes(p, within))
        classes = len(vectors)
        results = ((v, h1(w, p, v, basis)) for v in vectors)
    else:
        classes = (p**r - 1) // (p - 1)
        if classes > limit:
            raise ScanBudgetExceeded(f"{classes} projective classes exceed the scan budget {limit}")
        if p == 2:
            results = _scan_gf2(basis)
        else:
            results = ((v, h1(w, p, v, basis)) for v in projective_classes(p, r))
    counts: Counter = Counter()
    reps: dict[int, tuple[int, ...]] = {}
    resonant = []
    for v, value in results:
        counts[value] += 1
        if value not in reps or v < reps[value]:
            reps[value] = v
        if value >= k:
            resonant.append(v)
    return ScanResult(p, classes, dict(sorted(counts.items())), dict(sorted(reps.items())), sorted(resonant))


# -- ordinary points ---------------------------------------------------------


@dataclass(frozen=True)
class OrdinaryCondition:
    """Kernel condition at an ordinary point for a form with equal coefficients there.

    ``all_equal``: beta is constant on the incident components.
    ``sum_zero``: the beta coefficients of the incident components sum to zero.
    """

    point: str
    multiplicity: int
    kind: str
    components: tuple[str, ...]

    def holds(self, w: WeakCombinatorics, p: int, beta: Sequence[int]) -> bool:
        vals = [beta[w.index(c)] % p for c in self.components]
        if self.kind == "all_equal":
            return len(set(vals)) == 1
        return sum(vals) % p == 0


def ordinary_point_conditions(w: WeakCombinatorics, point_id: str, p: int) -> OrdinaryCondition:
    require_prime(p)
    if not is_ordinary(w, point_id):
        raise ValueError(f"point {point_id!r} is not ordinary")
    pt = w.point(point_id)
    s = len(pt.branches)
    kind = "sum_zero" if s % p == 0 else "all_equal"
    return OrdinaryCondition(point_id, s, kind, tuple(b.component for b in pt.branches))


def point_coefficients(
    w: WeakCombinatorics, p: int, alpha: Sequence[int], beta: Sequence[int], point_id: str,
    basis: AomotoBasis | None = None,
) -> tuple[int, ...]:
    """Coefficients of alpha ^ beta on the point forms of one point."""
    basis = _basis_for(w, p, basis)
    two = wedge(w, p, alpha, beta, basis)
    return tuple(c for f, c in zip(basis.point_forms, two.point_part) if f.point == point_id)


# -- matrix dump -------------------------------------------------------------


def dump_matrix(w: WeakCombinatorics, p: int, omega: Sequence[int]) -> str:
    """Row-major text dump with basis labels; stable across platforms."""
    basis = build_basis(w, p)
    m = wedge_matrix(w, p, omega, basis)
    lines = [
        f"# p={p} rows={m.rows} cols={m.cols}",
        "# omega=" + ",".join(str(int(x) % p) for x in omega),
        "# columns: " + " ".join(f"sigma[{c}]" for c in basis.components),
    ]
    for label, row in zip(basis.labels(), m.entries):
        lines.append(f"{label}\t" + " ".join(str(x) for x in row))
    return "\n".join(lines) + "\n"

