"""Quasi fiber-type structures: curves assembled from members of a pencil.

Fiber i of a structure is a product of curve components F_ij with
multiplicities m_ij, times a residual curve H_i (not part of the curve) with
multiplicity m_i. All fibers have the pencil degree d. The index k > 1 records
an extra k-fold member of the pencil outside the curve.

This module validates such structures against a weak combinatorial type,
builds the forms they induce, and evaluates the resonance and
root-of-unity bounds they imply.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping, Sequence

from .aomoto import h1, kernel
from .combinatorics import CurveFormatError, WeakCombinatorics, load_document, restrict
from .field_linalg import divisors, gcd_list, lcm_list, require_prime
from .reduction import completely_p_reductive


class StructureError(ValueError):
    pass


class RootsError(ValueError):
    pass


@dataclass(frozen=True)
class Fiber:
    components: tuple[tuple[str, int], ...]
    residual_m: int = 0
    residual_degree: int = 0

    @property
    def ids(self) -> list[str]:
        return [c for c, _ in self.components]

    @property
    def multiplicity(self) -> int:
        """gcd of the component multiplicities; > 1 marks a multiple fiber."""
        return gcd_list(m for _, m in self.components)


@dataclass(frozen=True, eq=False)
class QuasiFiberStructure:
    degree: int
    index: int
    fibers: tuple[Fiber, ...]
    base_points: tuple[str, ...]
    twists: Mapping[str, int] | None = None
    meta: Mapping[str, Any] = field(default_factory=dict)

    @property
    def r(self) -> int:
        return len(self.fibers)

    def fiber_of(self) -> dict[str, int]:
        return {c: i for i, f in enumerate(self.fibers) for c in f.ids}

    def multiplicities(self) -> dict[str, int]:
        return {c: m for f in self.fibers for c, m in f.components}

    def with_index(self, k: int) -> "QuasiFiberStructure":
        return QuasiFiberStructure(self.degree, k, self.fibers, self.base_points, self.twists, self.meta)


# -- document format ----------------------------------------------------------

_TOP = {"degree", "index", "fibers", "base_points", "twists", "meta", "curve"}


def _int(value, loc, what, minimum=0) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise CurveFormatError(loc, f"{what} must be an integer >= {minimum}, got {value!r}")
    return value


def _keys(node, allowed, required, loc):
    if not isinstance(node, Mapping):
        raise CurveFormatError(loc, "expected a mapping")
    extra = set(node) - allowed
    if extra:
        raise CurveFormatError(loc, f"unknown key(s) {sorted(map(str, extra))}")
    missing = required - set(node)
    if missing:
        raise CurveFormatError(loc, f"missing key(s) {sorted(missing)}")


def parse_structure(source: str | Mapping) -> QuasiFiberStructure:
    doc = load_document(source)
    _keys(doc, _TOP, {"degree", "fibers"}, "<pencil>")
    fibers = []
    if not isinstance(doc["fibers"], list) or not doc["fibers"]:
        raise CurveFormatError("fibers", "expected a nonempty list")
    for n, node in enumerate(doc["fibers"]):
        loc = f"fibers[{n}]"
        _keys(node, {"components", "residual"}, {"components"}, loc)
        comps = []
        for k, c in enumerate(node["components"] or []):
            cloc = f"{loc}.components[{k}]"
            _keys(c, {"id", "m"}, {"id"}, cloc)
            comps.append((str(c["id"]), _int(c.get("m", 1), cloc, "m", 1)))
        if not comps:
            raise CurveFormatError(loc, "fiber has no components")
        res = node.get("residual") or {}
        _keys(res, {"m", "degree"}, set(), f"{loc}.residual")
        fibers.append(
            Fiber(
                tuple(comps),
                _int(res.get("m", 0), f"{loc}.residual.m", "m"),
                _int(res.get("degree", 0), f"{loc}.residual.degree", "degree"),
            )
        )
    twists = None
    if doc.get("twists") is not None:
        twists = {}
        for k, t in enumerate(doc["twists"]):
            _keys(t, {"id", "nu"}, {"id", "nu"}, f"twists[{k}]")
            twists[str(t["id"])] = _int(t["nu"], f"twists[{k}]", "nu", 1)
    return QuasiFiberStructure(
        _int(doc["degree"], "degree", "degree", 1),
        _int(doc.get("index", 1), "index", "index", 1),
        tuple(fibers),
        tuple(str(x) for x in doc.get("base_points") or []),
        twists,
        dict(doc.get("meta") or {}),
    )


def serialize_structure(q: QuasiFiberStructure) -> dict:
    doc: dict[str, Any] = {"degree": q.degree, "index": q.index, "fibers": []}
    for f in q.fibers:
        doc["fibers"].append(
            {
                "components": [{"id": c, "m": m} for c, m in f.components],
                "residual": {"m": f.residual_m, "degree": f.residual_degree},
            }
        )
    doc["base_points"] = list(q.base_points)
    if q.twists:
        doc["twists"] = [{"id": c, "nu": v} for c, v in q.twists.items()]
    if q.meta:
        doc["meta"] = dict(q.meta)
    return doc


# -- validation ---------------------------------------------------------------


@dataclass
class StructureReport:
    errors: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    # (point id, branch id) -> mu_delta at base points
    profile: dict[tuple[str, str], int] = field(default_factory=dict)
    base_points: list[str] = field(default_factory=list)
    non_base_points: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def require(self) -> "StructureReport":
        if self.errors:
            raise StructureError("; ".join(self.errors))
        return self

    def lines(self) -> list[str]:
        return [f"error: {e}" for e in self.errors] + [f"warning: {x}" for x in self.warnings]


def _fiber_sums(w: WeakCombinatorics, q: QuasiFiberStructure, pt, branch, fiber_of, mult) -> dict[int, int]:
    """For each fiber j: sum over its components of m_jk * mu(branch, C_jk) at pt."""
    sums = {j: 0 for j in range(q.r)}
    for x in pt.branches:
        if x.component != branch.component:
            j = fiber_of[x.component]
            sums[j] += mult[x.component] * pt.mu_pair(branch.id, x.id)
    return sums


def _mu_delta(q: QuasiFiberStructure, own: int, sums: dict[int, int]) -> tuple[int | None, str]:
    """Common intersection of a branch with every other pencil member.

    Fibers without residual pin the value; a fiber with residual multiplicity
    m_j allows any value s_j + m_j * t with t >= 0.
    """
    others = [j for j in range(q.r) if j != own]
    fixed = {sums[j] for j in others if q.fibers[j].residual_m == 0}
    if len(fixed) > 1:
        return None, f"fibers without residual give different values {sorted(fixed)}"
    flexible = [j for j in others if q.fibers[j].residual_m > 0]

    def fits(v: int) -> bool:
        if v < 1 or (q.index > 1 and v % q.index):
            return False
        return all(v >= sums[j] and (v - sums[j]) % q.fibers[j].residual_m == 0 for j in flexible)

    if fixed:
        v = fixed.pop()
        if fits(v):
            return v, ""
        return None, f"value {v} is incompatible with residual members or index {q.index}"
    start = max([1] + [sums[j] for j in flexible])
    period = lcm_list([q.fibers[j].residual_m for j in flexible] + [q.index])
    for v in range(start, start + period):
        if fits(v):
            return v, ""
    return None, "no value compatible with the residual multiplicities"


def validate_structure(w: WeakCombinatorics, q: QuasiFiberStructure) -> StructureReport:
    """Degree, multiplicity and base-point checks of a pencil structure against ``w``."""
    rep = StructureReport()
    fiber_of: dict[str, int] = {}
    for i, f in enumerate(q.fibers):
        for c, _ in f.components:
            if c in fiber_of:
                rep.errors.append(f"component {c} appears in fibers {fiber_of[c] + 1} and {i + 1}")
            fiber_of[c] = i
    ids = set(w.component_ids)
    for c in fiber_of:
        if c not in ids:
            rep.errors.append(f"unknown component {c}")
    for c in w.component_ids:
        if c not in fiber_of:
            rep.errors.append(f"component {c} is in no fiber")
    if rep.errors:
        return rep
    mult = q.multiplicities()

    for i, f in enumerate(q.fibers, start=1):
        total = sum(m * w.degree(c) for c, m in f.components) + f.residual_m * f.residual_degree
        if total != q.degree:
            rep.errors.append(f"fiber {i} has degree {total}, pencil degree is {q.degree}")
        if (f.residual_m == 0) != (f.residual_degree == 0):
            rep.errors.append(f"fiber {i}: residual multiplicity is zero exactly when the residual degree is")
        if f.multiplicity != 1:
            rep.warnings.append(f"fiber {i} is a multiple fiber (gcd of multiplicities {f.multiplicity})")
        if q.index > 1 and f.residual_m and f.residual_m % q.index:
            rep.errors.append(f"index {q.index} does not divide residual multiplicity {f.residual_m} of fiber {i}")
    if rep.errors:
        return rep

    listed = set(q.base_points)
    for pid in listed:
        try:
            w.point(pid)
        except KeyError:
            rep.errors.append(f"base point {pid} is not a singular point of the curve")
    if q.r < 2:
        rep.warnings.append("a single fiber has no base-point profile")
    for pt in w.points:
        fibers_here = {fiber_of[b.component] for b in pt.branches}
        if pt.id not in listed:
            rep.non_base_points.append(pt.id)
            if len(fibers_here) > 1:
                rep.errors.append(f"point {pt.id} meets fibers {sorted(j + 1 for j in fibers_here)} but is not a base point")
            continue
        rep.base_points.append(pt.id)
        if q.r < 2:
            continue
        for b in pt.branches:
            own = fiber_of[b.component]
            sums = _fiber_sums(w, q, pt, b, fiber_of, mult)
            value, why = _mu_delta(q, own, sums)
            if value is None:
                rep.errors.append(f"inconsistent intersection profile at {pt.id}, branch {b.id}: {why}")
            else:
                rep.profile[(pt.id, b.id)] = value
    return rep


# -- forms -------------------------------------------------------------------


def associated_one_form(w: WeakCombinatorics, q: QuasiFiberStructure, alpha: Sequence[int], p: int) -> list[int]:
    """Component coefficients m_ij * alpha_i mod p, in the curve's component order."""
    require_prime(p)
    if len(alpha) != q.r:
        raise ValueError(f"need one coefficient per fiber ({q.r}), got {len(alpha)}")
    fiber_of = q.fiber_of()
    mult = q.multiplicities()
    return [mult[c] * alpha[fiber_of[c]] % p for c in w.component_ids]


def fiber_form(w: WeakCombinatorics, q: QuasiFiberStructure, weights: Mapping[str, int], i: int, p: int):
    """Subcurve of fiber i with the restriction of a component-weighted form."""
    sub = restrict(w, q.fibers[i].ids)
    return sub, [weights[c] % p for c in sub.component_ids]


def kernel_is_fiber_constant(w: WeakCombinatorics, q: QuasiFiberStructure, p: int, omega: Sequence[int]) -> bool:
    """Every kernel vector of . ^ omega has the form m_ij * beta_i."""
    fiber_of = q.fiber_of()
    mult = q.multiplicities()
    for v in kernel(w, p, omega):
        seen: dict[int, int] = {}
        for c, x in zip(w.component_ids, v):
            m = mult[c] % p
            if m == 0:
                if x % p:
                    return False
                continue
            beta = x * pow(m, -1, p) % p
            i = fiber_of[c]
            if seen.setdefault(i, beta) != beta:
                return False
    return True


@dataclass
class BoundResult:
    value: int | None
    case: str
    failures: list[str] = field(default_factory=list)

    @property
    def applies(self) -> bool:
        return self.value is not None


def fibered_lower_bound(w: WeakCombinatorics, p: int, q: QuasiFiberStructure, alpha: Sequence[int]) -> BoundResult:
    """Lower bound on h^1 of the associated form of per-fiber coefficients ``alpha``."""
    require_prime(p)
    bad = [i + 1 for i, f in enumerate(q.fibers) if f.residual_m % p]
    if bad:
        return BoundResult(None, "hypothesis", [f"residual multiplicity not divisible by {p} in fiber(s) {bad}"])
    if q.index % p == 0:
        return BoundResult(q.r - 1, f"index divisible by {p}")
    if sum(alpha) % p == 0:
        return BoundResult(max(q.r - 2, 0), "fiber coefficients sum to zero")
    return BoundResult(0, "no bound")


def _fibers_reductive(w, q, p, weights) -> list[str]:
    failures = []
    for i in range(q.r):
        sub, form = fiber_form(w, q, weights, i, p)
        if sub.r > 1 and not completely_p_reductive(sub, p, form).success:
            failures.append(f"fiber {i + 1} is not completely {p}-reductive")
    return failures


@dataclass
class ExactH1(BoundResult):
    kernel_is_fiber_span: bool = False


def exact_h1_index_p(w: WeakCombinatorics, p: int, q: QuasiFiberStructure, alpha: Sequence[int]) -> ExactH1:
    """Exact h^1 of an associated form when every fiber reduces completely."""
    require_prime(p)
    rep = validate_structure(w, q)
    failures = list(rep.errors)
    if any(f.residual_m % p for f in q.fibers):
        failures.append(f"some residual multiplicity is not divisible by {p}")
    alpha = [a % p for a in alpha]
    omega = associated_one_form(w, q, alpha, p)
    if not all(omega):
        failures.append("associated form has a zero coefficient")
    if sum(alpha) % p == 0:
        case = "sum"
    elif q.index % p == 0 and len(set(alpha)) == 1:
        case = "index"
    else:
        case = ""
        failures.append(f"fiber coefficients do not sum to zero and the index is not divisible by {p}")
    if not failures:
        mult = q.multiplicities()
        weights = {c: omega[w.index(c)] for c in mult}
        failures += _fibers_reductive(w, q, p, weights)
    if failures:
        return ExactH1(None, "hypothesis", failures)
    if case == "index":
        return ExactH1(q.r - 1, "index divisible by p", kernel_is_fiber_span=True)
    if all(v % p == 0 for v in rep.profile.values()):
        return ExactH1(q.r - 1, "all base-point multiplicities vanish mod p", kernel_is_fiber_span=True)
    return ExactH1(q.r - 2, "not all base-point multiplicities vanish mod p")


# -- roots of the twisted Alexander polynomial -----------------------------------


@dataclass
class RootsBounds:
    bounds: list[tuple[int, int]]
    ratios: list[Fraction]
    common_denominator: int
    modulus_gcd: int

    def as_dict(self) -> dict[int, int]:
        return dict(self.bounds)


def default_twist(q: QuasiFiberStructure) -> dict[str, int]:
    return dict(q.twists) if q.twists else {c: 1 for f in q.fibers for c in f.ids}


def roots_lower_bounds(q: QuasiFiberStructure, nu: Mapping[str, int] | None = None) -> RootsBounds:
    """Orders N and lower bounds b_N >= l_N + r_0 - 2 from the pencil."""
    nu = dict(nu) if nu is not None else default_twist(q)
    mult = q.multiplicities()
    missing = set(mult) - set(nu)
    if missing:
        raise RootsError(f"no twist weight for {sorted(missing)}")
    if gcd_list(nu[c] for c in mult) != 1:
        raise RootsError("twist weights must have gcd 1")
    ratios = []
    for i, f in enumerate(q.fibers, start=1):
        values = {Fraction(nu[c], m) for c, m in f.components}
        if len(values) != 1:
            raise RootsError(f"fiber {i}: nu/m is not constant ({sorted(values)})")
        ratios.append(values.pop())
    ratios.insert(0, sum(ratios, Fraction(0)))
    ms = [q.index] + [f.residual_m for f in q.fibers]
    qq = lcm_list([x.denominator for x in ratios])
    terms = [int(x * qq) for x in ratios]
    modulus = gcd_list(t * m for t, m in zip(terms, ms))
    if modulus == 0:
        raise RootsError("all terms vanish; no order constraint")
    r0 = sum(1 for m in ms if m == 0)
    bounds = []
    for n in divisors(modulus):
        if n == 1:
            continue
        ell = sum(1 for t, m in zip(terms, ms) if t % n and m)
        bounds.append((n, max(ell + r0 - 2, 0)))
    return RootsBounds(bounds, ratios, qq, modulus)


# -- exact multiplicities ---------------------------------------------------------


@dataclass
class MultiplicityCertificate:
    order: int
    value: int | None
    twist: dict[str, int]
    upper: int | None = None
    lower: int | None = None
    failures: list[str] = field(default_factory=list)
    theorem: str = ""

    @property
    def applies(self) -> bool:
        return self.value is not None


def _some_base_branch_coprime(rep: StructureReport, p: int) -> bool:
    return any(v % p for v in rep.profile.values())


def exact_multiplicity_reduced(
    w: WeakCombinatorics, p: int, q: QuasiFiberStructure, mbar: Mapping[str, int] | None = None
) -> MultiplicityCertificate:
    """b_p = r - 2 for the twist given by the fiber multiplicities, when p | r."""
    require_prime(p)
    mult = q.multiplicities()
    twist = dict(mbar) if mbar is not None else dict(mult)
    cert = MultiplicityCertificate(p, None, twist, theorem="reduced fiber-type")
    rep = validate_structure(w, q)
    cert.failures += rep.errors
    if any(f.residual_m for f in q.fibers):
        cert.failures.append("not fiber-type: some fiber has a residual member")
    if q.r % p:
        cert.failures.append(f"{p} does not divide the number of fibers {q.r}")
    if twist != mult:
        cert.failures.append("twist must equal the fiber multiplicities")
    if gcd_list(twist.values()) != 1:
        cert.failures.append("twist weights must have gcd 1")
    if any(m % p == 0 for m in mult.values()):
        cert.failures.append(f"some multiplicity is divisible by {p}")
    if rep.ok and not _some_base_branch_coprime(rep, p):
        cert.failures.append(f"every base-point multiplicity is divisible by {p}")
    if cert.failures:
        return cert
    cert.failures += _fibers_reductive(w, q, p, mult)
    if cert.failures:
        return cert
    # upper route: the associated form with all fiber coefficients 1
    upper = exact_h1_index_p(w, p, q, [1] * q.r)
    # lower route: the pencil with trivial multiple member
    lower = roots_lower_bounds(q.with_index(1), twist).as_dict().get(p)
    return _close(cert, upper, lower, q.r - 2)


def exact_multiplicity_nonreduced(w: WeakCombinatorics, p: int, q: QuasiFiberStructure) -> MultiplicityCertificate:
    """b_p = r - 1 when one fiber is k-fold and p | 1 + k r (r = other fibers)."""
    require_prime(p)
    multiple = [i for i, f in enumerate(q.fibers) if f.multiplicity > 1]
    mult = q.multiplicities()
    cert = MultiplicityCertificate(p, None, {}, theorem="fiber-type with a multiple fiber")
    if len(multiple) != 1:
        cert.failures.append(f"need exactly one multiple fiber, found {len(multiple)}")
        return cert
    i1 = multiple[0]
    k = q.fibers[i1].multiplicity
    r = q.r - 1
    nu = {c: (m // k if q.fiber_of()[c] == i1 else m) for c, m in mult.items()}
    cert.twist = nu
    rep = validate_structure(w, q)
    cert.failures += rep.errors
    if any(f.residual_m for f in q.fibers):
        cert.failures.append("not fiber-type: some fiber has a residual member")
    if (1 + k * r) % p:
        cert.failures.append(f"{p} does not divide 1 + {k}*{r}")
    if gcd_list(nu.values()) != 1:
        cert.failures.append("twist weights must have gcd 1")
    if any(v % p == 0 for v in nu.values()):
        cert.failures.append(f"some twist weight is divisible by {p}")
    if rep.ok and not _some_base_branch_coprime(rep, p):
        cert.failures.append(f"every base-point multiplicity is divisible by {p}")
    if cert.failures:
        return cert
    cert.failures += _fibers_reductive(w, q, p, nu)
    if cert.failures:
        return cert
    # upper route: alpha = 1/k on the multiple fiber and 1 elsewhere
    inv_k = pow(k, -1, p)
    alpha = [inv_k if i == i1 else 1 for i in range(q.r)]
    upper = exact_h1_index_p(w, p, q, alpha)
    lower = roots_lower_bounds(q.with_index(1), nu).as_dict().get(p)
    return _close(cert, upper, lower, r - 1)


def _close(cert: MultiplicityCertificate, upper: ExactH1, lower: int | None, expected: int) -> MultiplicityCertificate:
    cert.upper = upper.value
    cert.lower = lower
    if upper.value is None:
        cert.failures += upper.failures
    elif upper.value != expected:
        cert.failures.append(f"upper route gives {upper.value}, expected {expected}")
    if lower is None:
        cert.failures.append("lower route gives no bound at this order")
    elif lower != expected:
        cert.failures.append(f"lower route gives {lower}, expected {expected}")
    if not cert.failures:
        cert.value = expected
    return cert


def direct_h1(w: WeakCombinatorics, p: int, q: QuasiFiberStructure, alpha: Sequence[int]) -> int:
    return h1(w, p, associated_one_form(w, q, alpha, p))
