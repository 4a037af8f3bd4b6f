"""Per-order bounds on Alexander polynomial multiplicities.

Upper bounds come from h^1 of the combinatorial complex over GF(p) and are
available only for prime-power orders. Lower bounds come from pencil
structures. Exactness is recorded when the two meet, when a vanishing
certificate applies, or when an exact-multiplicity certificate applies.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import yaml

from .aomoto import h1
from .combinatorics import WeakCombinatorics
from .field_linalg import divisors, gcd_list, prime_power_base
from .pencil import (
    QuasiFiberStructure,
    RootsError,
    exact_multiplicity_nonreduced,
    exact_multiplicity_reduced,
    roots_lower_bounds,
)
from .reduction import triviality_certificate


class TwistError(ValueError):
    pass


@dataclass(frozen=True)
class TwistSpecification:
    weights: tuple[int, ...]

    def __post_init__(self):
        if any(m < 1 for m in self.weights):
            raise TwistError("twist weights must be positive")
        if gcd_list(self.weights) != 1:
            raise TwistError(f"twist weights {list(self.weights)} must have gcd 1")

    @classmethod
    def classical(cls, w: WeakCombinatorics) -> "TwistSpecification":
        return cls((1,) * w.r)

    @classmethod
    def for_curve(cls, w: WeakCombinatorics, weights: Sequence[int] | None) -> "TwistSpecification":
        if weights is None:
            return cls.classical(w)
        if len(weights) != w.r:
            raise TwistError(f"need {w.r} twist weights, got {len(weights)}")
        return cls(tuple(int(m) for m in weights))

    @property
    def is_classical(self) -> bool:
        return all(m == 1 for m in self.weights)

    def total_degree(self, w: WeakCombinatorics) -> int:
        return sum(d * m for d, m in zip(w.degrees, self.weights))

    def by_component(self, w: WeakCombinatorics) -> dict[str, int]:
        return dict(zip(w.component_ids, self.weights))


@dataclass
class MultiplicityBound:
    order: int
    lower: int = 0
    upper: int | None = None
    exact: bool = False
    provenance: list[str] = field(default_factory=list)
    external: list[dict] = field(default_factory=list)

    def interval(self) -> str:
        if self.exact:
            return f"= {self.lower}"
        hi = "?" if self.upper is None else str(self.upper)
        return f"in [{self.lower}, {hi}]"

    def contains(self, value: int) -> bool:
        return self.lower <= value and (self.upper is None or value <= self.upper)

    def as_dict(self) -> dict:
        out = {
            "order": self.order,
            "lower": self.lower,
            "upper": self.upper,
            "exact": self.exact,
            "provenance": list(self.provenance),
        }
        if self.external:
            out["external"] = [dict(e) for e in self.external]
        return out


def candidate_orders(w: WeakCombinatorics, twist: TwistSpecification | None = None) -> list[int]:
    twist = twist or TwistSpecification.classical(w)
    return [n for n in divisors(twist.total_degree(w)) if n > 1]


def upper_bound(w: WeakCombinatorics, twist: TwistSpecification, order: int) -> int | None:
    """h^1 of the twist form mod p when order = p^s, else None."""
    p = prime_power_base(order)
    if p is None:
        return None
    return h1(w, p, [m % p for m in twist.weights])


@dataclass
class Report:
    curve: str
    twist: TwistSpecification
    total_degree: int
    bounds: list[MultiplicityBound]
    background: int | None = None

    def get(self, order: int) -> MultiplicityBound:
        return next(b for b in self.bounds if b.order == order)

    def as_dict(self) -> dict:
        doc = {
            "curve": self.curve,
            "twist": list(self.twist.weights),
            "total_degree": self.total_degree,
        }
        if self.background is not None:
            doc["eigenvalue_one"] = {"value": self.background, "note": "background, not computed by the complex"}
        doc["bounds"] = [b.as_dict() for b in self.bounds]
        return doc

    def structured(self) -> str:
        return yaml.safe_dump(self.as_dict(), sort_keys=False, default_flow_style=None)

    def text(self) -> str:
        lines = [f"curve {self.curve}  twist {list(self.twist.weights)}  total degree {self.total_degree}"]
        if self.background is not None:
            lines.append(f"order 1: {self.background} (background)")
        lines.append(f"{'order':>6}  {'bound':<12} source")
        for b in self.bounds:
            first = b.provenance[0] if b.provenance else ""
            lines.append(f"{b.order:>6}  {b.interval():<12} {first}")
            for extra in b.provenance[1:]:
                lines.append(f"{'':>6}  {'':<12} {extra}")
            for e in b.external:
                lines.append(f"{'':>6}  {'':<12} external value {e['value']} ({e.get('source', 'literature')})")
        return "\n".join(lines) + "\n"


def _pencil_twist(twist: TwistSpecification, w: WeakCombinatorics, q: QuasiFiberStructure) -> dict[str, int]:
    weights = twist.by_component(w)
    return {c: weights[c] for c in q.multiplicities()}


def assemble_report(
    w: WeakCombinatorics,
    twist: TwistSpecification | None = None,
    structures: Mapping[str, QuasiFiberStructure] | None = None,
    external: Iterable[Mapping] = (),
) -> Report:
    twist = twist or TwistSpecification.classical(w)
    structures = dict(structures or {})
    external = list(external)
    bounds = []
    for n in candidate_orders(w, twist):
        b = MultiplicityBound(n)
        p = prime_power_base(n)
        if p is None:
            b.provenance.append("no combinatorial upper bound (order not a prime power)")
        else:
            b.upper = upper_bound(w, twist, n)
            b.provenance.append(f"upper {b.upper}: h1 over GF({p})")
            if b.upper == 0:
                form = [m % p for m in twist.weights]
                if any(form) and triviality_certificate(w, p, form) is not None:
                    b.provenance.append(f"vanishing certified by complete {p}-reduction")
        for name, q in structures.items():
            nu = _pencil_twist(twist, w, q)
            try:
                found = roots_lower_bounds(q, nu).as_dict().get(n)
            except RootsError as exc:
                b.provenance.append(f"pencil {name}: no lower bound ({exc})")
                continue
            if found is not None:
                b.provenance.append(f"lower {found}: pencil {name}")
                b.lower = max(b.lower, found)
            if p == n:
                for cert in (exact_multiplicity_reduced(w, p, q), exact_multiplicity_nonreduced(w, p, q)):
                    if cert.applies and cert.twist == nu:
                        b.provenance.append(f"exact {cert.value}: {cert.theorem} certificate from pencil {name}")
                        b.lower = max(b.lower, cert.value)
        if b.upper is not None and b.lower > b.upper:
            raise ValueError(f"order {n}: lower bound {b.lower} exceeds upper bound {b.upper}")
        b.exact = b.upper is not None and b.lower == b.upper
        b.external = [dict(e) for e in external if e.get("order") == n]
        bounds.append(b)
    background = w.r - 1 if twist.is_classical else None
    return Report(w.name, twist, twist.total_degree(w), bounds, background)
