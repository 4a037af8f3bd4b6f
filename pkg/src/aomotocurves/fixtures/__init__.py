"""Built-in curves with their pencil structures and expected values.

Each fixture is a YAML document under ``data/`` holding a curve, optional
pencil structures keyed by name, a table of expected values used by the
regression tests, and optional externally known multiplicities that are
shown in reports but never used in computation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from typing import Any

import yaml

from ..combinatorics import WeakCombinatorics, parse
from ..pencil import QuasiFiberStructure, parse_structure


class UnknownFixture(KeyError):
    pass


@dataclass
class Fixture:
    name: str
    curve: WeakCombinatorics
    curve_document: dict
    pencil_documents: dict[str, dict] = field(default_factory=dict)
    expected: list[dict] = field(default_factory=list)
    external: list[dict] = field(default_factory=list)
    notes: str = ""

    def pencil(self, name: str | None = None) -> QuasiFiberStructure:
        if not self.pencil_documents:
            raise UnknownFixture(f"fixture {self.name!r} has no pencil structure")
        if name is None:
            name = next(iter(self.pencil_documents))
        if name not in self.pencil_documents:
            raise UnknownFixture(f"fixture {self.name!r} has no pencil {name!r}")
        return parse_structure(self.pencil_documents[name])

    def pencils(self) -> dict[str, QuasiFiberStructure]:
        return {n: parse_structure(d) for n, d in self.pencil_documents.items()}


def _data():
    return resources.files(__package__).joinpath("data")


def names() -> list[str]:
    return sorted(p.name[: -len(".yaml")] for p in _data().iterdir() if p.name.endswith(".yaml"))


def _raw(name: str) -> dict[str, Any]:
    path = _data().joinpath(f"{name}.yaml")
    if not path.is_file():
        raise UnknownFixture(f"unknown fixture {name!r}; known: {', '.join(names())}")
    return yaml.safe_load(path.read_text(encoding="utf-8"))


def load(name: str) -> Fixture:
    doc = _raw(name)
    return Fixture(
        doc["name"],
        parse(doc["curve"]),
        doc["curve"],
        dict(doc.get("pencils") or {}),
        list(doc.get("expected") or []),
        list(doc.get("external") or []),
        doc.get("notes", ""),
    )


def dump(name: str) -> str:
    """The fixture file verbatim."""
    _raw(name)
    return _data().joinpath(f"{name}.yaml").read_text(encoding="utf-8")


def find_pencil(name: str) -> tuple[Fixture, QuasiFiberStructure]:
    """Locate a pencil structure by name across all fixtures."""
    for fname in names():
        fx = load(fname)
        if name in fx.pencil_documents:
            return fx, fx.pencil(name)
    raise UnknownFixture(f"no fixture defines a pencil named {name!r}")


def contact_pair(d: int) -> WeakCombinatorics:
    """Two smooth degree-d curves meeting at one point with contact d^2."""
    if d < 1:
        raise ValueError("degree must be positive")
    return parse(
        {
            "meta": {"name": f"contact-pair-{d}"},
            "components": [{"id": "F1", "degree": d}, {"id": "F2", "degree": d}],
            "points": [
                {
                    "id": "P",
                    "branches": [{"id": "P.F1", "component": "F1"}, {"id": "P.F2", "component": "F2"}],
                    "mu": [["P.F1", "P.F2", d * d]],
                }
            ],
        }
    )
