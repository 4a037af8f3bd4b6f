"""Command-line front end.

Curve and pencil arguments accept either a file path or the name of a
built-in fixture (or fixture pencil). Results go to stdout, diagnostics to
stderr. Exit status: 0 success, 1 validation failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

import yaml

from . import fixtures
from .aomoto import ScanBudgetExceeded, dump_matrix, h1, resonance_scan
from .bounds_report import TwistError, TwistSpecification, assemble_report
from .combinatorics import CurveFormatError, WeakCombinatorics, parse, validate
from .field_linalg import is_prime
from .pencil import (
    QuasiFiberStructure,
    RootsError,
    exact_multiplicity_nonreduced,
    exact_multiplicity_reduced,
    parse_structure,
    roots_lower_bounds,
    validate_structure,
)
from .reduction import completely_p_reductive, transversality_graph, triviality_certificate


class UsageError(Exception):
    pass


class ValidationFailure(Exception):
    pass


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def load_curve(arg: str) -> tuple[WeakCombinatorics, list[dict]]:
    """Curve and its external annotations (fixtures only)."""
    if os.path.exists(arg):
        try:
            return parse(_read(arg)), []
        except CurveFormatError as exc:
            raise ValidationFailure(str(exc)) from exc
    if arg in fixtures.names():
        fx = fixtures.load(arg)
        return fx.curve, fx.external
    raise UsageError(f"{arg!r} is neither a file nor a fixture name")


def load_pencil(arg: str) -> tuple[str, QuasiFiberStructure]:
    if os.path.exists(arg):
        try:
            return os.path.basename(arg), parse_structure(_read(arg))
        except CurveFormatError as exc:
            raise ValidationFailure(str(exc)) from exc
    try:
        return arg, fixtures.find_pencil(arg)[1]
    except fixtures.UnknownFixture as exc:
        raise UsageError(f"{arg!r} is neither a file nor a fixture pencil") from exc


def _ints(text: str | None, what: str) -> list[int] | None:
    if text is None:
        return None
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"{what} must be comma-separated integers, got {text!r}") from exc


def _prime(p: int) -> int:
    if not is_prime(p):
        raise UsageError(f"{p} is not prime")
    return p


def _omega(args, w: WeakCombinatorics) -> list[int]:
    omega = _ints(args.omega, "--omega")
    if omega is None:
        return [1] * w.r
    if len(omega) != w.r:
        raise UsageError(f"--omega needs {w.r} coefficients, got {len(omega)}")
    return omega


def _emit(doc, fmt: str, text_lines: Sequence[str]) -> None:
    if fmt == "structured":
        sys.stdout.write(yaml.safe_dump(doc, sort_keys=False, default_flow_style=None))
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")


# -- subcommands -------------------------------------------------------------


def cmd_validate(args) -> int:
    w, _ = load_curve(args.curve)
    rep = validate(w)
    for line in rep.lines():
        print(line, file=sys.stderr)
    if not rep.ok:
        return 1
    print(f"{w.name}: ok ({w.r} components, {len(w.points)} points)")
    return 0


def cmd_h1(args) -> int:
    w, _ = load_curve(args.curve)
    p = _prime(args.p)
    omega = _omega(args, w)
    if args.dump_matrix:
        text = dump_matrix(w, p, omega)
        if args.dump_matrix == "-":
            sys.stderr.write(text)
        else:
            with open(args.dump_matrix, "w", encoding="utf-8") as fh:
                fh.write(text)
    print(h1(w, p, omega))
    return 0


def cmd_scan(args) -> int:
    w, _ = load_curve(args.curve)
    p = _prime(args.p)
    try:
        res = resonance_scan(w, p, k=args.k)
    except ScanBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    doc = {
        "prime": p,
        "classes": res.classes,
        "counts": res.counts,
        "representatives": {k: list(v) for k, v in res.representatives.items()},
    }
    lines = [f"{res.classes} projective classes over GF({p})"]
    lines += [f"h1={k}: {n} class(es), e.g. {','.join(map(str, res.representatives[k]))}" for k, n in res.counts.items()]
    _emit(doc, args.format, lines)
    return 0


def cmd_graph(args) -> int:
    w, _ = load_curve(args.curve)
    g = transversality_graph(w, _prime(args.p))
    edges = sorted((sorted(e), pts) for e, pts in g.edges.items())
    doc = {
        "vertices": g.vertices,
        "edges": [{"components": e, "points": pts} for e, pts in edges],
        "complete": g.is_complete(),
        "connected": g.is_connected(),
    }
    lines = [f"{e[0]} -- {e[1]}  at {','.join(pts)}" for e, pts in edges]
    lines.append(f"complete: {'yes' if g.is_complete() else 'no'}")
    lines.append(f"connected: {'yes' if g.is_connected() else 'no'}")
    _emit(doc, args.format, lines)
    return 0


def cmd_reduce(args) -> int:
    w, _ = load_curve(args.curve)
    p = _prime(args.p)
    omega = _omega(args, w)
    res = completely_p_reductive(w, p, omega, args.strategy)
    cert = triviality_certificate(w, p, omega) if args.strategy == "exhaustive" else None
    doc = {
        "completely_reductive": res.success,
        "strategy": res.strategy,
        "merges": [m.describe() for m in res.trace],
        "classes": [list(c) for c in res.classes],
        "warnings": res.warnings,
    }
    if cert is not None:
        doc["certificate"] = cert.to_document()
    lines = res.lines() + (cert.lines() if cert else [])
    _emit(doc, args.format, lines)
    return 0


def _pencil_summary(w, name, q, nu):
    rep = validate_structure(w, q)
    lines = [f"pencil {name}: {q.r} fibers, degree {q.degree}, index {q.index}"]
    lines += rep.lines()
    doc: dict = {"pencil": name, "valid": rep.ok, "diagnostics": rep.lines()}
    try:
        roots = roots_lower_bounds(q, nu)
        doc["roots"] = [{"order": n, "lower": b} for n, b in roots.bounds]
        lines += [f"order {n}: lower bound {b}" for n, b in roots.bounds]
    except RootsError as exc:
        doc["roots"] = []
        lines.append(f"no roots bound: {exc}")
        roots = None
    certs = []
    if rep.ok and roots is not None:
        for n, _ in roots.bounds:
            if is_prime(n):
                for cert in (exact_multiplicity_reduced(w, n, q), exact_multiplicity_nonreduced(w, n, q)):
                    if cert.applies:
                        certs.append({"order": n, "value": cert.value, "kind": cert.theorem})
                        lines.append(f"order {n}: exact multiplicity {cert.value} ({cert.theorem})")
    doc["exact"] = certs
    return rep.ok, doc, lines


def _twist_map(w, q, weights):
    if weights is None:
        return None
    if len(weights) != w.r:
        raise UsageError(f"--twists needs {w.r} weights, got {len(weights)}")
    full = dict(zip(w.component_ids, weights))
    return {c: full[c] for c in q.multiplicities()}


def cmd_pencil_bounds(args) -> int:
    w, _ = load_curve(args.curve)
    name, q = load_pencil(args.pencil)
    ok, doc, lines = _pencil_summary(w, name, q, _twist_map(w, q, _ints(args.twists, "--twists")))
    if not ok:
        for line in lines:
            print(line, file=sys.stderr)
        return 1
    _emit(doc, args.format, lines)
    return 0


def cmd_report(args) -> int:
    w, external = load_curve(args.curve)
    try:
        twist = TwistSpecification.for_curve(w, _ints(args.twists, "--twists"))
    except TwistError as exc:
        raise UsageError(str(exc)) from exc
    structures = {}
    for arg in args.pencil or []:
        name, q = load_pencil(arg)
        rep = validate_structure(w, q)
        if not rep.ok:
            for line in rep.lines():
                print(line, file=sys.stderr)
            return 1
        structures[name] = q
    report = assemble_report(w, twist, structures, external)
    sys.stdout.write(report.structured() if args.format == "structured" else report.text())
    return 0


def cmd_fixtures(args) -> int:
    if args.action == "list":
        for n in fixtures.names():
            print(n)
        return 0
    if not args.name:
        raise UsageError("fixtures dump needs a fixture name")
    try:
        sys.stdout.write(fixtures.dump(args.name))
    except fixtures.UnknownFixture as exc:
        raise UsageError(str(exc.args[0])) from exc
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="aomotocurves", description="Aomoto complexes of plane curve combinatorics")
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt(sp):
        sp.add_argument("--format", choices=["text", "structured"], default="text")

    sp = sub.add_parser("validate", help="check a curve document")
    sp.add_argument("curve")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("h1", help="dimension of H^1 for one form")
    sp.add_argument("curve")
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("--omega", help="comma-separated integer coefficients (default all ones)")
    sp.add_argument("--dump-matrix", metavar="PATH", help="write the wedge matrix ('-' for stderr)")
    sp.set_defaults(func=cmd_h1)

    sp = sub.add_parser("scan", help="h^1 of every form up to scalar")
    sp.add_argument("curve")
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("-k", type=int, default=1)
    fmt(sp)
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("graph", help="p-transversality graph")
    sp.add_argument("curve")
    sp.add_argument("-p", type=int, required=True)
    fmt(sp)
    sp.set_defaults(func=cmd_graph)

    sp = sub.add_parser("reduce", help="complete p-reduction and vanishing certificate")
    sp.add_argument("curve")
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("--omega")
    sp.add_argument("--strategy", choices=["greedy", "exhaustive"], default="exhaustive")
    fmt(sp)
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("pencil-bounds", help="lower bounds and exact multiplicities from a pencil")
    sp.add_argument("curve")
    sp.add_argument("pencil")
    sp.add_argument("--twists")
    fmt(sp)
    sp.set_defaults(func=cmd_pencil_bounds)

    sp = sub.add_parser("report", help="per-order multiplicity bounds")
    sp.add_argument("curve")
    sp.add_argument("--pencil", action="append")
    sp.add_argument("--twists")
    fmt(sp)
    sp.set_defaults(func=cmd_report)

    sp = sub.add_parser("fixtures", help="built-in examples")
    sp.add_argument("action", choices=["list", "dump"])
    sp.add_argument("name", nargs="?")
    sp.set_defaults(func=cmd_fixtures)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except ValidationFailure as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
