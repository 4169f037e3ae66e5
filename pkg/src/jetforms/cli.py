"""Command-line front end.

Exit codes: 0 when a result or verdict was computed (including negative
verdicts), 1 for usage, parse and domain errors, 2 when an internal invariant
is violated.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .catalog import CatalogInvariantError, UnknownEquation, catalog, names
from .dsl import DimensionError, ParseError, UnknownParameter, parse_form, parse_jet_polynomial
from .euler import WrongDegree, euler, euler_first_order
from .exterior import DifferentialForm
from .jetcalc import JetContext, effective_part, hodge_lepage_residual, is_effective, project
from .jetpde import (
    ExtendedGeneratorPresent,
    MAEquation,
    NotRepresentable,
    OrderTooHigh,
    euler_lagrange_fields,
    extract_pde,
    synthesize_form,
)
from .msympl import DEFAULT_SAMPLES, DEFAULT_SEED, NotEffective, check_harrivel, helein_kg
from .ratpoly import Polynomial
from .render import SchemaError, from_json, render
from .variational import reconstruct

USER_ERRORS = (
    ParseError,
    DimensionError,
    UnknownParameter,
    UnknownEquation,
    WrongDegree,
    NotEffective,
    NotRepresentable,
    OrderTooHigh,
    ExtendedGeneratorPresent,
    SchemaError,
    OSError,
    json.JSONDecodeError,
)


class UsageError(Exception):
    pass


@dataclass
class Workspace:
    """Dimension, declared parameters and named bindings shared by a command."""

    n: int
    params: tuple[str, ...] = ()
    bindings: dict[str, Any] = field(default_factory=dict)

    @property
    def context(self) -> JetContext:
        try:
            return JetContext(self.n, self.params)
        except ValueError as exc:
            raise DimensionError(str(exc)) from exc

    def _load(self, text: str) -> Any:
        if text.startswith("@"):
            content = Path(text[1:]).read_text(encoding="utf-8")
            stripped = content.strip()
            if stripped.startswith("{"):
                return from_json(json.loads(stripped))
            return stripped
        return text

    def form(self, text: str) -> DifferentialForm:
        value = self._load(text)
        if isinstance(value, Polynomial):
            return DifferentialForm.scalar(self.context.generators, value)
        if isinstance(value, DifferentialForm):
            if value.gens.n != self.n:
                raise DimensionError(f"form has n={value.gens.n}, workspace has n={self.n}")
            return value
        return parse_form(value, self.context)

    def jet_polynomial(self, text: str, fields: Sequence[str] = ("phi",)) -> Polynomial:
        value = self._load(text)
        if isinstance(value, Polynomial):
            return value
        if isinstance(value, DifferentialForm):
            raise UsageError("expected a polynomial, got a form document")
        return parse_jet_polynomial(value, fields=fields, params=self.params, n=self.n)

    def bind(self, name: str, value: Any) -> Any:
        self.bindings[name] = value
        return value


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # usage errors exit with 1, not argparse's 2
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--n", type=int, default=d(4), help="base dimension (default 4)")
    parser.add_argument("--param", action="append", default=d([]), help="declare parameters, e.g. --param m or --param a,b")
    parser.add_argument("--format", choices=("text", "json", "latex"), default=d("text"))
    parser.add_argument("--seed", type=int, default=d(DEFAULT_SEED), help="seed for sampled checks")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="jetforms", description="Exterior calculus on J^1 M for Monge-Ampere equations.")
    parser.add_argument("--version", action="version", version=f"jetforms {__version__}")
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name: str, help: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, help=help, parents=[common])

    p = cmd("effective", "effective part of an n-form (after projection)")
    p.add_argument("form")
    p.add_argument("--residual", action="store_true", help="also print x with w = w_eff + x^Omega")

    p = cmd("euler", "Euler operator of an n-form, or of L*beta for a polynomial L")
    p.add_argument("form", help="n-form, or a polynomial Lagrangian in q, u, p")

    p = cmd("extract", "Monge-Ampere equation of an n-form")
    p.add_argument("form")

    p = cmd("represent", "synthesize a representing n-form for an equation in phi")
    p.add_argument("pde")
    p.add_argument("--degree", type=int, default=0, help="max coefficient degree (default 0)")

    p = cmd("check-variational", "first-order variational necessary condition and reconstruction")
    p.add_argument("form")
    p.add_argument("--degree", type=int, default=2, help="max total degree of L (default 2)")

    p = cmd("check-multisymplectic", "Harrivel's criteria and a direct check of de^beta + contact^w")
    p.add_argument("form")
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p.add_argument("--normalize", action="store_true", help="replace the input by its effective part first")

    p = cmd("catalog", "named equations")
    p.add_argument("action", choices=("list", "show"))
    p.add_argument("name", nargs="?")
    p.add_argument("--validate", action="store_true", help="recompute verdicts and compare with printed data")

    p = cmd("el", "classical Euler-Lagrange expressions of a jet Lagrangian")
    p.add_argument("--fields", default="phi", help="comma-separated field names")
    p.add_argument("--lagrangian", required=True)

    p = cmd("helein", "Helein's multisymplectic Klein-Gordon data")
    p.add_argument("--mass", default="m")
    return parser


def _params(values: Sequence[str]) -> tuple[str, ...]:
    out: list[str] = []
    for v in values:
        out.extend(x.strip() for x in v.split(",") if x.strip())
    return tuple(out)


def _validate_entry(name: str, seed: int) -> dict:
    e = catalog(name)
    v = reconstruct(e.context, e.form, 2)
    r = check_harrivel(e.context, e.effective, seed=seed)
    return {
        "name": e.name,
        "equation": str(e.equation.lhs),
        "form": e.form,
        "effective": e.effective,
        "scale": str(e.scale),
        "effective_is_effective": bool(is_effective(e.context, e.effective)),
        "printed_form_ok": e.printed_form_ok,
        "printed_effective_ok": e.printed_effective_ok,
        "printed_equation_ok": e.printed_lhs_ok,
        "errata": e.errata(),
        "variational": v.status.value,
        "multisymplectic_criteria": r.verdict,
        "multisymplectic_direct": r.direct.multisymplectic if r.direct else None,
        "notes": list(e.notes),
    }


def run(args: argparse.Namespace) -> Any:
    ws = Workspace(args.n, _params(args.param))
    ctx = ws.context
    c = args.command
    if c == "effective":
        w = project(ctx, ws.form(args.form))
        eff = ws.bind("effective", effective_part(ctx, w))
        if args.residual:
            return {"effective": eff, "residual": hodge_lepage_residual(ctx, w)}
        return eff
    if c == "euler":
        w = ws.form(args.form)
        if w.degree == 0:
            return euler_first_order(ctx, w.coefficient(()))
        return euler(ctx, w)
    if c == "extract":
        return extract_pde(ctx, ws.form(args.form))
    if c == "represent":
        eq = MAEquation("input", ctx.n, ws.jet_polynomial(args.pde))
        return synthesize_form(ctx, eq, args.degree)
    if c == "check-variational":
        return reconstruct(ctx, ws.form(args.form), args.degree)
    if c == "check-multisymplectic":
        w = ws.form(args.form)
        if args.normalize:
            w = effective_part(ctx, project(ctx, w))
        return check_harrivel(ctx, w, samples=args.samples, seed=args.seed)
    if c == "catalog":
        if args.action == "list":
            if args.validate:
                return {"entries": [_validate_entry(n, args.seed) for n in names()]}
            return {n: catalog(n).title for n in names()}
        if not args.name:
            raise UsageError("catalog show needs a name")
        if args.validate:
            return _validate_entry(args.name, args.seed)
        e = catalog(args.name)
        if args.format == "latex":
            return e.effective
        return {
            "name": e.name,
            "title": e.title,
            "n": e.context.n,
            "params": list(e.context.params),
            "equation": str(e.equation.lhs),
            "form": e.form,
            "effective": e.effective,
            "notes": list(e.notes),
        }
    if c == "el":
        fields = tuple(f.strip() for f in args.fields.split(",") if f.strip())
        L = ws.jet_polynomial(args.lagrangian, fields=fields)
        return {f: str(x) for f, x in euler_lagrange_fields(L, fields).items()}
    if c == "helein":
        return helein_kg(args.mass, ws.n)
    raise UsageError(f"unknown command {c}")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        result = run(args)
    except UsageError as exc:
        print(f"jetforms: error: {exc}", file=sys.stderr)
        return 1
    except USER_ERRORS as exc:
        print(f"jetforms: error: {exc}", file=sys.stderr)
        return 1
    except (CatalogInvariantError, RuntimeError, AssertionError) as exc:
        print(f"jetforms: internal error: {exc}", file=sys.stderr)
        return 2
    try:
        print(render(result, args.format))
    except TypeError as exc:
        print(f"jetforms: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
