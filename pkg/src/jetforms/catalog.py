"""Catalog of named Monge-Ampere equations with their representing forms.

Entries live in the bundled ``catalog.json``.  Loading an entry parses the
stored equation and form, checks that the form extracts to a nonzero constant
multiple of the equation, computes the effective part, and compares the
printed literature data (when present) with the computed data.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .dsl import parse_form, parse_jet_polynomial
from .exterior import DifferentialForm
from .jetcalc import JetContext, effective_part, project
from .jetpde import MAEquation, extract_pde, proportionality
from .ratpoly import Polynomial


class UnknownEquation(KeyError):
    pass


class CatalogInvariantError(RuntimeError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    title: str
    context: JetContext
    equation: MAEquation
    form: DifferentialForm
    scale: Fraction
    effective: DifferentialForm
    printed_form: DifferentialForm | None
    printed_effective: DifferentialForm | None
    printed_lhs: Polynomial | None
    notes: tuple[str, ...] = field(default=())

    @property
    def printed_form_ok(self) -> bool | None:
        """Whether the printed representation extracts to a multiple of the equation."""
        if self.printed_form is None:
            return None
        return proportionality(extract_pde(self.context, self.printed_form), self.equation.lhs) is not None

    @property
    def printed_effective_ok(self) -> bool | None:
        if self.printed_effective is None:
            return None
        return self.printed_effective == self.effective

    @property
    def printed_lhs_ok(self) -> bool | None:
        if self.printed_lhs is None:
            return None
        return self.printed_lhs == self.equation.lhs

    def errata(self) -> list[str]:
        out = []
        if self.printed_lhs_ok is False:
            out.append("printed equation differs from the equation represented by the form")
        if self.printed_form_ok is False:
            out.append("printed simple representation does not extract to the equation")
        if self.printed_effective_ok is False:
            diff = self.printed_effective - self.effective
            out.append(f"printed effective form differs from the computed one by {diff}")
        return out


@lru_cache(maxsize=1)
def _raw() -> dict:
    text = resources.files(__package__).joinpath("catalog.json").read_text(encoding="utf-8")
    data = json.loads(text)
    if data.get("schema_version") != 1:
        raise CatalogInvariantError("unsupported catalog schema version")
    return {e["name"]: e for e in data["entries"]}


def names() -> list[str]:
    return list(_raw())


@lru_cache(maxsize=None)
def catalog(name: str) -> CatalogEntry:
    raw = _raw()
    if name not in raw:
        raise UnknownEquation(f"unknown equation {name!r}; known: {', '.join(raw)}")
    e = raw[name]
    ctx = JetContext(e["n"], tuple(e["params"]))
    lhs = parse_jet_polynomial(e["lhs"], params=ctx.params, n=ctx.n)
    eq = MAEquation(name, ctx.n, lhs, notes=tuple(e.get("notes", ())))
    form = parse_form(e["form"], ctx)
    k = proportionality(extract_pde(ctx, form), lhs)
    if k is None:
        raise CatalogInvariantError(f"{name}: stored form does not represent the stored equation")

    def opt_form(key: str) -> DifferentialForm | None:
        return parse_form(e[key], ctx) if e.get(key) else None

    printed_lhs = e.get("printed_lhs")
    return CatalogEntry(
        name=name,
        title=e["title"],
        context=ctx,
        equation=eq,
        form=form,
        scale=k,
        effective=effective_part(ctx, project(ctx, form)),
        printed_form=opt_form("printed_form"),
        printed_effective=opt_form("printed_effective"),
        printed_lhs=parse_jet_polynomial(printed_lhs, params=ctx.params, n=ctx.n) if printed_lhs else None,
        notes=eq.notes,
    )


def all_entries() -> list[CatalogEntry]:
    return [catalog(n) for n in names()]


__all__ = ["CatalogEntry", "UnknownEquation", "CatalogInvariantError", "catalog", "names", "all_entries"]
