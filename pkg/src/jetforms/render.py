"""Text, JSON and LaTeX renderings of forms, polynomials, verdicts and reports.

JSON documents carry ``schema_version`` and round-trip through
:func:`form_from_json` / :func:`polynomial_from_json` exactly: coefficients
are stored in the canonical polynomial text syntax, which the DSL parses back
to the same value.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .dsl import parse_polynomial
from .exterior import DifferentialForm, Gen, GeneratorSet, gen_from_name
from .msympl import HeleinKGData, MultisymplecticReport
from .ratpoly import Polynomial, Var
from .variational import VariationalVerdict

SCHEMA_VERSION = 1
FORMATS = ("text", "json", "latex")


class SchemaError(ValueError):
    pass


# --------------------------------------------------------------------------
# JSON
# --------------------------------------------------------------------------


def _params_of(*polys: Polynomial) -> list[str]:
    return sorted({v.name for P in polys for v in P.variables() if v.is_parameter})


def _fields_of(*polys: Polynomial) -> list[str]:
    return sorted({v.name for P in polys for v in P.variables() if v.kind == "jet"})


def polynomial_to_json(P: Polynomial) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "type": "polynomial",
        "params": _params_of(P),
        "fields": _fields_of(P),
        "text": str(P),
    }


def polynomial_from_json(doc: dict) -> Polynomial:
    _check(doc, "polynomial")
    return parse_polynomial(doc["text"], params=doc.get("params", ()), fields=doc.get("fields", ()))


def form_to_json(w: DifferentialForm) -> dict:
    coeffs = list(w.terms.values())
    return {
        "schema_version": SCHEMA_VERSION,
        "type": "form",
        "n": w.gens.n,
        "generators": [g.name for g in w.gens.gens],
        "degree": w.degree,
        "params": _params_of(*coeffs),
        "fields": _fields_of(*coeffs),
        "terms": [{"monomial": [g.name for g in mono], "coefficient": str(c)} for mono, c in w.items()],
    }


def form_from_json(doc: dict) -> DifferentialForm:
    _check(doc, "form")
    gens = GeneratorSet(doc["n"], tuple(gen_from_name(x) for x in doc["generators"]))
    terms: dict[tuple[Gen, ...], Polynomial] = {}
    for t in doc["terms"]:
        mono = tuple(gen_from_name(x) for x in t["monomial"])
        if len(mono) != doc["degree"]:
            raise SchemaError(f"monomial {t['monomial']} has the wrong degree")
        terms[mono] = parse_polynomial(t["coefficient"], params=doc.get("params", ()), fields=doc.get("fields", ()))
    return DifferentialForm(gens, doc["degree"], terms)


def _check(doc: dict, kind: str) -> None:
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema_version {doc.get('schema_version')!r}")
    if doc.get("type") != kind:
        raise SchemaError(f"expected a {kind} document, got {doc.get('type')!r}")


def verdict_to_json(v: VariationalVerdict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "type": "variational_verdict",
        "status": v.status.value,
        "witness": None
        if v.witness is None
        else {"monomial": [g.name for g in v.witness[0]], "coefficient": str(v.witness[1])},
        "L": None if v.L is None else str(v.L),
        "k": None if v.k is None else str(v.k),
        "null_lagrangians": [str(x) for x in v.null_lagrangians],
        "degree": v.degree,
        "effective": form_to_json(v.effective),
        "diagnostics": list(v.diagnostics),
    }


def report_to_json(r: MultisymplecticReport) -> dict:
    c1, c2 = r.criterion1, r.criterion2
    doc: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "type": "multisymplectic_report",
        "verdict": r.verdict,
        "form": form_to_json(r.form),
        "m": form_to_json(r.m),
        "criterion1": {
            "independent": c1.independent,
            "dependency": None if c1.dependency is None else [str(x) for x in c1.dependency],
            "function_field_independent": c1.function_field_independent,
            "function_field_exact": c1.function_field_exact,
            "contractions": [str(x) for x in c1.contractions],
        },
        "criterion2": {"dpw": str(c2.dpw), "vanishes": c2.vanishes},
        "direct": None,
        "agrees": r.agrees,
        "diagnostics": list(r.diagnostics),
    }
    if r.direct is not None:
        nd = r.direct.nondegenerate
        doc["direct"] = {
            "closed": r.direct.closed,
            "differential": str(r.direct.differential),
            "nondegenerate": {
                "verdict": nd.verdict,
                "exact": nd.exact,
                "sampled_points": [{str(k): str(x) for k, x in pt.items()} for pt in nd.points],
                "kernel": nd.kernel,
            },
        }
    return doc


def helein_to_json(h: HeleinKGData) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "type": "helein_kg",
        "n": h.n,
        "m": form_to_json(h.m),
        "hamiltonian": str(h.hamiltonian),
        "eta": list(h.eta),
        "relations": [{"variable": str(v), "value": str(x)} for v, x in h.relations],
        "hamiltonian_on_curve": str(h.hamiltonian_on_curve()),
    }


def to_json(value: Any) -> dict:
    if isinstance(value, DifferentialForm):
        return form_to_json(value)
    if isinstance(value, Polynomial):
        return polynomial_to_json(value)
    if isinstance(value, VariationalVerdict):
        return verdict_to_json(value)
    if isinstance(value, MultisymplecticReport):
        return report_to_json(value)
    if isinstance(value, HeleinKGData):
        return helein_to_json(value)
    if isinstance(value, dict):
        return {"schema_version": SCHEMA_VERSION, **{k: _plain(v) for k, v in value.items()}}
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _plain(v: Any) -> Any:
    if isinstance(v, (DifferentialForm, Polynomial, VariationalVerdict, MultisymplecticReport, HeleinKGData)):
        doc = to_json(v)
        doc.pop("schema_version", None)
        return doc
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return v


def from_json(doc: dict) -> DifferentialForm | Polynomial:
    kind = doc.get("type")
    if kind == "form":
        return form_from_json(doc)
    if kind == "polynomial":
        return polynomial_from_json(doc)
    raise SchemaError(f"cannot load a {kind!r} document")


# --------------------------------------------------------------------------
# LaTeX
# --------------------------------------------------------------------------


def _latex_fraction(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return rf"\frac{{{c.numerator}}}{{{c.denominator}}}"


def _latex_var(v: Var) -> str:
    if v.kind == "q":
        return f"q^{{{v.index}}}"
    if v.kind == "p":
        return f"p_{{{v.index}}}"
    if v.kind == "jet":
        base = {"phi": r"\phi", "psi": r"\psi"}.get(v.name, v.name)
        return base + (f"_{{{''.join(map(str, v.multi))}}}" if v.multi else "")
    return str(v)


def latex_polynomial(P: Polynomial) -> str:
    items = P.items()
    if not items:
        return "0"
    parts = []
    for i, (m, c) in enumerate(items):
        factors = " ".join(_latex_var(v) + (f"^{{{e}}}" if e > 1 else "") for v, e in m)
        neg = c < 0
        a = -c if neg else c
        if not factors:
            body = _latex_fraction(a)
        elif a == 1:
            body = factors
        else:
            body = f"{_latex_fraction(a)} {factors}"
        sign = ("-" if neg else "") if i == 0 else (" - " if neg else " + ")
        parts.append(sign + body)
    return "".join(parts)


def latex_monomial(mono: tuple[Gen, ...], n: int) -> str:
    """The d^{I}_{J} shorthand for dq/dp monomials; other generators as \\mathrm{d}x."""
    if not mono:
        return "1"
    upper = "".join(str(g.index) for g in mono if g.rank == 0)
    lower = "".join(str(g.index) for g in mono if g.rank == 2)
    other = [g for g in mono if g.rank not in (0, 2)]
    names = {"du": r"\mathrm{d}u", "de": r"\mathrm{d}e", "dphi": r"\mathrm{d}\phi"}
    pieces = [names[g.name] for g in other]
    if upper or lower:
        core = "d" + (f"^{{{upper}}}" if upper else "") + (f"_{{{lower}}}" if lower else "")
        pieces.append(core)
    return r" \wedge ".join(pieces)


def latex_form(w: DifferentialForm) -> str:
    """Terms grouped by coefficient in order of first appearance, Table-2 style."""
    items = w.items()
    if not items:
        return "0"
    groups: dict[Polynomial, list[str]] = {}
    for mono, c in items:
        groups.setdefault(c, []).append(latex_monomial(mono, w.gens.n))
    parts = []
    for c, monos in groups.items():
        neg = len(c.terms) == 1 and next(iter(c.terms.values())) < 0
        mag = -c if neg else c
        body = " + ".join(monos)
        grouped = f"({body})" if len(monos) > 1 else body
        if mag == 1:
            text = grouped if neg else body
        elif len(mag.terms) == 1:
            text = f"{latex_polynomial(mag)}" + (grouped if len(monos) > 1 else f" {body}")
        else:
            text = f"({latex_polynomial(mag)})" + (grouped if len(monos) > 1 else f" {body}")
        sign = ("-" if neg else "") if not parts else (" - " if neg else " + ")
        parts.append(sign + text)
    return "".join(parts)


# --------------------------------------------------------------------------
# text
# --------------------------------------------------------------------------


def _text_verdict(v: VariationalVerdict) -> str:
    lines = [f"status: {v.status.value}"]
    if v.witness is not None:
        mono, c = v.witness
        lines.append(f"witness: {'^'.join(g.name for g in mono)} (coefficient {c})")
    if v.L is not None:
        lines.append(f"L = {v.L}")
        lines.append(f"k = {v.k}")
        lines.append(f"null Lagrangian directions: {len(v.null_lagrangians)}")
    if v.status.value == "InconclusiveAtDegree":
        lines.append(f"degree bound: {v.degree}")
    lines.append(f"effective form: {v.effective}")
    lines.extend(f"  - {d}" for d in v.diagnostics)
    return "\n".join(lines)


def _text_report(r: MultisymplecticReport) -> str:
    c1, c2 = r.criterion1, r.criterion2
    lines = [
        f"multisymplectic (criteria): {r.verdict}",
        f"criterion 1 (contractions independent over constants): {c1.independent}",
        f"criterion 1 (over functions): {c1.function_field_independent}"
        + ("" if c1.function_field_exact else " (sampled)"),
        f"criterion 2 (d_p w = 0): {c2.vanishes}; d_p w = {c2.dpw}",
    ]
    if r.direct is not None:
        nd = r.direct.nondegenerate
        lines.append(f"direct check: closed={r.direct.closed}, nondegenerate={nd.verdict} "
                     + ("(exact)" if nd.exact else f"(sampled at {len(nd.points)} points)"))
        if nd.kernel:
            lines.append(f"  kernel certificate: {nd.kernel}")
        lines.append(f"agrees with criteria: {r.agrees}")
    lines.append(f"m = {r.m}")
    lines.extend(f"  - {d}" for d in r.diagnostics)
    return "\n".join(lines)


def _text_helein(h: HeleinKGData) -> str:
    lines = [f"m = {h.m}", f"H = {h.hamiltonian}", f"eta = {h.eta}"]
    lines += [f"{v} = {x}" for v, x in h.relations]
    lines.append(f"H on the n-curve = {h.hamiltonian_on_curve()}")
    return "\n".join(lines)


def _latex_or_str(v: Any) -> str:
    if isinstance(v, DifferentialForm):
        return latex_form(v)
    if isinstance(v, Polynomial):
        return latex_polynomial(v)
    return str(v)


def render(value: Any, fmt: str = "text") -> str:
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}")
    if fmt == "json":
        return json.dumps(to_json(value), indent=2, sort_keys=False)
    if fmt == "latex":
        if isinstance(value, DifferentialForm):
            return latex_form(value)
        if isinstance(value, Polynomial):
            return latex_polynomial(value)
        if isinstance(value, VariationalVerdict) and value.L is not None:
            return latex_polynomial(value.L)
        if isinstance(value, VariationalVerdict):
            return latex_form(value.effective)
        if isinstance(value, MultisymplecticReport):
            return latex_form(value.m)
        if isinstance(value, HeleinKGData):
            return latex_form(value.m)
        if isinstance(value, dict):
            return "\n".join(f"{k}: {_latex_or_str(v)}" for k, v in value.items())
        raise TypeError(f"no LaTeX rendering for {type(value).__name__}")
    if isinstance(value, VariationalVerdict):
        return _text_verdict(value)
    if isinstance(value, MultisymplecticReport):
        return _text_report(value)
    if isinstance(value, HeleinKGData):
        return _text_helein(value)
    if isinstance(value, dict):
        return "\n".join(f"{k}: {v}" for k, v in value.items())
    return str(value)


__all__ = [
    "SCHEMA_VERSION",
    "FORMATS",
    "SchemaError",
    "render",
    "to_json",
    "from_json",
    "form_to_json",
    "form_from_json",
    "polynomial_to_json",
    "polynomial_from_json",
    "latex_form",
    "latex_polynomial",
]
