"""Jet-symbol polynomials and Monge-Ampere equations extracted from n-forms.

Jet symbols ``phi_I`` are polynomial variables of kind ``jet`` with a sorted
multi-index, so ``phi_12`` and ``phi_21`` are the same symbol.  A
``JetPolynomial`` is just a :class:`~jetforms.ratpoly.Polynomial` over jet
symbols, base coordinates and parameters.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .exterior import DU, DifferentialForm, Gen
from .jetcalc import JetContext
from .ratpoly import (
    U,
    Polynomial,
    Var,
    jet,
    monomials_up_to,
    p,
    q,
    solve,
)

JetPolynomial = Polynomial

# guards the exhaustive minimal-support search in synthesize_form
_MAX_SUPPORT_COMBINATIONS = 200_000


class ExtendedGeneratorPresent(ValueError):
    pass


class OrderTooHigh(ValueError):
    pass


class NotRepresentable(ValueError):
    pass


def jet_poly(fieldname: str, *multi: int) -> Polynomial:
    return Polynomial.var(jet(fieldname, multi))


def prolongation(ctx: JetContext, fieldname: str = "phi") -> dict[Var, Polynomial]:
    """u -> phi, p_mu -> phi_mu."""
    subs = {U: jet_poly(fieldname)}
    for mu in range(1, ctx.n + 1):
        subs[p(mu)] = jet_poly(fieldname, mu)
    return subs


def _pulled_row(ctx: JetContext, g: Gen, fieldname: str) -> list[Polynomial]:
    n = ctx.n
    row = [Polynomial()] * n
    if g.rank == 0:
        row[g.index - 1] = Polynomial.const(1)
    elif g == DU:
        row = [jet_poly(fieldname, nu) for nu in range(1, n + 1)]
    else:
        row = [jet_poly(fieldname, g.index, nu) for nu in range(1, n + 1)]
    return row


def _det(rows: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Determinant by dynamic programming over used-column sets."""
    n = len(rows)
    memo: dict[tuple[int, int], Polynomial] = {}

    def rec(i: int, mask: int) -> Polynomial:
        if i == n:
            return Polynomial.const(1)
        key = (i, mask)
        if key in memo:
            return memo[key]
        total = Polynomial()
        for j in range(n):
            if mask >> j & 1:
                continue
            entry = rows[i][j]
            if not entry:
                continue
            sub = rec(i + 1, mask | (1 << j))
            if not sub:
                continue
            larger_used = bin(mask >> (j + 1)).count("1")
            term = entry * sub
            total = total - term if larger_used % 2 else total + term
        memo[key] = total
        return total

    return rec(0, 0)


def extract_pde(ctx: JetContext, w: DifferentialForm, fieldname: str = "phi") -> Polynomial:
    """Coefficient of beta in the pullback of ``w`` along the prolongation of phi."""
    if w.degree != ctx.n:
        raise ValueError(f"expected an {ctx.n}-form, got degree {w.degree}")
    if any(g.rank > 2 for g in w.gens.gens):
        raise ExtendedGeneratorPresent("extraction needs the plain jet generator set")
    subs = prolongation(ctx, fieldname)
    total = Polynomial()
    for mono, c in w.terms.items():
        d = _det([_pulled_row(ctx, g, fieldname) for g in mono])
        if d:
            total = total + c.subs(subs) * d
    return total


def jet_symbols(P: Polynomial, fieldname: str | None = None) -> set[Var]:
    return {v for v in P.variables() if v.kind == "jet" and (fieldname is None or v.name == fieldname)}


def total_derivative(P: Polynomial, mu: int) -> Polynomial:
    """D_mu P = dP/dq^mu + sum_s dP/ds * s_{+mu}."""
    out = P.diff(q(mu))
    for s in jet_symbols(P):
        out = out + P.diff(s) * Polynomial.var(jet(s.name, s.multi + (mu,)))
    return out


def total_derivative_multi(P: Polynomial, multi: Iterable[int]) -> Polynomial:
    for mu in multi:
        P = total_derivative(P, mu)
    return P


def euler_lagrange_fields(L: Polynomial, fields: Sequence[str], max_order: int = 2) -> dict[str, Polynomial]:
    """Classical E-L expressions sum_I (-1)^|I| D_I (dL/d f_I), one per field.

    The sum runs over sorted multi-indices, which is the correct convention
    for symmetric jet symbols.
    """
    out = {}
    for f in fields:
        syms = jet_symbols(L, f)
        if any(s.order > max_order for s in syms):
            raise OrderTooHigh(f"Lagrangian has order > {max_order} in {f}")
        expr = Polynomial()
        for s in sorted(syms, key=lambda v: v.key):
            term = total_derivative_multi(L.diff(s), s.multi)
            expr = expr - term if s.order % 2 else expr + term
        out[f] = expr
    return out


def substitute_field(P: Polynomial, fieldname: str, expr: Polynomial) -> Polynomial:
    """Replace every symbol f_I by D_I(expr)."""
    mapping = {s: total_derivative_multi(expr, s.multi) for s in jet_symbols(P, fieldname)}
    return P.subs(mapping)


def lagrangian_to_jet(ctx: JetContext, L: Polynomial, fieldname: str = "phi") -> Polynomial:
    return L.subs(prolongation(ctx, fieldname))


@dataclass(frozen=True)
class MAEquation:
    name: str
    n: int
    lhs: Polynomial
    fieldname: str = "phi"
    notes: tuple[str, ...] = field(default=(), compare=False)

    def order(self) -> int:
        return max((s.order for s in jet_symbols(self.lhs)), default=0)


def proportionality(a: Polynomial, b: Polynomial) -> Fraction | None:
    """Nonzero rational k with a == k*b, else None."""
    if not a or not b:
        return None
    m, cb = next(iter(b.terms.items()))
    ca = a.coefficient(m)
    if not ca:
        return None
    k = ca / cb
    return k if a == b * k else None


# --------------------------------------------------------------------------
# representation synthesis
# --------------------------------------------------------------------------


def _cartan_basis(ctx: JetContext) -> list[tuple[Gen, ...]]:
    return list(itertools.combinations(ctx.cartan_generators, ctx.n))


def _chart_variables(ctx: JetContext) -> list[Var]:
    return [q(i) for i in range(1, ctx.n + 1)] + [U] + [p(i) for i in range(1, ctx.n + 1)]


def _columns(ctx: JetContext, degree: int, fieldname: str):
    subs = prolongation(ctx, fieldname)
    base = []
    for mono in _cartan_basis(ctx):
        img = extract_pde(ctx, ctx.form({mono: 1}), fieldname)
        if img:
            base.append((mono, img))
    cols = []
    for m in monomials_up_to(_chart_variables(ctx), degree):
        mp = Polynomial({m: 1}).subs(subs)
        for mono, img in base:
            cols.append(((mono, m), mp * img))
    return cols


def _solve_columns(cols, target: Polynomial):
    rows_index: dict = {}
    for _, img in cols:
        for m in img.terms:
            rows_index.setdefault(m, len(rows_index))
    for m in target.terms:
        if m not in rows_index:
            return None
    mat = [[Fraction(0)] * len(cols) for _ in rows_index]
    for j, (_, img) in enumerate(cols):
        for m, c in img.terms.items():
            mat[rows_index[m]][j] = c
    rhs = [Fraction(0)] * len(rows_index)
    for m, c in target.terms.items():
        rhs[rows_index[m]] = c
    return solve(mat, rhs)


def _dedupe(cols):
    seen: list[Polynomial] = []
    out = []
    for key, img in cols:
        if any(proportionality(img, s) is not None for s in seen):
            continue
        seen.append(img)
        out.append((key, img))
    return out


def _minimal_support(cols, target: Polynomial):
    supported = _dedupe([(k, img) for k, img in cols if set(img.terms) <= set(target.terms)])
    budget = _MAX_SUPPORT_COMBINATIONS
    for size in range(1, min(len(supported), len(target.terms)) + 1):
        for combo in itertools.combinations(supported, size):
            budget -= 1
            if budget < 0:
                return None
            x = _solve_columns(list(combo), target)
            if x is not None and all(x):
                return [(k, c) for (k, _), c in zip(combo, x)]
    return None


def synthesize_form(ctx: JetContext, eq: MAEquation, degree: int = 0) -> DifferentialForm:
    """A representing n-form (no du) whose extracted equation is ``eq.lhs``.

    Constant coefficients are tried first, then polynomial coefficients up to
    ``degree``.  Within each degree the search prefers the fewest terms among
    columns supported on the monomials of the target; if none exists, any
    exact solution is returned.  Parameter-dependent parts of the equation
    are solved separately and recombined.
    """
    if eq.n != ctx.n:
        raise ValueError("equation dimension differs from the context")
    for v in eq.lhs.variables():
        if v.kind == "jet" and (v.name != eq.fieldname or v.order > 2):
            raise NotRepresentable(f"symbol {v} cannot come from an {ctx.n}-form on the jet space")
        if v.kind not in ("jet", "q", "param"):
            raise NotRepresentable(f"unexpected variable {v}")
    pieces = eq.lhs.split_by(lambda v: v.is_parameter)
    terms: dict[tuple[Gen, ...], Polynomial] = {}
    cache: dict[int, list] = {}
    for pmono, target in sorted(pieces.items(), key=lambda kv: str(kv[0])):
        found = None
        for d in range(degree + 1):
            if d not in cache:
                cache[d] = _columns(ctx, d, eq.fieldname)
            cols = cache[d]
            found = _minimal_support(cols, target)
            if found is None:
                x = _solve_columns(cols, target)
                if x is not None:
                    found = [(k, c) for (k, _), c in zip(cols, x) if c]
            if found is not None:
                break
        if found is None:
            raise NotRepresentable(f"no representing form with coefficient degree <= {degree}")
        for (mono, m), c in found:
            coeff = Polynomial({m: c}) * Polynomial({pmono: 1})
            terms[mono] = terms.get(mono, Polynomial()) + coeff
    w = ctx.form(terms, degree=ctx.n)
    if extract_pde(ctx, w, eq.fieldname) != eq.lhs:
        raise RuntimeError("synthesized form does not reproduce the equation")
    return w
