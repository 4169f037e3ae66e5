"""The first-order variational necessary condition and Lagrangian reconstruction.

An n-form w can only be the Euler-Lagrange form of a first-order Lagrangian
if ``k * w_eff = E(L beta)`` for a non-vanishing k.  ``E(L beta)`` only has
``beta`` and ``beta_mu ^ dp_nu`` monomials with a symmetric coefficient
matrix that is a Hessian in p, which gives the structural test.
Reconstruction restricts k to a nonzero constant and L to polynomials of
bounded total degree, which makes the condition a homogeneous linear system.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .euler import WrongDegree, euler_first_order
from .exterior import DifferentialForm, Gen, dp
from .jetcalc import JetContext, effective_part, project
from .ratpoly import U, Polynomial, Var, monomials_up_to, nullspace, p, q, solve


class Status(enum.Enum):
    NOT_VARIATIONAL = "NotVariationalFirstOrder"
    STRUCTURAL_PASS = "StructuralPass"
    RECONSTRUCTION_FOUND = "ReconstructionFound"
    INCONCLUSIVE = "InconclusiveAtDegree"


@dataclass(frozen=True)
class VariationalVerdict:
    status: Status
    effective: DifferentialForm
    witness: tuple[tuple[Gen, ...], Polynomial] | None = None
    L: Polynomial | None = None
    k: Fraction | None = None
    null_lagrangians: tuple[Polynomial, ...] = ()
    degree: int | None = None
    diagnostics: tuple[str, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return self.status in (Status.STRUCTURAL_PASS, Status.RECONSTRUCTION_FOUND)


def _normalized(ctx: JetContext, w: DifferentialForm) -> DifferentialForm:
    if w.degree != ctx.n:
        raise WrongDegree(f"expected an {ctx.n}-form, got degree {w.degree}")
    return effective_part(ctx, project(ctx, w))


def _euler_shape(ctx: JetContext, mono: tuple[Gen, ...]) -> tuple[int, int] | None:
    """(mu, nu) for the monomial of beta_mu ^ dp_nu, (0, 0) for beta, else None."""
    n = ctx.n
    base = [g.index for g in mono if g.rank == 0]
    mom = [g.index for g in mono if g.rank == 2]
    if len(base) == n:
        return (0, 0)
    if len(base) == n - 1 and len(mom) == 1 and len(mono) == n:
        (mu,) = set(range(1, n + 1)) - set(base)
        return (mu, mom[0])
    return None


def hessian_block(ctx: JetContext, w_eff: DifferentialForm) -> dict[tuple[int, int], Polynomial]:
    """Sign-normalized coefficients B_{mu nu} of beta_mu ^ dp_nu in ``w_eff``.

    beta_mu ^ dp_nu equals (-1)^(mu-1) times the canonical monomial without
    dq^mu, so B_{mu nu} = (-1)^(mu-1) * (canonical coefficient).
    """
    out = {}
    for mono, c in w_eff.terms.items():
        shape = _euler_shape(ctx, mono)
        if shape and shape != (0, 0):
            mu, nu = shape
            out[(mu, nu)] = -c if (mu - 1) % 2 else c
    return out


def _canonical_beta_mu_dp(ctx: JetContext, mu: int, nu: int) -> tuple[Gen, ...]:
    return tuple(g for g in ctx.beta_mu(mu).items()[0][0]) + (dp(nu),)


def structural_check(ctx: JetContext, w: DifferentialForm) -> VariationalVerdict:
    """Necessary condition on the shape of ``w_eff`` (after projection)."""
    w_eff = _normalized(ctx, w)
    diags = ["normalized: projected to the Cartan distribution and took the effective part"]
    for mono, c in w_eff.items():  # canonical order: first offender is lexicographically first
        if _euler_shape(ctx, mono) is None:
            n_mom = sum(1 for g in mono if g.rank == 2)
            diags.append(f"monomial shape: {n_mom} momentum generators in a term E(L beta) cannot have")
            return VariationalVerdict(Status.NOT_VARIATIONAL, w_eff, witness=(mono, c), diagnostics=tuple(diags))
    diags.append("monomial shape: only beta and beta_mu^dp_nu terms")
    B = hessian_block(ctx, w_eff)
    n = ctx.n
    zero = Polynomial()
    for mu in range(1, n + 1):
        for nu in range(mu + 1, n + 1):
            if B.get((mu, nu), zero) != B.get((nu, mu), zero):
                mono = _canonical_beta_mu_dp(ctx, mu, nu)
                diags.append(f"symmetry: B_{mu}{nu} = {B.get((mu, nu), zero)} but B_{nu}{mu} = {B.get((nu, mu), zero)}")
                return VariationalVerdict(
                    Status.NOT_VARIATIONAL, w_eff, witness=(mono, w_eff.coefficient(mono)), diagnostics=tuple(diags)
                )
    diags.append("symmetry: B is symmetric")
    for mu in range(1, n + 1):
        for nu in range(1, n + 1):
            for xi in range(1, n + 1):
                a = B.get((mu, nu), zero).diff(p(xi))
                b = B.get((mu, xi), zero).diff(p(nu))
                if a != b:
                    mono = _canonical_beta_mu_dp(ctx, mu, nu)
                    diags.append(f"integrability: dB_{mu}{nu}/dp{xi} != dB_{mu}{xi}/dp{nu} (constant k)")
                    return VariationalVerdict(
                        Status.NOT_VARIATIONAL, w_eff, witness=(mono, w_eff.coefficient(mono)), diagnostics=tuple(diags)
                    )
    diags.append("integrability: dB/dp totally symmetric")
    return VariationalVerdict(Status.STRUCTURAL_PASS, w_eff, diagnostics=tuple(diags))


def _chart_variables(ctx: JetContext) -> list[Var]:
    return [q(i) for i in range(1, ctx.n + 1)] + [U] + [p(i) for i in range(1, ctx.n + 1)]


def _parameter_monomials(w: DifferentialForm) -> list:
    found = {()}
    for c in w.terms.values():
        for pmono in c.split_by(lambda v: v.is_parameter):
            found.add(pmono)
    return sorted(found, key=lambda m: (len(m), str(m)))


def _ansatz(ctx: JetContext, w: DifferentialForm, degree: int) -> list[Polynomial]:
    out = []
    for pm in _parameter_monomials(w):
        for m in monomials_up_to(_chart_variables(ctx), degree):
            out.append(Polynomial({m: 1}) * Polynomial({pm: 1}))
    return out


def _system(columns: Sequence[DifferentialForm]) -> list[list[Fraction]]:
    keys: dict = {}
    for f in columns:
        for mono, c in f.terms.items():
            for m in c.terms:
                keys.setdefault((mono, m), len(keys))
    rows = [[Fraction(0)] * len(columns) for _ in keys]
    for j, f in enumerate(columns):
        for mono, c in f.terms.items():
            for m, x in c.terms.items():
                rows[keys[(mono, m)]][j] = x
    return rows


def _combine(ansatz: Sequence[Polynomial], coeffs: Sequence[Fraction]) -> Polynomial:
    total = Polynomial()
    for b, x in zip(ansatz, coeffs):
        if x:
            total = total + b * x
    return total


def reconstruct(
    ctx: JetContext,
    w: DifferentialForm,
    degree: int = 2,
    should_stop: Callable[[], bool] | None = None,
) -> VariationalVerdict:
    """Solve k * w_eff = E(L beta) for constant k != 0 and polynomial L of degree <= ``degree``."""
    pre = structural_check(ctx, w)
    if pre.status is not Status.STRUCTURAL_PASS:
        return pre
    w_eff = pre.effective
    ansatz = _ansatz(ctx, w_eff, degree)
    columns = [euler_first_order(ctx, b) for b in ansatz] + [-w_eff]  # k column last
    rows = _system(columns)
    ncols = len(columns)
    basis = nullspace(rows, ncols, should_stop) if rows else [
        [Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)
    ]
    diags = list(pre.diagnostics)
    diags.append(f"ansatz: {len(ansatz)} monomials of total degree <= {degree}")
    with_k = [v for v in basis if v[-1] != 0]
    if not with_k:
        diags.append(f"no solution with k != 0 at degree {degree}")
        return VariationalVerdict(Status.INCONCLUSIVE, w_eff, degree=degree, diagnostics=tuple(diags))
    sol = [x / with_k[0][-1] for x in with_k[0]]
    nulls = []
    for v in basis:
        if v is with_k[0]:
            continue
        v = [a - v[-1] * b for a, b in zip(v, sol)]
        nl = _combine(ansatz, v[:-1])
        if nl:
            nulls.append(nl)
    L = _combine(ansatz, sol[:-1])
    if euler_first_order(ctx, L) != w_eff:
        raise RuntimeError("reconstructed Lagrangian does not reproduce the effective form")
    for nl in nulls:
        if not euler_first_order(ctx, nl).is_zero():
            raise RuntimeError(f"null Lagrangian {nl} has nonzero Euler form")
    diags.append(f"verified: E(L beta) = w_eff; {len(nulls)} null-Lagrangian directions")
    return VariationalVerdict(
        Status.RECONSTRUCTION_FOUND,
        w_eff,
        L=L,
        k=Fraction(1),
        null_lagrangians=tuple(nulls),
        degree=degree,
        diagnostics=tuple(diags),
    )


def in_solution_space(verdict: VariationalVerdict, L: Polynomial) -> bool:
    """Whether ``L`` differs from the reconstructed Lagrangian by null Lagrangians."""
    if verdict.status is not Status.RECONSTRUCTION_FOUND:
        return False
    diff = L - verdict.L
    if not diff:
        return True
    if not verdict.null_lagrangians:
        return False
    monos = sorted({m for nl in verdict.null_lagrangians for m in nl.terms} | set(diff.terms), key=str)
    rows = [[nl.coefficient(m) for nl in verdict.null_lagrangians] for m in monos]
    return solve(rows, [diff.coefficient(m) for m in monos]) is not None


def null_lagrangians(ctx: JetContext, degree: int) -> list[Polynomial]:
    """Basis of polynomial L of degree <= ``degree`` (no parameters) with E(L beta) = 0."""
    ansatz = _ansatz(ctx, ctx.form(degree=ctx.n), degree)
    columns = [euler_first_order(ctx, b) for b in ansatz]
    rows = _system(columns)
    if not rows:
        return list(ansatz)
    return [_combine(ansatz, v) for v in nullspace(rows, len(columns))]


__all__ = [
    "Status",
    "VariationalVerdict",
    "structural_check",
    "reconstruct",
    "in_solution_space",
    "null_lagrangians",
    "hessian_block",
]
