"""The Euler operator on n-forms of the jet space.

Two independent routes are provided.  :func:`euler` composes the operators
literally, ``d_p(bottom(d_p(w))) + lie_reeb(w)``.  :func:`euler_first_order`
is the closed coordinate expression for first-order Lagrangians ``L beta``::

    E(L beta) = (-1)^n B_{mu nu} beta_mu ^ dp_nu
                - (d2L/dq^mu dp_mu + p_mu d2L/du dp_mu - dL/du) beta

with ``B = d2L/dp dp``.  The ``(-1)^n`` comes from moving ``dp_nu`` past the
``n-1`` generators of ``beta_mu``; for even ``n`` it disappears.

``EULER_LAGRANGE_SIGN`` records how the extracted equation of ``E(L beta)``
compares with ``dL/dphi - D_mu dL/dphi_mu``: they are equal (sign +1), which
is fixed by the 1D wave equation with ``L = (-p1^2 + c p2^2)/2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exterior import DifferentialForm, dp, wedge
from .jetcalc import JetContext, bottom, d_p, is_effective, lie_reeb
from .ratpoly import U, Polynomial, p, q

EULER_LAGRANGE_SIGN = 1


class WrongDegree(ValueError):
    pass


@dataclass(frozen=True)
class FirstOrderLagrangian:
    L: Polynomial
    context: JetContext = field(compare=False)

    def __post_init__(self) -> None:
        bad = [v for v in self.L.variables() if v.kind not in ("q", "u", "p", "param")]
        if bad:
            raise ValueError(f"first-order Lagrangian may not depend on {bad[0]}")
        if not is_effective(self.context, self.form()):
            raise AssertionError("L beta must be effective")

    def form(self) -> DifferentialForm:
        return self.context.beta * self.L


def euler(ctx: JetContext, w: DifferentialForm) -> DifferentialForm:
    if w.degree != ctx.n:
        raise WrongDegree(f"the Euler operator acts on {ctx.n}-forms, got degree {w.degree}")
    return d_p(ctx, bottom(ctx, d_p(ctx, w))) + lie_reeb(ctx, w)


def euler_first_order(ctx: JetContext, L: Polynomial | FirstOrderLagrangian) -> DifferentialForm:
    if isinstance(L, FirstOrderLagrangian):
        L = L.L
    n = ctx.n
    sign = 1 if n % 2 == 0 else -1
    result = DifferentialForm.zero(ctx.generators, n)
    dLdp = [L.diff(p(mu)) for mu in range(1, n + 1)]
    for mu in range(1, n + 1):
        bmu = ctx.beta_mu(mu)
        for nu in range(1, n + 1):
            b = dLdp[mu - 1].diff(p(nu))
            if b:
                result = result + wedge(bmu, ctx.form({(dp(nu),): b * sign}))
    source = -L.diff(U)
    for mu in range(1, n + 1):
        source = source + dLdp[mu - 1].diff(q(mu)) + Polynomial.var(p(mu)) * dLdp[mu - 1].diff(U)
    return result + ctx.beta * (-source)
