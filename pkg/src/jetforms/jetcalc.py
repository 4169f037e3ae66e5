"""Contact geometry of the first jet space in a Darboux chart.

A :class:`JetContext` fixes the dimension ``n`` of the base and the declared
parameters, and carries the distinguished objects

* ``contact``  = du - p_mu dq^mu
* ``reeb``     = d/du
* ``omega``    = dq^mu ^ dp_mu  (the exterior derivative of ``contact``)
* ``x_omega``  = d/dq^mu ^ d/dp_mu
* ``beta``     = dq^1 ^ ... ^ dq^n, and ``beta_mu`` = d/dq^mu contracted into beta.

On top of these it provides the projection onto forms killed by the Reeb
field, the projected derivative, the bottom operator, the Lie derivative along
the Reeb field and the effective (Hodge-Lepage) decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations

from .exterior import (
    DU,
    DifferentialForm,
    Gen,
    GeneratorSet,
    PolyBiVector,
    PolyVectorField,
    contract_bivector,
    contract_vector,
    dp,
    dq,
    ext_d,
    wedge,
)
from .ratpoly import Polynomial, inverse, p, param

DEFAULT_MAX_N = 6


class DegreeTooHigh(ValueError):
    pass


class NotDegenerateAlongReeb(ValueError):
    pass


class NoResidual(RuntimeError):
    """Hodge-Lepage solve produced no exact residual (internal inconsistency)."""


@dataclass(frozen=True)
class JetContext:
    n: int
    params: tuple[str, ...] = ()
    max_n: int = DEFAULT_MAX_N

    def __post_init__(self) -> None:
        if not 2 <= self.n <= self.max_n:
            raise ValueError(f"n must lie in [2, {self.max_n}], got {self.n}")
        if len(set(self.params)) != len(self.params):
            raise ValueError("parameter names must be unique")

    @cached_property
    def generators(self) -> GeneratorSet:
        return GeneratorSet.jet(self.n)

    def param(self, name: str) -> Polynomial:
        if name not in self.params:
            raise KeyError(f"undeclared parameter {name!r}")
        return Polynomial.var(param(name))

    def form(self, terms=None, degree: int | None = None) -> DifferentialForm:
        terms = terms or {}
        if degree is None:
            degree = len(next(iter(terms))) if terms else 0
        return DifferentialForm(self.generators, degree, terms)

    def scalar(self, c) -> DifferentialForm:
        return DifferentialForm.scalar(self.generators, c)

    @cached_property
    def contact(self) -> DifferentialForm:
        terms = {(DU,): 1}
        for mu in range(1, self.n + 1):
            terms[(dq(mu),)] = -Polynomial.var(p(mu))
        return self.form(terms)

    @cached_property
    def reeb(self) -> PolyVectorField:
        return PolyVectorField({DU: 1})

    @cached_property
    def omega(self) -> DifferentialForm:
        return self.form({(dq(mu), dp(mu)): 1 for mu in range(1, self.n + 1)})

    @cached_property
    def x_omega(self) -> PolyBiVector:
        return PolyBiVector((dq(mu), dp(mu), 1) for mu in range(1, self.n + 1))

    @cached_property
    def beta(self) -> DifferentialForm:
        return self.form({tuple(dq(mu) for mu in range(1, self.n + 1)): 1})

    def beta_mu(self, mu: int) -> DifferentialForm:
        return contract_vector(PolyVectorField({dq(mu): 1}), self.beta)

    @cached_property
    def cartan_generators(self) -> tuple[Gen, ...]:
        return tuple(g for g in self.generators.gens if g != DU)


def reeb_contract(ctx: JetContext, a: DifferentialForm) -> DifferentialForm:
    if a.degree == 0:
        return DifferentialForm.zero(a.gens, 0)
    return contract_vector(ctx.reeb, a)


def project(ctx: JetContext, a: DifferentialForm) -> DifferentialForm:
    """a - contact ^ (reeb contracted into a)."""
    if a.degree == 0:
        return a
    return a - wedge(ctx.contact, contract_vector(ctx.reeb, a))


def d_p(ctx: JetContext, a: DifferentialForm) -> DifferentialForm:
    return project(ctx, ext_d(a))


def bottom(ctx: JetContext, a: DifferentialForm) -> DifferentialForm:
    return contract_bivector(ctx.x_omega, a)


def lie_reeb(ctx: JetContext, a: DifferentialForm) -> DifferentialForm:
    """Lie derivative along the Reeb field via the Cartan formula."""
    da = ext_d(a)
    result = contract_vector(ctx.reeb, da)
    if a.degree > 0:
        result = result + ext_d(contract_vector(ctx.reeb, a))
    return result


@dataclass(frozen=True)
class Effectivity:
    effective: bool
    reason: str | None = None  # "reeb" or "bottom" when not effective
    witness: DifferentialForm | None = None

    def __bool__(self) -> bool:
        return self.effective


def is_effective(ctx: JetContext, a: DifferentialForm) -> Effectivity:
    if a.degree > ctx.n:
        raise DegreeTooHigh(f"degree {a.degree} exceeds n={ctx.n}")
    r = reeb_contract(ctx, a)
    if r:
        return Effectivity(False, "reeb", r)
    b = bottom(ctx, a)
    if b:
        return Effectivity(False, "bottom", b)
    return Effectivity(True)


def _require_cartan(ctx: JetContext, a: DifferentialForm) -> None:
    if a.degree > ctx.n:
        raise DegreeTooHigh(f"degree {a.degree} exceeds n={ctx.n}")
    if reeb_contract(ctx, a):
        raise NotDegenerateAlongReeb("form has a du component; apply project() first")


@lru_cache(maxsize=None)
def _residual_operator(n: int, k: int) -> tuple[tuple[tuple[Gen, ...], ...], tuple[tuple[Fraction, ...], ...]]:
    """Basis of Cartan (k-2)-forms and the inverse of x -> bottom(x ^ omega) on it."""
    ctx = JetContext(n, max_n=max(n, DEFAULT_MAX_N))
    basis = tuple(combinations(ctx.cartan_generators, k - 2))
    index = {m: i for i, m in enumerate(basis)}
    size = len(basis)
    cols = []
    for m in basis:
        image = bottom(ctx, wedge(ctx.form({m: 1}, degree=k - 2), ctx.omega))
        col = [Fraction(0)] * size
        for mono, c in image.terms.items():
            col[index[mono]] = c.constant_value()
        cols.append(col)
    mat = [[cols[j][i] for j in range(size)] for i in range(size)]
    inv = inverse(mat)
    return basis, tuple(tuple(r) for r in inv)


def hodge_lepage_residual(ctx: JetContext, a: DifferentialForm) -> DifferentialForm:
    """The (k-2)-form x with a = effective_part(a) + x ^ omega.

    Degree 2 uses x = bottom(a)/n.  Other degrees solve bottom(a - x ^ omega) = 0
    by exact linear algebra; the operator is C-linear, so one constant matrix
    (cached per (n, k)) serves all polynomial coefficients.
    """
    _require_cartan(ctx, a)
    k = a.degree
    if k < 2:
        raise ValueError("the residual is defined for degree >= 2")
    if k == 2:
        return bottom(ctx, a) * Fraction(1, ctx.n)
    basis, inv = _residual_operator(ctx.n, k)
    rhs = bottom(ctx, a)
    index = {m: i for i, m in enumerate(basis)}
    rhs_vec = [Polynomial()] * len(basis)
    for mono, c in rhs.terms.items():
        rhs_vec[index[mono]] = c
    x_terms = {}
    for i, row in enumerate(inv):
        acc = Polynomial()
        for j, f in enumerate(row):
            if f and rhs_vec[j]:
                acc = acc + rhs_vec[j] * f
        if acc:
            x_terms[basis[i]] = acc
    x = DifferentialForm(ctx.generators, k - 2, x_terms)
    if bottom(ctx, a - wedge(x, ctx.omega)):
        raise NoResidual("Hodge-Lepage solve did not produce an effective remainder")
    return x


def effective_part(ctx: JetContext, a: DifferentialForm) -> DifferentialForm:
    """Unique effective part of a form killed by the Reeb field."""
    _require_cartan(ctx, a)
    if a.degree < 2:
        return a
    x = hodge_lepage_residual(ctx, a)
    return a - wedge(x, ctx.omega)


def effective_part_closed_form(ctx: JetContext, a: DifferentialForm) -> DifferentialForm:
    """Closed formulas for degrees 2 and 4 (the latter needs n > 2).

    Degree 2:  a - (bottom a / n) omega
    Degree 4:  a - bottom(a)^omega/(n-2) + bottom^2(a)/(2(n-1)(n-2)) omega^omega
    """
    _require_cartan(ctx, a)
    n = ctx.n
    if a.degree == 2:
        return a - ctx.omega * (bottom(ctx, a).terms.get((), Polynomial()) * Fraction(1, n))
    if a.degree == 4:
        if n <= 2:
            raise ValueError("the degree-4 formula needs n > 2")
        b1 = bottom(ctx, a)
        b2 = bottom(ctx, b1).terms.get((), Polynomial())
        om2 = wedge(ctx.omega, ctx.omega)
        return a - wedge(b1, ctx.omega) * Fraction(1, n - 2) + om2 * (b2 * Fraction(1, 2 * (n - 1) * (n - 2)))
    raise ValueError("closed formula only for degrees 2 and 4")


__all__ = [
    "JetContext",
    "DegreeTooHigh",
    "NotDegenerateAlongReeb",
    "NoResidual",
    "Effectivity",
    "project",
    "d_p",
    "bottom",
    "lie_reeb",
    "is_effective",
    "effective_part",
    "effective_part_closed_form",
    "hodge_lepage_residual",
    "reeb_contract",
]
