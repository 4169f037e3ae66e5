"""Multisymplectic forms built from Monge-Ampere data.

* Harrivel's construction ``m_w = de ^ beta + contact ^ w`` on the jet space
  extended by the fiber coordinate ``e``, with the two-criterion test
  (independence of the contractions d/dq^mu into w, and d_p w = 0).
* A direct verifier of the definition: closed and nondegenerate.
* Helein's Klein-Gordon data on the space with coordinates (q, p, e, phi).

Nondegeneracy of a form with polynomial coefficients is decided by exact
evaluation at pseudo-random rational points; such results carry
``exact=False``.  A kernel found at any point is a certificate of degeneracy
there.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exterior import (
    DE,
    DPHI,
    DU,
    PHI,
    DifferentialForm,
    Gen,
    GeneratorSet,
    contract_vector,
    direction,
    dp,
    dq,
    ext_d,
    wedge,
)
from .jetcalc import JetContext, d_p, is_effective
from .jetpde import jet_poly
from .ratpoly import E, Polynomial, Var, nullspace, p, param, rank

DEFAULT_SAMPLES = 16
DEFAULT_SEED = 20240611


class NotEffective(ValueError):
    pass


# --------------------------------------------------------------------------
# sampling
# --------------------------------------------------------------------------


def sample_points(variables: Sequence[Var], samples: int, seed: int) -> list[dict[Var, Fraction]]:
    """Deterministic rational points; parameters are drawn nonzero."""
    rng = random.Random(seed)
    ordered = sorted(set(variables), key=lambda v: v.key)
    points = []
    for _ in range(samples):
        pt = {}
        for v in ordered:
            num = rng.randint(-9, 9)
            if v.is_parameter and num == 0:
                num = 1
            pt[v] = Fraction(num, rng.randint(1, 5))
        points.append(pt)
    return points


def _coefficient_rows(forms: Sequence[DifferentialForm]) -> tuple[list, list[list[Polynomial]]]:
    """Monomial basis and the polynomial coefficient matrix (one row per form)."""
    basis = sorted({mono for f in forms for mono in f.terms})
    rows = [[f.coefficient(mono) for mono in basis] for f in forms]
    return basis, rows


def _expand_constant_rows(rows: list[list[Polynomial]]) -> list[list[Fraction]]:
    """Expand polynomial entries into rational columns (form monomial x polynomial monomial)."""
    cols = sorted({(j, m) for row in rows for j, c in enumerate(row) for m in c.terms}, key=lambda t: (t[0], str(t[1])))
    index = {k: i for i, k in enumerate(cols)}
    out = []
    for row in rows:
        r = [Fraction(0)] * len(cols)
        for j, c in enumerate(row):
            for m, k in c.terms.items():
                r[index[(j, m)]] = k
        out.append(r)
    return out


def _transpose(rows):
    return [list(col) for col in zip(*rows)] if rows else []


# --------------------------------------------------------------------------
# direct verification
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Nondegeneracy:
    verdict: bool
    exact: bool
    points: tuple[dict, ...] = ()
    kernel: dict | None = None  # {"point": ..., "vector": {gen name: value}}


@dataclass(frozen=True)
class DirectCheck:
    closed: bool
    differential: DifferentialForm
    nondegenerate: Nondegeneracy

    @property
    def multisymplectic(self) -> bool:
        return self.closed and self.nondegenerate.verdict


def _contraction_matrix(m: DifferentialForm) -> tuple[list[Gen], list[list[Polynomial]]]:
    gens = list(m.gens.gens)
    forms = [contract_vector(direction(g), m) for g in gens]
    _, rows = _coefficient_rows(forms)
    return gens, rows


def _numeric(a: DifferentialForm) -> bool:
    """All coefficients are rational numbers (no chart variables, no parameters)."""
    return all(c.is_constant() for c in a.terms.values())


def substitute_generators(a: DifferentialForm, images: dict[Gen, DifferentialForm]) -> DifferentialForm:
    """Replace generators by 1-forms (a change of coframe), expanding wedges."""
    total = DifferentialForm.zero(a.gens, a.degree)
    for mono, c in a.terms.items():
        term = DifferentialForm.scalar(a.gens, c)
        for g in mono:
            term = wedge(term, images.get(g) or DifferentialForm.monomial(a.gens, [g]))
        total = total + term
    return total


def verify_multisymplectic_direct(
    m: DifferentialForm,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    adapted: tuple[DifferentialForm, dict[Gen, DifferentialForm]] | None = None,
) -> DirectCheck:
    """Closedness (exact) and nondegeneracy of v -> v contracted into m.

    ``adapted`` optionally gives ``(m', coframe)`` where ``coframe`` maps some
    generators to 1-forms forming a unimodular change of coframe and
    ``m'`` with those substitutions equals ``m``.  Injectivity of the
    contraction map does not depend on the coframe, so when ``m'`` has
    constant coefficients nondegeneracy is decided exactly on ``m'``.
    """
    dm = ext_d(m)
    closed = dm.is_zero()
    if m.degree == 0:
        return DirectCheck(closed, dm, Nondegeneracy(False, True))
    if adapted is not None:
        m_adapted, coframe = adapted
        if substitute_generators(m_adapted, coframe) != m:
            raise ValueError("adapted form does not match m under the given coframe")
        if _numeric(m_adapted) and not _numeric(m):
            return DirectCheck(closed, dm, verify_multisymplectic_direct(m_adapted).nondegenerate)
    gens, rows = _contraction_matrix(m)
    N = len(gens)
    if _numeric(m):
        mat = [[c.constant_value() for c in row] for row in rows]
        # kernel of v -> sum_g v_g row_g  is the nullspace of the transpose
        ker = nullspace(_transpose(mat), N) if mat and mat[0] else [[Fraction(1)] + [Fraction(0)] * (N - 1)]
        if not ker:
            return DirectCheck(closed, dm, Nondegeneracy(True, True))
        vec = {g.name: str(x) for g, x in zip(gens, ker[0]) if x}
        return DirectCheck(closed, dm, Nondegeneracy(False, True, kernel={"point": {}, "vector": vec}))
    variables = sorted(m.variables(), key=lambda v: v.key)
    points = sample_points(variables, samples, seed)
    for pt in points:
        mat = [[c.eval(pt) for c in row] for row in rows]
        ker = nullspace(_transpose(mat), N)
        if ker:
            vec = {g.name: str(x) for g, x in zip(gens, ker[0]) if x}
            point = {str(v): str(x) for v, x in pt.items()}
            return DirectCheck(closed, dm, Nondegeneracy(False, False, tuple(points), {"point": point, "vector": vec}))
    return DirectCheck(closed, dm, Nondegeneracy(True, False, tuple(points)))


# --------------------------------------------------------------------------
# Harrivel's construction
# --------------------------------------------------------------------------


def harrivel_generators(ctx: JetContext) -> GeneratorSet:
    return GeneratorSet.jet(ctx.n, extra=(DE,))


def harrivel_form(ctx: JetContext, w: DifferentialForm) -> DifferentialForm:
    """de ^ beta + contact ^ w on the jet space extended by de."""
    if w.degree != ctx.n:
        raise NotEffective(f"expected an {ctx.n}-form, got degree {w.degree}")
    eff = is_effective(ctx, w)
    if not eff:
        raise NotEffective(f"form is not effective: {eff.reason}")
    gens = harrivel_generators(ctx)
    de = DifferentialForm.monomial(gens, [DE])
    return wedge(de, ctx.beta.on(gens)) + wedge(ctx.contact.on(gens), w.on(gens))


def harrivel_adapted(ctx: JetContext, w: DifferentialForm) -> tuple[DifferentialForm, dict[Gen, DifferentialForm]]:
    """m_w in the coframe (dq, contact, dp, de): du stands for the contact form.

    du -> du - p_mu dq^mu is unipotent, so the coframe change is invertible
    at every point.
    """
    gens = harrivel_generators(ctx)
    de = DifferentialForm.monomial(gens, [DE])
    du = DifferentialForm.monomial(gens, [DU])
    m_adapted = wedge(de, ctx.beta.on(gens)) + wedge(du, w.on(gens))
    return m_adapted, {DU: ctx.contact.on(gens)}


@dataclass(frozen=True)
class Criterion1:
    independent: bool
    dependency: tuple[Fraction, ...] | None
    contractions: tuple[DifferentialForm, ...]
    function_field_independent: bool | None
    function_field_exact: bool


@dataclass(frozen=True)
class Criterion2:
    dpw: DifferentialForm
    vanishes: bool


@dataclass(frozen=True)
class MultisymplecticReport:
    form: DifferentialForm
    m: DifferentialForm
    criterion1: Criterion1
    criterion2: Criterion2
    direct: DirectCheck | None = None
    diagnostics: tuple[str, ...] = field(default=())

    @property
    def verdict(self) -> bool:
        return self.criterion1.independent and self.criterion2.vanishes

    @property
    def agrees(self) -> bool | None:
        if self.direct is None:
            return None
        return self.direct.multisymplectic == self.verdict


def _criterion1(ctx: JetContext, w: DifferentialForm, samples: int, seed: int) -> Criterion1:
    n = ctx.n
    contractions = tuple(contract_vector(direction(dq(mu)), w) for mu in range(1, n + 1))
    _, rows = _coefficient_rows(contractions)
    # independence over the constants: exact rank of the expanded rational matrix
    expanded = _expand_constant_rows(rows)
    ncols = len(expanded[0]) if expanded else 0
    if ncols and rank(expanded, ncols) == n:
        independent, dependency = True, None
    else:
        ker = nullspace(_transpose(expanded), n) if ncols else [[Fraction(1)] + [Fraction(0)] * (n - 1)]
        independent, dependency = False, tuple(ker[0])
    # independence over the function field: full rank at one point is a proof
    if not rows or not rows[0]:
        ff, exact = False, True
    elif all(c.is_constant() for row in rows for c in row):
        ff, exact = rank([[c.constant_value() for c in row] for row in rows]) == n, True
    else:
        variables = sorted({v for row in rows for c in row for v in c.variables()}, key=lambda v: v.key)
        ff, exact = False, False
        for pt in sample_points(variables, samples, seed):
            if rank([[c.eval(pt) for c in row] for row in rows]) == n:
                ff, exact = True, True
                break
    return Criterion1(independent, dependency, contractions, ff, exact)


def check_harrivel(
    ctx: JetContext,
    w: DifferentialForm,
    direct: bool = True,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
) -> MultisymplecticReport:
    m = harrivel_form(ctx, w)
    c1 = _criterion1(ctx, w, samples, seed)
    dpw = d_p(ctx, w)
    c2 = Criterion2(dpw, dpw.is_zero())
    diagnostics = []
    if c1.function_field_independent is False and c1.independent:
        diagnostics.append("contractions independent over constants but dependent over functions"
                           + ("" if c1.function_field_exact else " at all sampled points"))
    dc = verify_multisymplectic_direct(m, samples, seed, adapted=harrivel_adapted(ctx, w)) if direct else None
    report = MultisymplecticReport(w, m, c1, c2, dc, tuple(diagnostics))
    if dc is not None and not report.agrees:
        diagnostics.append(
            f"criteria verdict {report.verdict} differs from the direct check "
            f"(closed={dc.closed}, nondegenerate={dc.nondegenerate.verdict}, exact={dc.nondegenerate.exact})"
        )
        report = MultisymplecticReport(w, m, c1, c2, dc, tuple(diagnostics))
    return report


# --------------------------------------------------------------------------
# Helein's Klein-Gordon data
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class HeleinKGData:
    n: int
    mass: str
    m: DifferentialForm
    hamiltonian: Polynomial
    eta: tuple[int, ...]
    relations: tuple[tuple[Var, Polynomial], ...]

    def hamiltonian_on_curve(self) -> Polynomial:
        return self.hamiltonian.subs(dict(self.relations))


def helein_kg(mass: str = "m", n: int = 4) -> HeleinKGData:
    """m = de^beta + dp_mu^dphi^beta_mu, H = e + 1/2 eta p p + 1/2 m^2 phi^2."""
    ctx = JetContext(n, (mass,))
    gens = GeneratorSet.helein(n)
    beta = ctx.beta.on(gens)
    form = wedge(DifferentialForm.monomial(gens, [DE]), beta)
    for mu in range(1, n + 1):
        form = form + wedge(DifferentialForm.monomial(gens, [dp(mu), DPHI]), ctx.beta_mu(mu).on(gens))
    eta = (1,) + (-1,) * (n - 1)
    mm = Polynomial.var(param(mass))
    phi = Polynomial.var(PHI)
    half = Fraction(1, 2)
    H = Polynomial.var(E) + mm * mm * phi * phi * half
    for mu in range(1, n + 1):
        H = H + Polynomial.var(p(mu)) ** 2 * (half * eta[mu - 1])
    relations = [(p(mu), jet_poly("phi", mu) * eta[mu - 1]) for mu in range(1, n + 1)]
    e_rel = mm * mm * phi * phi * (-half)
    for mu in range(1, n + 1):
        e_rel = e_rel - jet_poly("phi", mu) ** 2 * (half * eta[mu - 1])
    relations.append((E, e_rel))
    return HeleinKGData(n, mass, form, H, eta, tuple(relations))


__all__ = [
    "NotEffective",
    "Nondegeneracy",
    "DirectCheck",
    "Criterion1",
    "Criterion2",
    "MultisymplecticReport",
    "HeleinKGData",
    "sample_points",
    "harrivel_generators",
    "harrivel_form",
    "harrivel_adapted",
    "substitute_generators",
    "check_harrivel",
    "verify_multisymplectic_direct",
    "helein_kg",
    "DEFAULT_SAMPLES",
    "DEFAULT_SEED",
]
