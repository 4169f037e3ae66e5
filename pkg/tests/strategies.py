"""Hypothesis strategies for polynomials and forms on the jet space."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from jetforms.exterior import DifferentialForm
from jetforms.jetcalc import JetContext
from jetforms.ratpoly import U, Polynomial, p, q

DIMENSIONS = st.sampled_from([2, 3, 4])

small_fractions = st.builds(
    Fraction,
    st.integers(min_value=-5, max_value=5),
    st.integers(min_value=1, max_value=3),
)


def chart_variables(n: int, with_u: bool = True):
    return [q(i) for i in range(1, n + 1)] + ([U] if with_u else []) + [p(i) for i in range(1, n + 1)]


@st.composite
def polynomials(draw, n: int, max_terms: int = 3, max_degree: int = 2, with_u: bool = True):
    variables = chart_variables(n, with_u)
    total = Polynomial()
    for _ in range(draw(st.integers(min_value=0, max_value=max_terms))):
        c = draw(small_fractions)
        term = Polynomial.const(c)
        for _ in range(draw(st.integers(min_value=0, max_value=max_degree))):
            term = term * Polynomial.var(draw(st.sampled_from(variables)))
        total = total + term
    return total


@st.composite
def forms(draw, ctx: JetContext, degree: int, cartan: bool = True, max_terms: int = 4, max_degree: int = 2):
    gens = list(ctx.cartan_generators if cartan else ctx.generators.gens)
    terms = {}
    if degree > len(gens):
        return DifferentialForm.zero(ctx.generators, degree)
    for _ in range(draw(st.integers(min_value=0, max_value=max_terms))):
        mono = tuple(sorted(draw(st.lists(st.sampled_from(gens), min_size=degree, max_size=degree, unique=True))))
        terms[mono] = draw(polynomials(ctx.n, max_degree=max_degree))
    return DifferentialForm(ctx.generators, degree, terms)


@st.composite
def context_and_form(draw, degree=None, cartan: bool = True, max_degree: int = 2):
    ctx = JetContext(draw(DIMENSIONS))
    k = draw(st.integers(min_value=0, max_value=ctx.n)) if degree is None else degree(ctx) if callable(degree) else degree
    return ctx, draw(forms(ctx, k, cartan=cartan, max_degree=max_degree))


@st.composite
def context_and_lagrangian(draw, max_degree: int = 3):
    ctx = JetContext(draw(DIMENSIONS))
    return ctx, draw(polynomials(ctx.n, max_terms=4, max_degree=max_degree))
