from fractions import Fraction

import pytest
from hypothesis import given

from jetforms.dsl import parse_form
from jetforms.exterior import DU, DifferentialForm, dp, dq, wedge
from jetforms.jetcalc import (
    DegreeTooHigh,
    JetContext,
    NotDegenerateAlongReeb,
    bottom,
    d_p,
    effective_part,
    effective_part_closed_form,
    hodge_lepage_residual,
    is_effective,
    lie_reeb,
    project,
    reeb_contract,
)
from jetforms.ratpoly import U, Polynomial
from strategies import context_and_form

CTX4 = JetContext(4)


def test_contact_structure():
    ctx = JetContext(2)
    assert str(ctx.contact) == "-p1*dq1 - p2*dq2 + du"
    assert reeb_contract(ctx, ctx.contact) == ctx.scalar(1)
    assert reeb_contract(ctx, ctx.omega).is_zero()
    assert str(ctx.beta_mu(2)) == "-dq1"


def test_projection_kills_du():
    ctx = JetContext(2)
    a = DifferentialForm.monomial(ctx.generators, [DU])
    assert project(ctx, a) == ctx.contact * 0 + DifferentialForm.monomial(ctx.generators, [DU]) - ctx.contact
    assert reeb_contract(ctx, project(ctx, a)).is_zero()


def test_d_p_of_klein_gordon_vanishes():
    ctx = JetContext(4, ("m",))
    w = parse_form("(m^2*u)*beta - beta_1^dp1 + beta_2^dp2 + beta_3^dp3 + beta_4^dp4", ctx)
    # d(m^2 u beta) = m^2 du^beta, whose projection is m^2 p_mu dq^mu ^ beta = 0
    assert d_p(ctx, w).is_zero()


def test_lie_reeb_is_derivative_in_u():
    ctx = JetContext(2)
    w = ctx.beta * (Polynomial.var(U) ** 2)
    assert lie_reeb(ctx, w) == ctx.beta * (Polynomial.var(U) * 2)


def test_effectivity_reasons():
    ctx = CTX4
    assert is_effective(ctx, ctx.beta)
    assert is_effective(ctx, ctx.omega).reason == "bottom"
    assert is_effective(ctx, ctx.contact).reason == "reeb"
    with pytest.raises(DegreeTooHigh):
        is_effective(JetContext(2), wedge(JetContext(2).omega, JetContext(2).beta))


def test_effective_part_needs_cartan_forms():
    with pytest.raises(NotDegenerateAlongReeb):
        effective_part(CTX4, wedge(CTX4.contact, CTX4.beta_mu(1)))


def test_residual_example_degree_four():
    ctx = CTX4
    a = parse_form("d[1,2;1,2]", ctx)
    x = hodge_lepage_residual(ctx, a)
    expected = parse_form("-1/3*dq1^dp1 - 1/3*dq2^dp2 + 1/6*dq3^dp3 + 1/6*dq4^dp4", ctx)
    assert x == expected
    assert x == parse_form("-1/2*(dq1^dp1 + dq2^dp2)", ctx) + ctx.omega * Fraction(1, 6)


def test_plebanski1_effective_part():
    ctx = CTX4
    eff = effective_part(ctx, parse_form("d[1,2;1,2] - beta", ctx))
    expected = parse_form(
        "-beta + 1/3*(d[1,2;1,2] + d[3,4;3,4]) - 1/6*(d[1,3;1,3] + d[1,4;1,4] + d[2,3;2,3] + d[2,4;2,4])", ctx
    )
    assert eff == expected


@given(context_and_form(degree=2))
def test_closed_form_degree_two(cf):
    ctx, a = cf
    assert effective_part_closed_form(ctx, a) == effective_part(ctx, a)


@given(context_and_form(degree=lambda ctx: 4 if ctx.n == 4 else 2))
def test_closed_form_degree_four(cf):
    ctx, a = cf
    assert effective_part_closed_form(ctx, a) == effective_part(ctx, a)


def test_low_degrees_are_their_own_effective_part():
    ctx = CTX4
    one = DifferentialForm.monomial(ctx.generators, [dq(1)])
    assert effective_part(ctx, one) == one
    assert bottom(ctx, one).is_zero()
    assert effective_part(ctx, DifferentialForm.monomial(ctx.generators, [dp(1), dq(1)])) == parse_form(
        "-dq1^dp1 + 1/4*Omega", ctx
    )
