import pytest

from jetforms.dsl import parse_form, parse_polynomial
from jetforms.euler import EULER_LAGRANGE_SIGN, FirstOrderLagrangian, WrongDegree, euler, euler_first_order
from jetforms.jetcalc import JetContext
from jetforms.jetpde import euler_lagrange_fields, extract_pde, lagrangian_to_jet
from jetforms.ratpoly import jet, Polynomial


def test_wave_equation_euler_form():
    ctx = JetContext(2, ("c",))
    L = parse_polynomial("1/2*(-p1^2 + c*p2^2)", ["c"], n=2)
    w = euler_first_order(ctx, L)
    assert w == parse_form("-c*dq1^dp2 - dq2^dp1", ctx)
    assert euler(ctx, ctx.beta * L) == w
    assert extract_pde(ctx, w) == parse_polynomial("phi_11 - c*phi_22", ["c"], ["phi"])


def test_klein_gordon_euler_form():
    ctx = JetContext(4, ("m",))
    L = parse_polynomial("1/2*(-p1^2 + p2^2 + p3^2 + p4^2 + m^2*u^2)", ["m"], n=4)
    assert euler_first_order(ctx, L) == parse_form(
        "(m^2*u)*beta - beta_1^dp1 + beta_2^dp2 + beta_3^dp3 + beta_4^dp4", ctx
    )


@pytest.mark.parametrize("n", [2, 3, 5])
def test_odd_and_even_dimensions(n):
    # the closed formula carries (-1)^n on the B-block; check against composition
    ctx = JetContext(n)
    L = parse_polynomial("p1*p2*u + q1*p1^2 - u^3", n=n)
    assert euler(ctx, ctx.beta * L) == euler_first_order(ctx, L)


def test_euler_lagrange_sign():
    ctx = JetContext(3)
    L = parse_polynomial("u*p1*p2 + q2*p3^2 + u^2", n=3)
    oracle = euler_lagrange_fields(lagrangian_to_jet(ctx, L), ["phi"])["phi"]
    assert extract_pde(ctx, euler_first_order(ctx, L)) == EULER_LAGRANGE_SIGN * oracle


def test_first_order_lagrangian_validation():
    ctx = JetContext(2)
    FirstOrderLagrangian(parse_polynomial("p1^2", n=2), ctx)
    with pytest.raises(ValueError):
        FirstOrderLagrangian(Polynomial.var(jet("phi", (1, 1))), ctx)


def test_wrong_degree():
    ctx = JetContext(2)
    with pytest.raises(WrongDegree):
        euler(ctx, ctx.omega * 0 + parse_form("dq1", ctx))
