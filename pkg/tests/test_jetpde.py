import pytest

from jetforms.dsl import parse_form, parse_jet_polynomial
from jetforms.exterior import DE, GeneratorSet
from jetforms.jetcalc import JetContext
from jetforms.jetpde import (
    ExtendedGeneratorPresent,
    MAEquation,
    NotRepresentable,
    OrderTooHigh,
    euler_lagrange_fields,
    extract_pde,
    proportionality,
    substitute_field,
    synthesize_form,
    total_derivative,
)

CTX = JetContext(4)


def J(text, fields=("phi",)):
    return parse_jet_polynomial(text, fields=fields, n=4)


@pytest.mark.parametrize(
    "form, expected",
    [
        ("beta", "1"),
        ("d[1,2;1,2]", "phi_13*phi_24 - phi_14*phi_23"),
        ("d[3,4;1,2]", "phi_11*phi_22 - phi_12^2"),
        ("d[1,2,3;2]", "phi_24"),
        ("d[1,2,4;1]", "-phi_13"),
        ("d[1,2;3,4]", "phi_33*phi_44 - phi_34^2"),
        ("du^dq2^dq3^dq4", "phi_1"),
    ],
)
def test_extraction_of_basis_monomials(form, expected):
    assert extract_pde(CTX, parse_form(form, CTX)) == J(expected)


def test_extraction_rejects_extended_generators():
    gens = GeneratorSet.jet(4, extra=(DE,))
    with pytest.raises(ExtendedGeneratorPresent):
        extract_pde(CTX, parse_form("de^dq1^dq2^dq3", CTX, gens))


def test_total_derivative():
    assert total_derivative(J("phi_1*phi_22"), 1) == J("phi_11*phi_22 + phi_1*phi_122")
    assert total_derivative(J("q1*phi"), 1) == J("phi + q1*phi_1")


def test_euler_lagrange_orders():
    out = euler_lagrange_fields(J("1/2*phi_1^2"), ["phi"])
    assert out["phi"] == J("-phi_11")
    with pytest.raises(OrderTooHigh):
        euler_lagrange_fields(J("phi_111"), ["phi"])


def test_two_field_reformulation():
    L = J("psi*phi_1*phi_22 + 1/2*phi_1*phi_3 - 1/2*psi^2*phi_22 + 1/2*phi_2*phi_4", ("phi", "psi"))
    el = euler_lagrange_fields(L, ["phi", "psi"])
    assert el["psi"] == J("phi_22*(phi_1 - psi)", ("phi", "psi"))
    reduced = substitute_field(el["phi"], "psi", J("phi_1"))
    assert reduced == -J("phi_11*phi_22 - phi_12^2 + phi_13 + phi_24")


def test_proportionality():
    a = J("2*phi_11 + 4*phi")
    assert proportionality(a, J("phi_11 + 2*phi")) == 2
    assert proportionality(a, J("phi_11")) is None


@pytest.mark.parametrize(
    "lhs",
    [
        "phi_11*phi_22 - phi_12^2 + phi_13 + phi_24",
        "phi_13*phi_24 - phi_14*phi_23 + phi_11 + phi_22",
        "phi_11 + phi_24*phi_13 - phi_23*phi_14",
        "phi_13*phi_24 - phi_14*phi_23 - 1",
    ],
)
def test_synthesis_round_trip(lhs):
    eq = MAEquation("x", 4, J(lhs))
    w = synthesize_form(CTX, eq)
    assert extract_pde(CTX, w) == eq.lhs
    assert w.has_constant_coefficients()


def test_synthesis_of_klein_gordon_needs_degree_one():
    ctx = JetContext(4, ("m",))
    eq = MAEquation("kg", 4, parse_jet_polynomial("phi_11 - phi_22 - phi_33 - phi_44 + m^2*phi", params=["m"], n=4))
    with pytest.raises(NotRepresentable):
        synthesize_form(ctx, eq, degree=0)
    w = synthesize_form(ctx, eq, degree=1)
    assert extract_pde(ctx, w) == eq.lhs


def test_synthesis_rejects_third_order():
    with pytest.raises(NotRepresentable):
        synthesize_form(CTX, MAEquation("x", 4, J("phi_111")))
