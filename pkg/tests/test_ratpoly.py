from fractions import Fraction

import pytest

from jetforms.ratpoly import (
    Cancelled,
    MissingAssignment,
    U,
    Polynomial,
    inverse,
    jet,
    monomials_up_to,
    nullspace,
    p,
    param,
    q,
    rank,
    rref,
    solve,
)

P = Polynomial.var


def test_arithmetic_and_canonical_text():
    x = P(jet("phi", (1, 1))) * P(jet("phi", (2, 2))) - P(jet("phi", (1, 2))) ** 2
    assert str(x) == "phi_11*phi_22 - phi_12^2"
    assert str(P(p(2)) ** 2 * P(param("c")) * Fraction(1, 2) - P(p(1)) ** 2 * Fraction(1, 2)) == "1/2*p2^2*c - 1/2*p1^2"
    assert str(Polynomial.const(1)) == "1"
    assert str(Polynomial()) == "0"


def test_jet_symbols_are_symmetric():
    assert jet("phi", (2, 1)) == jet("phi", (1, 2))


def test_zero_terms_are_dropped():
    a = P(q(1)) + P(U)
    assert (a - a).is_zero()
    assert a * 0 == Polynomial()


def test_diff_eval_subs():
    f = P(q(1)) ** 2 * P(U) + P(p(1))
    assert f.diff(q(1)) == P(q(1)) * P(U) * 2
    assert f.eval({q(1): 2, U: Fraction(1, 2), p(1): 3}) == 5
    with pytest.raises(MissingAssignment):
        f.eval({q(1): 1})
    assert f.subs({U: P(q(1))}) == P(q(1)) ** 3 + P(p(1))


def test_split_by_parameters():
    m = P(param("m"))
    f = m * m * P(U) + P(p(1))
    parts = f.split_by(lambda v: v.is_parameter)
    total = sum((Polynomial({k: 1}) * v for k, v in parts.items()), Polynomial())
    assert total == f and len(parts) == 2


def test_monomials_up_to_counts():
    assert len(monomials_up_to([q(1), q(2), U], 2)) == 10


def test_linear_algebra():
    m = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    assert rank(m) == 2
    ns = nullspace(m)
    assert len(ns) == 1
    assert all(sum(Fraction(a) * b for a, b in zip(row, ns[0])) == 0 for row in m)
    assert solve([[1, 1], [1, -1]], [2, 0]) == [1, 1]
    assert solve([[1, 1], [1, 1]], [1, 2]) is None
    inv = inverse([[2, 0], [0, 4]])
    assert inv == [[Fraction(1, 2), 0], [0, Fraction(1, 4)]]
    with pytest.raises(ValueError):
        inverse([[1, 1], [1, 1]])


def test_rref_cancellation():
    with pytest.raises(Cancelled):
        rref([[1, 2], [3, 4]], should_stop=lambda: True)
