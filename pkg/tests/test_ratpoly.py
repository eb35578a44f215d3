"""Exact polynomial ring sanity checks.

Everything here is Fraction arithmetic; equality means identical terms,
not closeness.
"""

from fractions import Fraction

import pytest

from polyfock.ratpoly import RationalPoly


def x_and_y():
    x = RationalPoly.variable("x", ("x", "y"))
    y = RationalPoly.variable("y", ("x", "y"))
    return x, y


def test_zero_and_constant():
    z = RationalPoly.zero(("x",))
    assert z.is_zero()
    assert z.total_degree() == -1
    c = RationalPoly.constant(Fraction(3, 2), ("x",))
    assert not c.is_zero()
    assert c.total_degree() == 0
    assert c.evaluate([Fraction(7)]) == Fraction(3, 2)


def test_ring_operations():
    x, y = x_and_y()
    p = (x + y) * (x - y)
    q = x * x - y * y
    assert p == q
    assert (p - q).is_zero()


def test_binomial_cube():
    x, y = x_and_y()
    p = (x + y) * (x + y) * (x + y)
    assert p.coefficient((3, 0)) == 1
    assert p.coefficient((2, 1)) == 3
    assert p.coefficient((1, 2)) == 3
    assert p.coefficient((0, 3)) == 1
    assert p.coefficient((4, 0)) == 0
    assert p.total_degree() == 3


def test_scalar_multiplication_and_negation():
    x, _ = x_and_y()
    p = 3 * x - x.scale(2)
    assert p == x
    assert (-p + x).is_zero()
    half = x.scale(Fraction(1, 2))
    assert half.coefficient((1, 0)) == Fraction(1, 2)


def test_evaluate_is_exact():
    x, y = x_and_y()
    p = x * x * y - y.scale(Fraction(1, 3))
    val = p.evaluate([Fraction(2, 3), Fraction(9, 5)])
    assert val == Fraction(4, 9) * Fraction(9, 5) - Fraction(1, 3) * Fraction(9, 5)


def test_mixed_variable_mismatch_rejected():
    x, _ = x_and_y()
    other = RationalPoly.variable("t", ("t",))
    with pytest.raises(ValueError):
        _ = x + other


def test_structural_equality_ignores_zero_coefficients():
    x, y = x_and_y()
    p = x + y - y
    assert p == x
    assert len(p.terms) == 1
