from fractions import Fraction

import pytest

from freeprob.ring import Poly, RationalExpr


def test_basic_arithmetic():
    x = Poly.var("x")
    y = Poly.var("y")
    p = (x + y) * (x - y)
    assert p == x**2 - y**2
    assert (x + 1) ** 3 == x**3 + 3 * x**2 + 3 * x + 1
    assert (p - p).is_zero()


def test_rational_coefficients_exact():
    x = Poly.var("x")
    p = Fraction(1, 3) * x + Fraction(1, 6) * x
    assert p == Fraction(1, 2) * x
    assert p.coefficient((("x", 1),)) == Fraction(1, 2)


def test_subs_full_and_partial():
    x, y = Poly.var("x"), Poly.var("y")
    p = x**2 * y + 2 * x
    assert p.subs({"x": Fraction(2), "y": Fraction(3)}) == Fraction(16)
    assert p.subs({"x": 2.0, "y": 0.5}) == pytest.approx(6.0)
    partial = p.subs({"y": Fraction(3)})
    assert isinstance(partial, Poly)
    assert partial == 3 * x**2 + 2 * x
    nested = p.subs({"y": x})
    assert nested == x**3 + 2 * x


def test_degrees_and_variables():
    x, y = Poly.var("x"), Poly.var("y")
    p = x**3 * y + y**2
    assert p.degree() == 4
    assert p.degree("x") == 3
    assert p.degree("y") == 2
    assert p.variables() == {"x", "y"}


def test_constant_handling():
    c = Poly.const(Fraction(5, 2))
    assert c.is_constant()
    assert c.constant_value() == Fraction(5, 2)
    with pytest.raises(ValueError):
        (Poly.var("x") + 1).constant_value()


def test_rational_expr_equality_and_eval():
    x = Poly.var("x")
    a = RationalExpr(x**2 - 1, x - 1)
    b = RationalExpr(x + 1, Poly.const(1))
    assert a == b  # cross multiplication, no simplification
    assert a.evaluate({"x": Fraction(3)}) == Fraction(4)
    with pytest.raises(ValueError):
        a.evaluate({})
