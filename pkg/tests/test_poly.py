"""Laurent polynomial arithmetic, canonical text, and parsing."""

from fractions import Fraction

import pytest

from lambdakit.poly import LaurentPoly, elementary_symmetric, format_poly, parse_poly

V = ("x", "y")


def _x():
    return LaurentPoly.var(V, "x")


def _y():
    return LaurentPoly.var(V, "y")


def test_zero_coefficients_dropped():
    p = LaurentPoly(V, {(1, 0): 1, (0, 1): 0})
    assert p == _x()
    assert not p.is_zero()
    assert LaurentPoly(V, {}).is_zero()


def test_fraction_coefficients_normalized_to_int():
    p = LaurentPoly(V, {(1, 0): Fraction(4, 2)})
    assert p.terms[(1, 0)] == 2
    assert isinstance(p.terms[(1, 0)], int)
    q = LaurentPoly(V, {(1, 0): Fraction(1, 2)})
    assert q.terms[(1, 0)] == Fraction(1, 2)


def test_addition_and_scalars():
    p = _x() + _y()
    assert p == LaurentPoly(V, {(1, 0): 1, (0, 1): 1})
    assert p + 1 == LaurentPoly(V, {(1, 0): 1, (0, 1): 1, (0, 0): 1})
    assert 1 + p == p + 1
    assert p - p == LaurentPoly.zero(V)
    assert 3 * _x() == LaurentPoly(V, {(1, 0): 3})
    assert Fraction(1, 2) * _x() == LaurentPoly(V, {(1, 0): Fraction(1, 2)})


def test_multiplication():
    p = (_x() + _y()) * (_x() - _y())
    assert p == _x() ** 2 - _y() ** 2


def test_power_and_monomial_inverse():
    assert (_x() + 1) ** 0 == LaurentPoly.const(V, 1)
    assert (_x() + _y()) ** 2 == _x() ** 2 + 2 * _x() * _y() + _y() ** 2
    inv = (2 * _x()) ** -1
    assert inv == LaurentPoly(V, {(-1, 0): Fraction(1, 2)})
    assert inv * (2 * _x()) == LaurentPoly.const(V, 1)


def test_non_monomial_inverse_rejected():
    with pytest.raises(ValueError, match="not a unit"):
        (_x() + _y()) ** -1


def test_substitute_is_a_ring_map():
    p = _x() ** 2 + 3 * _x() * _y()
    w = ("u",)
    u = LaurentPoly.var(w, "u")
    image = p.substitute({"x": u, "y": u + 1}, w)
    assert image == u * u + 3 * u * (u + 1)


def test_substitute_scalars():
    p = _x() ** 2 - _y()
    assert p.substitute({"x": 3, "y": 2}, ()).constant_value() == 7


def test_extend_and_rename():
    w = ("x", "z", "y")
    p = (_x() + _y()).extend(w)
    assert p == LaurentPoly.var(w, "x") + LaurentPoly.var(w, "y")
    q = _x().rename(("a", "b"))
    assert q == LaurentPoly.var(("a", "b"), "a")


def test_weights():
    p = _x() ** 2 * _y() + _x()
    assert p.total_degree() == 3
    assert p.weight({"x": 1, "y": 3}) == 5
    assert p.is_isobaric({"x": 1, "y": 0}, 1) is False
    assert (_x() * _y()).is_isobaric({"x": 1, "y": 2}, 3) is True


def test_eval_at_integer_points():
    p = _x() ** 2 + 2 * _x() * _y() - 5
    assert p.eval_at({"x": 3, "y": 4}, 1) == 9 + 24 - 5


def test_canonical_text_golden():
    p = _x() ** 2 * _y() - 2 * _y() ** 2 + _x() - 1
    assert format_poly(p) == "x^2*y - 2*y^2 + x - 1"
    assert format_poly(LaurentPoly.zero(V)) == "0"
    assert format_poly(-_x()) == "-x"
    assert format_poly(_x() ** -2) == "x^-2"
    assert format_poly(Fraction(1, 2) * _x()) == "1/2*x"


def test_sorted_terms_descending_graded_lex():
    p = _x() + _y() + _x() * _y() + 1
    order = [e for e, _ in p.sorted_terms()]
    assert order == [(1, 1), (1, 0), (0, 1), (0, 0)]


def test_parse_round_trip():
    texts = [
        "x^2*y - 2*y^2 + x - 1",
        "0",
        "-x",
        "x^-2",
        "1/2*x - 3/4",
        "e1^2*f2 + e2*f1^2 - 2*e2*f2",
    ]
    for text in texts[:5]:
        p = parse_poly(text, V)
        assert format_poly(p) == text
    p = parse_poly(texts[5], ("e1", "e2", "f1", "f2"))
    assert format_poly(p) == texts[5]


def test_parse_rejects_unknown_variable():
    with pytest.raises(ValueError):
        parse_poly("x + q", V)


def test_elementary_symmetric():
    roots = [_x(), _y()]
    assert elementary_symmetric(roots, 0) == LaurentPoly.const(V, 1)
    assert elementary_symmetric(roots, 1) == _x() + _y()
    assert elementary_symmetric(roots, 2) == _x() * _y()
    assert elementary_symmetric(roots, 3).is_zero()
