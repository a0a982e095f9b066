"""Truncated Witt vectors: ring operations and lambda operations."""

import itertools
import math
from fractions import Fraction

import pytest

from lambdakit.lambdaring import verify_lambda
from lambdakit.reprings import AbelianGroup, GroupRing
from lambdakit.series import TruncSeries
from lambdakit.witt import (
    WittElement,
    _mul_numeric,
    _mul_symbolic,
    from_coeffs,
    witt_add,
    witt_lambda,
    witt_line,
    witt_mul,
    witt_neg,
    witt_one,
    witt_rank,
    witt_spec,
    witt_sub,
    witt_zero,
)


def _lines(slopes, degree):
    acc = witt_zero(degree)
    for a in slopes:
        acc = witt_add(acc, witt_line(a, degree))
    return acc


def test_constant_term_must_be_one():
    with pytest.raises(ValueError, match="constant term must be 1"):
        WittElement(TruncSeries(2, [2, 0, 0]))


def test_addition_of_two_lines():
    u = witt_add(witt_line(2, 4), witt_line(3, 4))
    assert u == from_coeffs([5, 6, 0, 0])


def test_negation_of_one_is_geometric():
    assert witt_neg(witt_one(5)).coeffs == (1, -1, 1, -1, 1, -1)


def test_negation_cancels():
    u = from_coeffs([3, 1, 4, 1, 5])
    assert witt_sub(u, u) == witt_zero(5)
    assert witt_add(u, witt_zero(5)) == u


def test_product_of_lines_is_line_of_product():
    assert witt_mul(witt_line(2, 4), witt_line(3, 4)) == witt_line(6, 4)


def test_multiplicative_unit_and_zero():
    u = from_coeffs([3, 1, 4, 1])
    assert witt_mul(u, witt_one(4)) == u
    assert witt_mul(u, witt_zero(4)) == witt_zero(4)


def test_product_matches_line_expansion():
    u = _lines([1, 2, -1], 6)
    v = _lines([2, 3], 6)
    expected = _lines([a * b for a in [1, 2, -1] for b in [2, 3]], 6)
    assert witt_mul(u, v) == expected
    assert witt_mul(v, u) == expected


def test_product_is_associative_on_lines():
    u, v, w = _lines([1, 2], 6), _lines([3], 6), _lines([-1, 2], 6)
    assert witt_mul(witt_mul(u, v), w) == witt_mul(u, witt_mul(v, w))


def test_numeric_and_symbolic_products_agree():
    pairs = [
        (from_coeffs([1, 2, 3, 4]), from_coeffs([2, 0, -1, 5])),
        (_lines([2, -3], 4), _lines([1, 1], 4)),
    ]
    for u, v in pairs:
        assert _mul_numeric(u, v) == _mul_symbolic(u, v)


def test_symbolic_product_over_group_ring():
    ring = GroupRing(AbelianGroup(0, (2,)))
    g = ring.generator(0)
    u = from_coeffs([g, ring.zero, ring.zero])
    assert witt_mul(u, u) == from_coeffs([ring.one, ring.zero, ring.zero])


def test_degree_mismatch_is_rejected():
    with pytest.raises(ValueError, match="truncation degrees differ: 3 vs 4"):
        witt_add(witt_one(3), witt_one(4))
    with pytest.raises(ValueError, match="truncation degrees differ"):
        witt_mul(witt_one(3), witt_one(4))


def test_lambda_small_indices():
    u = from_coeffs([3, 1, 4])
    assert witt_lambda(0, u) == witt_one(3)
    assert witt_lambda(1, u) == u
    with pytest.raises(ValueError, match="must be >= 0"):
        witt_lambda(-1, u)


def test_lambda_matches_subset_products():
    cases = [(2,), (1, 2), (2, -1, 3), (1, 1, 2, -2)]
    for slopes in cases:
        u = _lines(slopes, 8)
        for k in range(2, 4):
            expected = _lines(
                [math.prod(s) for s in itertools.combinations(slopes, k)], 8)
            assert witt_lambda(k, u) == expected


def test_lambda_kills_the_unit():
    for k in range(2, 5):
        assert witt_lambda(k, witt_one(6)) == witt_zero(6)
        assert witt_lambda(k, witt_zero(6)) == witt_zero(6)


def test_lambda_preserves_integrality():
    u = from_coeffs([3, -2, 5, 7, 0, 1])
    v = witt_lambda(3, u)
    assert all(isinstance(c, int) for c in v.coeffs)


def test_lambda_with_rational_slopes():
    u = _lines([Fraction(1, 2), Fraction(1, 3)], 4)
    assert witt_lambda(2, u) == witt_line(Fraction(1, 6), 4)


def test_lambda_needs_numeric_coefficients():
    ring = GroupRing(AbelianGroup(0, (2,)))
    u = from_coeffs([ring.generator(0), ring.zero])
    with pytest.raises(ValueError, match="numeric coefficients"):
        witt_lambda(2, u)


def test_rank_is_a_ring_map():
    u, v = _lines([2, 3], 5), _lines([-1, 4], 5)
    assert witt_rank(u) == 5
    assert witt_rank(witt_add(u, v)) == witt_rank(u) + witt_rank(v)
    assert witt_rank(witt_mul(u, v)) == witt_rank(u) * witt_rank(v)


def test_scalar_multiples_and_powers():
    line = witt_line(2, 5)
    assert 3 * line == _lines([2, 2, 2], 5)
    assert -1 * line == witt_neg(line)
    assert line ** 2 == witt_line(4, 5)
    assert line ** 0 == witt_one(5)


def test_repr_layout():
    assert repr(from_coeffs([2, 0, -1])) == "1 + 2*t - t^3"
    assert repr(witt_zero(2)) == "1"


def test_verification_on_bounded_line_sums():
    spec = witt_spec(5)
    samples = [
        witt_zero(5), witt_one(5), witt_line(2, 5),
        _lines([-1, 3], 5), _lines([2, 2], 5),
    ]
    report = verify_lambda(spec, samples, k_max=2, l_max=2)
    assert report.passed, report.format()
