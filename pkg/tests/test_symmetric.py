"""Decomposition into elementary symmetric polynomials, per variable block."""

import random

import pytest

from lambdakit.poly import LaurentPoly, elementary_symmetric
from lambdakit.symmetric import check_block_symmetry, decompose_symmetric, expand_elementary

XY = ("x", "y")
E = ("e1", "e2")


def _x():
    return LaurentPoly.var(XY, "x")


def _y():
    return LaurentPoly.var(XY, "y")


def test_power_sums_in_two_variables():
    blocks = {"e": ["x", "y"]}
    e1 = LaurentPoly.var(E, "e1")
    e2 = LaurentPoly.var(E, "e2")
    assert decompose_symmetric(_x() + _y(), blocks) == e1
    assert decompose_symmetric(_x() ** 2 + _y() ** 2, blocks) == e1 ** 2 - 2 * e2
    assert decompose_symmetric(_x() ** 3 + _y() ** 3, blocks) == e1 ** 3 - 3 * e1 * e2


def test_constant_and_zero():
    blocks = {"e": ["x", "y"]}
    assert decompose_symmetric(LaurentPoly.const(XY, 7), blocks) == LaurentPoly.const(E, 7)
    assert decompose_symmetric(LaurentPoly.zero(XY), blocks) == LaurentPoly.zero(E)


def test_not_symmetric_reports_the_swap():
    with pytest.raises(ValueError, match="not symmetric under swapping x and y"):
        decompose_symmetric(_x() ** 2 + _y(), {"e": ["x", "y"]})


def test_blocks_must_partition():
    with pytest.raises(ValueError, match="partition"):
        decompose_symmetric(_x() + _y(), {"e": ["x"]})


def test_two_blocks():
    v = ("x1", "x2", "y1", "y2")
    xs = [LaurentPoly.var(v, n) for n in ("x1", "x2")]
    ys = [LaurentPoly.var(v, n) for n in ("y1", "y2")]
    p = sum((a * b for a in xs for b in ys), LaurentPoly.zero(v))
    q = decompose_symmetric(p, {"e": ["x1", "x2"], "f": ["y1", "y2"]})
    ev = ("e1", "e2", "f1", "f2")
    assert q == LaurentPoly.var(ev, "e1") * LaurentPoly.var(ev, "f1")


def test_laurent_input_shifts_through_the_top_function():
    blocks = {"e": ["x", "y"]}
    p = _x() * _y() ** -1 + _x() ** -1 * _y()
    q = decompose_symmetric(p, blocks)
    e1 = LaurentPoly.var(E, "e1")
    e2 = LaurentPoly.var(E, "e2")
    assert q == e1 ** 2 * e2 ** -1 - 2
    inv = decompose_symmetric((_x() * _y()) ** -1, blocks)
    assert inv == e2 ** -1


def test_round_trip_on_symmetrized_random_polynomials():
    rng = random.Random(7)
    v = ("x1", "x2", "x3")
    blocks = {"e": ["x1", "x2", "x3"]}
    perms = [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]
    for _ in range(5):
        terms = {}
        for _ in range(4):
            exps = tuple(rng.randrange(0, 3) for _ in range(3))
            c = rng.randrange(-4, 5)
            for pi in perms:
                key = tuple(exps[pi[i]] for i in range(3))
                terms[key] = c
        p = LaurentPoly(v, terms)
        check_block_symmetry(p, blocks)
        q = decompose_symmetric(p, blocks)
        assert expand_elementary(q, blocks, v) == p


def test_expand_elementary_matches_generators():
    v = ("x1", "x2")
    roots = [LaurentPoly.var(v, n) for n in v]
    q = LaurentPoly.var(E, "e2")
    assert expand_elementary(q, {"e": ["x1", "x2"]}, v) == elementary_symmetric(roots, 2)
