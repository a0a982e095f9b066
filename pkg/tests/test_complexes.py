"""Complexes: validation, homology, quasi-isomorphisms, file format."""

import random

import pytest

from lambdakit.complexes import (
    ChainComplex,
    check_chain_map,
    conjugate,
    disc_complex,
    euler_char,
    format_complex,
    homology,
    homology_report,
    is_acyclic,
    mapping_cone,
    parse_complex,
    point_complex,
    quasi_iso_check,
    random_complex,
    random_unimodular,
    tensor_complex,
    tensor_summands,
)
from lambdakit.intmat import IntMatrix


def _identity_map(k):
    return {n: IntMatrix.identity(k.rank(n)) for n in k.degrees()}


def test_differential_square_must_vanish():
    with pytest.raises(ValueError, match="d.d is nonzero at degree 0"):
        ChainComplex(0, 2, {0: 1, 1: 1, 2: 1},
                     {0: IntMatrix([[1]]), 1: IntMatrix([[1]])})


def test_differential_shape_is_checked():
    with pytest.raises(ValueError, match="expected 2x1"):
        ChainComplex(0, 1, {0: 1, 1: 2}, {0: IntMatrix([[1]])})


def test_negative_rank_rejected():
    with pytest.raises(ValueError, match="negative rank"):
        ChainComplex(0, 0, {0: -1})


def test_homology_of_multiplication_by_two():
    k = ChainComplex(-1, 0, {-1: 1, 0: 1}, {-1: IntMatrix([[2]])})
    assert homology(k) == {-1: (0, ()), 0: (0, (2,))}
    assert homology_report(k) == "H_-1 = 0\nH_0 = Z/2"


def test_homology_of_sphere_and_disc():
    assert homology(point_complex(2)) == {0: (2, ())}
    assert homology_report(point_complex(2)) == "H_0 = Z^2"
    assert is_acyclic(disc_complex(0, 1))
    assert not is_acyclic(disc_complex(0, 2))


def test_homology_with_two_torsion_factors():
    k = ChainComplex(0, 1, {0: 2, 1: 2}, {0: IntMatrix([[2, 4], [6, 8]])})
    assert homology(k) == {0: (0, ()), 1: (0, (2, 4))}
    assert homology_report(k) == "H_0 = 0\nH_1 = Z/2 + Z/4"


def test_euler_characteristic():
    k = ChainComplex(0, 1, {0: 2, 1: 3})
    assert euler_char(k) == -1
    assert euler_char(point_complex(1).shift(1)) == -1
    assert euler_char(k.direct_sum(point_complex(4))) == 3


def test_shift_moves_support_and_signs():
    k = disc_complex(0, 3)
    shifted = k.shift(1)
    assert (shifted.lo, shifted.hi) == (-1, 0)
    assert shifted.diff(-1) == IntMatrix([[-3]])
    assert homology(shifted)[0] == (0, (3,))


def test_direct_sum_is_blockwise():
    k = disc_complex(0, 2).direct_sum(point_complex(1, 0))
    assert k.rank(0) == 2 and k.rank(1) == 1
    assert k.diff(0) == IntMatrix([[2, 0]])


def test_chain_map_square_check():
    k = disc_complex(0, 2)
    with pytest.raises(ValueError, match="square at degree 0"):
        check_chain_map(k, k, {0: IntMatrix([[1]]), 1: IntMatrix([[3]])})
    with pytest.raises(ValueError, match="expected 1x1"):
        check_chain_map(k, k, {0: IntMatrix([[1, 0]])})


def test_quasi_iso_identity():
    rng = random.Random(3)
    k = random_complex(rng, -1, 1)
    assert quasi_iso_check(k, k, _identity_map(k))


def test_quasi_iso_inclusion_with_acyclic_summand():
    rng = random.Random(4)
    base = random_complex(rng, -1, 1)
    big = base.direct_sum(disc_complex(-1, 1))
    mats = {n: IntMatrix(
        [[1 if i == j else 0 for j in range(base.rank(n))]
         for i in range(big.rank(n))],
        rows=big.rank(n), cols=base.rank(n)) for n in base.degrees()}
    assert quasi_iso_check(base, big, mats)


def test_quasi_iso_detects_non_invertible_induced_map():
    # doubling on a rank-one complex matches homology shapes but is not
    # an isomorphism on H^0
    k = point_complex(1)
    assert not quasi_iso_check(k, k, {0: IntMatrix([[2]])})


def test_quasi_iso_distinguishes_torsion():
    a = ChainComplex(-1, 0, {-1: 1, 0: 1}, {-1: IntMatrix([[2]])})
    b = ChainComplex(-1, 0, {-1: 1, 0: 1}, {-1: IntMatrix([[4]])})
    assert not quasi_iso_check(a, b, {-1: IntMatrix([[1]]), 0: IntMatrix([[2]])})


def test_cone_of_identity_is_acyclic():
    rng = random.Random(5)
    k = random_complex(rng, 0, 2)
    assert is_acyclic(mapping_cone(k, k, _identity_map(k)))


def test_format_round_trip():
    rng = random.Random(6)
    for _ in range(10):
        k = random_complex(rng, -2, 1)
        assert parse_complex(format_complex(k)) == k


def test_format_golden():
    k = ChainComplex(0, 1, {0: 2, 1: 1}, {0: IntMatrix([[3, -1]])})
    assert format_complex(k) == (
        "degrees 0..1\nrank 2\nrank 1\nd 0\n3 -1\n")


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ValueError, match="line 1: expected 'degrees"):
        parse_complex("degs 0..1\n")
    with pytest.raises(ValueError, match="line 3: expected 'rank"):
        parse_complex("degrees 0..1\nrank 1\nrnk 1\n")
    with pytest.raises(ValueError, match="line 4: expected 'd 0'"):
        parse_complex("degrees 0..1\nrank 1\nrank 1\nd 1\n1\n")
    with pytest.raises(ValueError, match="line 5: expected 2 entries"):
        parse_complex("degrees 0..1\nrank 2\nrank 1\nd 0\n1 2 3\n")
    with pytest.raises(ValueError, match="unexpected end of input"):
        parse_complex("degrees 0..1\nrank 1\nrank 1\nd 0\n")


def test_random_unimodular_inverse():
    rng = random.Random(7)
    for n in range(1, 4):
        fwd, inv = random_unimodular(rng, n)
        assert fwd * inv == IntMatrix.identity(n)
        assert fwd.det() in (1, -1)


def test_conjugation_preserves_homology():
    rng = random.Random(8)
    for _ in range(5):
        k = random_complex(rng, -1, 1)
        bases = {n: random_unimodular(rng, k.rank(n)) for n in k.degrees()}
        kk = conjugate(k, bases)
        assert homology(kk) == homology(k)
        assert quasi_iso_check(k, kk, {n: bases[n][0] for n in k.degrees()})

def test_tensor_with_point_is_identity():
    rng = random.Random(31)
    pt = point_complex(1, 0)
    for _ in range(5):
        k = random_complex(rng, -2, 2)
        assert tensor_complex(pt, k) == k


def test_tensor_euler_characteristic_is_multiplicative():
    rng = random.Random(32)
    for _ in range(10):
        a = random_complex(rng, -2, 1)
        b = random_complex(rng, -1, 2)
        t = tensor_complex(a, b)
        assert euler_char(t) == euler_char(a) * euler_char(b)


def test_tensor_homology_free_case():
    t = tensor_complex(point_complex(2, 1), point_complex(3, -1))
    assert homology(t) == {0: (6, ())}


def test_tensor_summand_offsets():
    a = point_complex(2, 0)
    b = ChainComplex(0, 1, {0: 1, 1: 3})
    assert tensor_summands(a, b, 1) == [(0, 1, 0)]
    assert tensor_summands(a, b, 0) == [(0, 0, 0)]
