"""Gamma operations, Adams operations, filtration, and eigenspaces."""

import dataclasses
from fractions import Fraction

import pytest

from lambdakit.gamma import (
    EigenComponent,
    FilteredAlgebra,
    absolute_cohomology,
    adams,
    adams_eigenspace,
    chern_class,
    filtration_table,
    from_spec,
    gamma,
    gamma_filtration,
    graded_dimension,
    rational_group_algebra,
    truncated_polynomial_algebra,
    zero_product_fiber_algebra,
)
from lambdakit.lambdaring import (
    TruncatedPolynomialRing,
    augment,
    integers_spec,
)
from lambdakit.reprings import AbelianGroup, GroupRing, rationalized_fiber_spec


def _z2_ring():
    return GroupRing(AbelianGroup(0, (2,)))


def test_gamma_on_integers_is_binomial():
    spec = integers_spec()
    for m in range(-3, 4):
        for k in range(0, 5):
            expected = 1
            for i in range(k):
                expected = expected * (m + k - 1 - i) // (i + 1)
            assert gamma(spec, k, m) == expected


def test_gamma_index_zero_gives_unit():
    assert gamma(integers_spec(), 0, 7) == 1


def test_gamma_rejects_negative_index():
    with pytest.raises(ValueError, match="must be >= 0"):
        gamma(integers_spec(), -1, 3)


def test_gamma_index_zero_without_unit_fails():
    ring = _z2_ring()
    fiber = rationalized_fiber_spec(ring)
    m = ring.generator(0) - ring.one
    with pytest.raises(ValueError, match="needs a unit"):
        gamma(fiber, 0, m)


def test_gamma_kills_reduced_line():
    # sigma - 1 has gamma degree one: all higher gamma values vanish
    ring = _z2_ring()
    spec = ring.spec()
    m = ring.generator(0) - ring.one
    assert gamma(spec, 1, m) == m
    for i in range(2, 6):
        assert gamma(spec, i, m) == ring.zero


def test_adams_recursion_on_integers_is_identity():
    spec = integers_spec()
    for m in range(-4, 5):
        for k in range(1, 6):
            assert adams(spec, k, m) == m


def test_adams_recursion_matches_power_map_on_group_ring():
    ring = GroupRing(AbelianGroup(0, (3,)))
    spec = ring.spec()
    g = ring.generator(0)
    samples = [g - ring.one, 2 * g + ring.const(3), g * g - g]
    for x in samples:
        for k in range(1, 6):
            assert adams(spec, k, x) == ring.adams(k, x)


def test_adams_frozen_values_on_order_two_line():
    ring = _z2_ring()
    spec = ring.spec()
    m = ring.generator(0) - ring.one
    assert adams(spec, 2, m) == ring.zero
    assert adams(spec, 3, m) == m


def test_adams_rejects_index_zero():
    with pytest.raises(ValueError, match="must be >= 1"):
        adams(integers_spec(), 0, 3)


def test_adams_on_truncated_polynomials():
    ring = TruncatedPolynomialRing("h", 3)
    h = ring.generator()
    spec = ring.spec()
    assert adams(spec, 2, h) == 2 * h + h * h
    assert adams(spec, 2, h * h) == 4 * (h * h)


# ---------------------------------------------------------------------------
# filtration


def test_filtration_of_order_two_group_algebra():
    algebra = rational_group_algebra(_z2_ring())
    gamma_filtration(algebra, 4)
    f = algebra.filtration
    assert [len(stage) for stage in f] == [2, 1, 1, 1, 1]
    # stages one through four are all exactly the span of sigma - 1
    assert f[1] == [(Fraction(1), Fraction(-1))]
    assert f[1] == f[2] == f[3] == f[4]
    assert graded_dimension(algebra, 0) == 1
    assert graded_dimension(algebra, 1) == 0


def test_filtration_of_truncated_polynomials():
    ring = TruncatedPolynomialRing("h", 3)
    algebra = truncated_polynomial_algebra(ring)
    gamma_filtration(algebra, 3)
    assert [len(stage) for stage in algebra.filtration] == [3, 2, 1, 0]
    assert [graded_dimension(algebra, j) for j in range(3)] == [1, 1, 1]


def test_filtration_stages_are_nested_ideals():
    ring = TruncatedPolynomialRing("h", 3)
    algebra = truncated_polynomial_algebra(ring)
    gamma_filtration(algebra, 3)
    from lambdakit.intmat import in_span

    f = algebra.filtration
    for m in range(3):
        for v in f[m + 1]:
            assert in_span(v, f[m])
    # products land at the summed stage
    for m1 in range(4):
        for m2 in range(4 - m1):
            for v in f[m1]:
                for w in f[m2]:
                    prod = algebra.mul(algebra.from_coords(v),
                                       algebra.from_coords(w))
                    assert in_span(algebra.coords(prod), f[m1 + m2])


def test_filtration_needs_rank_map():
    ring = TruncatedPolynomialRing("h", 3)
    algebra = dataclasses.replace(truncated_polynomial_algebra(ring), eps=None)
    with pytest.raises(ValueError, match="no rank map"):
        gamma_filtration(algebra, 2)


def test_filtration_of_zero_product_fiber():
    ring = _z2_ring()
    algebra = zero_product_fiber_algebra(
        ring, rationalized_fiber_spec(ring), degree_label=1)
    gamma_filtration(algebra, 3)
    # gamma values are nonzero multiples of sigma - 1 at every index and
    # products vanish, so every stage is the full line
    assert [len(stage) for stage in algebra.filtration] == [1, 1, 1, 1]


def test_fiber_lambda_frozen_value():
    ring = _z2_ring()
    fiber = rationalized_fiber_spec(ring)
    m = ring.generator(0) - ring.one
    assert fiber.lam(3, m) == Fraction(1, 3) * m


def test_filtration_table_layout():
    ring = TruncatedPolynomialRing("h", 3)
    algebra = truncated_polynomial_algebra(ring)
    gamma_filtration(algebra, 3)
    lines = filtration_table(algebra).splitlines()
    assert len(lines) == 5
    assert lines[0].split() == ["m", "dim", "F^m", "dim", "gr^m"]
    assert lines[1].split() == ["0", "3", "1"]
    assert lines[4].split() == ["3", "0", "-"]


def test_graded_dimension_requires_population():
    ring = TruncatedPolynomialRing("h", 3)
    algebra = truncated_polynomial_algebra(ring)
    with pytest.raises(ValueError, match="not populated"):
        graded_dimension(algebra, 0)


# ---------------------------------------------------------------------------
# graded pieces of a family


def test_absolute_cohomology_slot_and_weight():
    family = {0: rational_group_algebra(_z2_ring())}
    piece = absolute_cohomology(family, 0, 0)
    assert piece.slot == 0 and piece.weight == 0
    assert piece.dimension == 1
    assert len(piece.representatives) == 1


def test_absolute_cohomology_missing_slot():
    family = {0: rational_group_algebra(_z2_ring())}
    with pytest.raises(ValueError, match="π_3 not modeled"):
        absolute_cohomology(family, 1, 2)


def test_absolute_cohomology_negative_weight_vanishes():
    family = {0: rational_group_algebra(_z2_ring())}
    piece = absolute_cohomology(family, -2, -1)
    assert piece.dimension == 0


def test_absolute_cohomology_positive_slot():
    ring = _z2_ring()
    family = {
        0: rational_group_algebra(ring),
        1: zero_product_fiber_algebra(
            ring, rationalized_fiber_spec(ring), degree_label=1),
    }
    piece = absolute_cohomology(family, 1, 1)
    assert piece.slot == 1
    # the fiber line sits in every stage, so each graded piece vanishes
    assert piece.dimension == 0


# ---------------------------------------------------------------------------
# classes in an augmented ring


def _augmented_z2():
    ring = _z2_ring()
    fiber = rationalized_fiber_spec(ring)
    sigma = ring.generator(0)
    m = sigma - ring.one
    return ring, augment(
        ring.spec(), fiber,
        action=lambda r, s: ring.eps(r) * s,
        base_samples=(sigma, m), fiber_samples=(m, 2 * m))


def test_chern_class_weight_zero_is_unit():
    ring, aug = _augmented_z2()
    assert chern_class(aug, 0, 0, ring.generator(0), ring.zero) == aug.one


def test_chern_class_weight_one_normalizes_rank():
    ring, aug = _augmented_z2()
    sigma = ring.generator(0)
    m = sigma - ring.one
    c = chern_class(aug, 2, 1, sigma, m)
    assert c == aug.pair(m, m)


def test_chern_class_of_line_vanishes_above_weight_one():
    ring, aug = _augmented_z2()
    sigma = ring.generator(0)
    for j in (2, 3):
        assert chern_class(aug, 2 * j, j, sigma, ring.zero) == aug.zero


def test_chern_class_lands_in_rank_zero_part():
    ring, aug = _augmented_z2()
    spec = aug.spec()
    c = chern_class(aug, 4, 2, 2 * ring.generator(0), ring.zero)
    assert spec.eps(c) == 0


# ---------------------------------------------------------------------------
# eigenspace decomposition


def test_adams_eigenspace_splits_generator():
    ring = TruncatedPolynomialRing("h", 3)
    algebra = truncated_polynomial_algebra(ring)
    h = ring.generator()
    parts = adams_eigenspace(algebra, h, 2)
    assert [p.weight for p in parts] == [1, 2]
    assert parts[0].vector == (0, Fraction(1), Fraction(-1, 2))
    assert parts[1].vector == (0, 0, Fraction(1, 2))


def test_adams_eigenspace_unit_has_weight_zero():
    ring = TruncatedPolynomialRing("h", 3)
    algebra = truncated_polynomial_algebra(ring)
    parts = adams_eigenspace(algebra, ring.const(1), 2)
    assert [p.weight for p in parts] == [0]


def test_adams_eigenspace_components_are_annihilated():
    ring = TruncatedPolynomialRing("h", 3)
    algebra = truncated_polynomial_algebra(ring)
    spec = ring.spec()
    x = ring.generator() + 2 * ring.generator() ** 2
    for part in adams_eigenspace(algebra, x, 2):
        elem = algebra.from_coords(part.vector)
        shifted = adams(spec, 2, elem) + (-(2 ** part.weight)) * elem
        assert shifted == ring.const(0)


def test_adams_eigenspace_on_group_algebra():
    algebra = rational_group_algebra(_z2_ring())
    x = algebra.basis[0] + algebra.basis[1]
    parts = adams_eigenspace(algebra, x, 3)
    total = [sum(p.vector[i] for p in parts) for i in range(2)]
    assert tuple(total) == algebra.coords(x)


def test_adams_eigenspace_reports_unexpected_eigenvalue():
    ring = TruncatedPolynomialRing("h", 3)
    base = truncated_polynomial_algebra(ring)
    h = ring.generator()

    def broken(k, x):
        if k == 2 and x == h:
            return h  # wrong on the generator only
        return ring.lam(k, x)

    algebra = dataclasses.replace(base, lam=broken)
    with pytest.raises(ValueError, match="unexpected eigenvalue"):
        adams_eigenspace(algebra, h, 2)


def test_adams_eigenspace_rejects_small_index():
    ring = TruncatedPolynomialRing("h", 3)
    algebra = truncated_polynomial_algebra(ring)
    with pytest.raises(ValueError, match="needs k >= 2"):
        adams_eigenspace(algebra, ring.generator(), 1)
