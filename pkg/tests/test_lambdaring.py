"""Ring specs, the axiom verifier, augmented rings, quotient carriers."""

from fractions import Fraction

import pytest

from lambdakit.lambdaring import (
    LambdaRingSpec,
    TruncatedPolynomialRing,
    augment,
    binomial_int,
    integers_spec,
    verify_lambda,
)
from lambdakit.reprings import AbelianGroup, GroupRing, rationalized_fiber_spec


def test_binomial_int():
    assert binomial_int(4, 2) == 6
    assert binomial_int(5, 0) == 1
    assert binomial_int(3, 5) == 0
    assert binomial_int(-2, 3) == -4
    assert binomial_int(-1, 4) == 1
    with pytest.raises(ValueError):
        binomial_int(2, -1)


def test_integers_pass_verification():
    spec = integers_spec()
    report = verify_lambda(spec, [-3, -1, 0, 1, 2, 4], k_max=3, l_max=2)
    assert report.passed
    assert report.failures() == []
    axioms = {r.axiom for r in report.records}
    assert len(axioms) == 5


def test_corrupted_evaluator_fails_product_law_with_witness():
    base = integers_spec()

    # corrupt the second operation on 6 only, so the damage surfaces
    # exactly when 6 appears as a product of samples
    def broken(k, n):
        if k == 2 and n == 6:
            return 0
        return base.lam(k, n)

    spec = LambdaRingSpec(name="Zbroken", has_unit=True, lam=broken,
                          zero=0, one=1, eps=None)
    report = verify_lambda(spec, [2, 3], k_max=2)
    assert not report.passed
    product_failures = [r for r in report.failures() if r.axiom.startswith("(d)")]
    assert product_failures
    assert product_failures[0].witness
    assert "instance" not in product_failures[0].witness  # concrete values, not labels


def test_verifier_rejects_out_of_cap_requests():
    with pytest.raises(ValueError, match="cap"):
        verify_lambda(integers_spec(), [1], k_max=5, l_max=2)


def test_report_format_mentions_ring_and_result():
    report = verify_lambda(integers_spec(), [1, 2], k_max=2)
    text = report.format()
    assert text.startswith("ring Z: PASS")
    assert "(d) product law" in text


def test_quotient_ring_line_structure():
    # with 1 + h a line, the operations on h alternate in sign
    ring = TruncatedPolynomialRing("h", 3)
    h = ring.generator()
    assert ring.lam(1, h) == h
    assert ring.lam(2, h) == -h
    assert ring.lam(3, h) == h
    assert ring.lam(2, h * h) == -2 * (h * h)
    assert ring.lam(3, h * h) == 3 * (h * h)
    assert ring.lam(4, h * h) == -4 * (h * h)
    assert ring.lam(0, h) == ring.one


def test_quotient_ring_passes_verification():
    ring = TruncatedPolynomialRing("h", 3)
    h = ring.generator()
    samples = [ring.zero, ring.one, h, h * h, h + ring.one,
               ring.element([Fraction(1, 2), 1])]
    report = verify_lambda(ring.spec(), samples, k_max=3, l_max=2)
    assert report.passed


def test_quotient_ring_eps_and_const():
    ring = TruncatedPolynomialRing("h", 2)
    spec = ring.spec()
    x = ring.element([5, 2])
    assert spec.eps(x) == 5
    assert ring.const(3) == 3
    assert ring.element([1]) == ring.one


def test_augmented_pair_product_formula():
    # (2, a)(3, b) = (6, 2b + 3a) when the fiber squares to zero
    g = GroupRing(AbelianGroup(0, (2,)), name="R(Z/2)")
    m = g.generator(0) - g.one
    fiber = rationalized_fiber_spec(g)
    aug = augment(integers_spec(), fiber, action=lambda n, s: n * s)
    a = aug.pair(2, m)
    b = aug.pair(3, 2 * m)
    prod = a * b
    assert prod.base == 6
    assert prod.fiber == 2 * (2 * m) + 3 * m
    assert aug.one * a == a
    assert a + (-a) == aug.zero


def test_augmented_lambda_two_formula():
    # second operation on a pair: (lam2 r, r s + lam2 s)
    g = GroupRing(AbelianGroup(0, (2,)), name="R(Z/2)")
    m = g.generator(0) - g.one
    fiber = rationalized_fiber_spec(g)
    aug = augment(integers_spec(), fiber, action=lambda n, s: n * s)
    p = aug.pair(3, m)
    v = aug.lam(2, p)
    assert v.base == binomial_int(3, 2)
    assert v.fiber == fiber.lam(2, m) + 3 * m


def test_augmented_ring_passes_verification():
    g = GroupRing(AbelianGroup(0, (2,)), name="R(Z/2)")
    m = g.generator(0) - g.one
    fiber = rationalized_fiber_spec(g)
    aug = augment(integers_spec(), fiber,
                  action=lambda n, s: n * s,
                  base_samples=[0, 1, -2], fiber_samples=[m, 2 * m])
    samples = [aug.zero, aug.one, aug.pair(0, m), aug.pair(1, m),
               aug.pair(-2, Fraction(1, 2) * m)]
    report = verify_lambda(aug.spec(), samples, k_max=4, l_max=2)
    assert report.passed


def test_augment_rejects_non_bilinear_action():
    g = GroupRing(AbelianGroup(0, (2,)), name="R(Z/2)")
    m = g.generator(0) - g.one
    fiber = rationalized_fiber_spec(g)
    with pytest.raises(ValueError, match="not additive in the base slot"):
        augment(integers_spec(), fiber, action=lambda n, s: s,
                base_samples=[1, 2], fiber_samples=[m])


def test_augment_rejects_bad_unit_action():
    g = GroupRing(AbelianGroup(0, (2,)), name="R(Z/2)")
    m = g.generator(0) - g.one
    fiber = rationalized_fiber_spec(g)
    with pytest.raises(ValueError, match="unit"):
        augment(integers_spec(), fiber, action=lambda n, s: 2 * n * s,
                base_samples=[], fiber_samples=[m])


def test_augment_requires_unital_base_and_unit_free_fiber():
    g = GroupRing(AbelianGroup(0, (2,)), name="R(Z/2)")
    fiber = rationalized_fiber_spec(g)
    with pytest.raises(ValueError, match="unit"):
        augment(fiber, fiber, action=lambda r, s: s)


def test_augmented_eps_comes_from_the_base():
    g = GroupRing(AbelianGroup(0, (2,)), name="R(Z/2)")
    m = g.generator(0) - g.one
    fiber = rationalized_fiber_spec(g)
    aug = augment(integers_spec(), fiber, action=lambda n, s: n * s)
    spec = aug.spec()
    assert spec.eps(aug.pair(7, m)) == 7
