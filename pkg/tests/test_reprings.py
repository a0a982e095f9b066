"""Group rings, Weyl invariants, tensor rings, monoid classes."""

from fractions import Fraction

import pytest

from lambdakit.intmat import IntMatrix
from lambdakit.lambdaring import TruncatedPolynomialRing, verify_lambda
from lambdakit.poly import LaurentPoly
from lambdakit.reprings import (
    AbelianGroup,
    GroupRing,
    MonoidRepRing,
    TensorRing,
    WeylAction,
    group_ring_lambda,
    rationalized_fiber_spec,
    spans_match,
    weyl_invariants,
)


def test_abelian_group_validation():
    with pytest.raises(ValueError, match=">= 2"):
        AbelianGroup(0, (1,))
    with pytest.raises(ValueError, match="divisibility"):
        AbelianGroup(0, (3, 2))
    AbelianGroup(1, (2, 4))


def test_abelian_group_arithmetic():
    g = AbelianGroup(1, (2,))
    assert g.reduce((3, 5)) == (3, 1)
    assert g.add((1, 1), (2, 1)) == (3, 0)
    assert g.neg((2, 1)) == (-2, 1)
    assert g.scale((1, 1), 3) == (3, 1)
    assert g.identity() == (0, 0)


def test_abelian_group_enumeration():
    assert len(AbelianGroup(0, (2, 2)).elements()) == 4
    with pytest.raises(ValueError, match="infinite"):
        AbelianGroup(1).elements()


def test_group_ring_arithmetic():
    ring = GroupRing(AbelianGroup(0, (2,)))
    sigma = ring.generator(0)
    m = sigma - ring.one
    assert sigma * sigma == ring.one
    assert m * m == -2 * m
    assert (m + m) == 2 * m
    assert m - m == ring.zero
    assert Fraction(1, 2) * (2 * m) == m


def test_group_ring_monomial_inverse():
    ring = GroupRing(AbelianGroup(1))
    t = ring.generator(0)
    assert t ** -1 * t == ring.one
    with pytest.raises(ValueError, match="invert"):
        (t + ring.one) ** -1


def test_lines_have_trivial_higher_operations():
    ring = GroupRing(AbelianGroup(1))
    t = ring.generator(0)
    assert group_ring_lambda(0, t) == ring.one
    assert group_ring_lambda(1, t) == t
    for k in (2, 3, 4):
        assert group_ring_lambda(k, t) == ring.zero


def test_lambda_of_sum_and_multiple_of_lines():
    ring = GroupRing(AbelianGroup(2))
    a = ring.generator(0)
    b = ring.generator(1)
    assert group_ring_lambda(2, a + b) == a * b
    assert group_ring_lambda(2, 2 * a) == a * a
    assert group_ring_lambda(2, -a) == a * a
    assert group_ring_lambda(3, a + b) == ring.zero


def test_lambda_of_augmentation_generator():
    ring = GroupRing(AbelianGroup(0, (2,)))
    m = ring.generator(0) - ring.one
    for k in range(1, 6):
        expect = m if k % 2 == 1 else -m
        assert group_ring_lambda(k, m) == expect


def test_group_ring_passes_verification():
    ring = GroupRing(AbelianGroup(0, (3,)), name="R(Z/3)")
    g = ring.generator(0)
    samples = [ring.zero, ring.one, g, g * g, g - ring.one, 2 * g + ring.one]
    report = verify_lambda(ring.spec(), samples, k_max=3, l_max=2)
    assert report.passed


def test_power_map():
    ring = GroupRing(AbelianGroup(0, (2,)))
    sigma = ring.generator(0)
    m = sigma - ring.one
    assert ring.adams(2, m) == ring.zero
    assert ring.adams(3, m) == m
    assert ring.adams(2, sigma + sigma) == 2 * ring.one


def test_rationalized_fiber_operations():
    ring = GroupRing(AbelianGroup(0, (2,)))
    m = ring.generator(0) - ring.one
    fiber = rationalized_fiber_spec(ring)
    assert fiber.lam(1, m) == m
    assert fiber.lam(2, m) == ring.zero
    assert fiber.lam(3, m) == Fraction(1, 3) * m
    assert not fiber.has_unit
    with pytest.raises(ValueError, match="without unit"):
        fiber.lam(0, m)


def test_weyl_action_swap_closure():
    ring = GroupRing(AbelianGroup(2))
    swap = IntMatrix([[0, 1], [1, 0]])
    action = WeylAction(ring, [swap])
    assert len(action.elements) == 2
    t1, t2 = ring.generator(0), ring.generator(1)
    assert action.act(swap, t1) == t2
    assert action.is_invariant(t1 + t2)
    assert not action.is_invariant(t1)
    assert action.orbit_sum((1, 0)) == t1 + t2
    assert action.orbit_sum((1, 1)) == t1 * t2


def test_weyl_action_validation():
    ring = GroupRing(AbelianGroup(2))
    with pytest.raises(ValueError, match="invertible"):
        WeylAction(ring, [IntMatrix([[2, 0], [0, 1]])])
    mixed = GroupRing(AbelianGroup(1, (2,)))
    with pytest.raises(ValueError, match="free part"):
        WeylAction(mixed, [IntMatrix([[0, 1], [1, 0]])])


def test_weyl_action_cap():
    ring = GroupRing(AbelianGroup(2))
    shear = IntMatrix([[1, 1], [0, 1]])
    with pytest.raises(ValueError, match="cap"):
        WeylAction(ring, [shear])


def test_weyl_invariants_small():
    ring = GroupRing(AbelianGroup(1))
    action = WeylAction(ring, [])
    inv = weyl_invariants(action, 1)
    t = ring.generator(0)
    assert inv == [t ** -1, ring.one, t]


def test_spans_match():
    ring = GroupRing(AbelianGroup(0, (2,)))
    sigma = ring.generator(0)
    assert spans_match([sigma - ring.one, ring.one], [ring.one, sigma])
    assert not spans_match([sigma - ring.one], [sigma + ring.one])
    assert spans_match([], [ring.zero])


def test_tensor_ring_lines_and_coefficients():
    base = GroupRing(AbelianGroup(0, (2,)), name="R(Z/2)")
    coeff = TruncatedPolynomialRing("h", 2)
    tensor = TensorRing(base, coeff.spec())
    g = tensor.monomial((1,), coeff.one)
    h = tensor.monomial((0,), coeff.generator())
    assert tensor.lam(2, g) == tensor.zero
    assert tensor.lam(1, h) == h
    assert tensor.lam(2, h) == -h
    assert g * g == tensor.one
    assert tensor.eps(tensor.one) == 1


def test_tensor_ring_passes_verification_lightly():
    base = GroupRing(AbelianGroup(0, (2,)), name="R(Z/2)")
    coeff = TruncatedPolynomialRing("h", 2)
    tensor = TensorRing(base, coeff.spec())
    g = tensor.monomial((1,), coeff.one)
    h = tensor.monomial((0,), coeff.generator())
    samples = [tensor.zero, tensor.one, g, h, g + h]
    report = verify_lambda(tensor.spec(), samples, k_max=2, l_max=2)
    assert report.passed


def test_monoid_ring_basis_count():
    ring = MonoidRepRing(2)
    names = []
    for p in ring.basis(2):
        (exps, c), = p.terms.items()
        names.append(exps)
    assert len(names) == 8
    # weight-graded: 1; a1, b1; a1^2, a1 b1, b1^2, a2, b2
    weights = {"a1": 1, "a2": 2, "b1": 1, "b2": 2}
    for p in ring.basis(2):
        assert p.weight(weights) <= 2


def test_monoid_ring_lambda_of_standard_class():
    ring = MonoidRepRing(2)
    a1 = LaurentPoly.var(ring.variables, "a1")
    a2 = LaurentPoly.var(ring.variables, "a2")
    assert ring.lam(1, a1) == a1
    assert ring.lam(2, a1) == a2
    assert ring.lam(3, a1) == ring.zero
    assert ring.lam(0, a1) == ring.one


def test_monoid_ring_substitution_on_standard_class():
    ring = MonoidRepRing(2)
    target = GroupRing(AbelianGroup(4))
    t = [target.generator(i) for i in range(4)]
    u, v = t[0] + t[1], t[2] + t[3]
    a_images = [u, t[0] * t[1]]
    b_images = [v, t[2] * t[3]]
    a1 = LaurentPoly.var(ring.variables, "a1")
    image = ring.substitute_classes(a1, a_images, b_images, target.one)
    assert image == u
    lam2 = ring.substitute_classes(ring.lam(2, a1), a_images, b_images, target.one)
    assert lam2 == group_ring_lambda(2, u)
