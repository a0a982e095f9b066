import random

import pytest

from lambdakit.complexes import (
    ChainComplex, homology, is_acyclic, random_complex, random_unimodular,
    tensor_complex,
)
from lambdakit.doldkan import (
    CosimplicialModule, DoubleComplex, MixedObject, SimplicialModule,
    _normal_inclusion_h, aw_map, constant_mixed, constant_simplicial,
    denormalize_h, denormalize_v, dold_kan_iso, embed_i, ez_map,
    normalize_h, normalize_mixed, normalize_v, tot, tot_summands,
)
from lambdakit.intmat import (
    IntMatrix, hermite_columns, kernel_basis, solve_columns,
)


def conjugated(x: SimplicialModule, rng: random.Random) -> SimplicialModule:
    """Scramble every level by its own unimodular change of basis."""
    us = [random_unimodular(rng, x.rank(n)) for n in range(x.top + 1)]
    faces = {(n, i): us[n - 1][0] * x.face(n, i) * us[n][1]
             for n in range(1, x.top + 1) for i in range(n + 1)}
    degens = {(n, j): us[n + 1][0] * x.degen(n, j) * us[n][1]
              for n in range(x.top) for j in range(n + 1)}
    return SimplicialModule(x.ranks, faces, degens)


def test_constant_module_normalizes_to_single_degree():
    x = constant_simplicial(2, 3)
    assert x.ranks == (2, 2, 2, 2)
    c = normalize_h(x)
    assert c.rank(0) == 2
    assert all(c.rank(n) == 0 for n in range(-3, 0))


def test_denormalize_point_in_negative_degree():
    c = ChainComplex(-1, -1, {-1: 1})
    x = denormalize_h(c, levels=3)
    assert x.ranks == (0, 1, 2, 3)


def test_denormalize_two_term_hand_example():
    k = ChainComplex(-1, 0, {-1: 1, 0: 1}, {-1: IntMatrix([[-3]])})
    x = denormalize_h(k)
    assert x.ranks == (1, 2)
    assert x.face(1, 0) == IntMatrix([[1, 0]])
    assert x.face(1, 1) == IntMatrix([[1, 3]])
    assert x.degen(0, 0) == IntMatrix([[1], [0]])
    assert normalize_h(x) == k


def test_normalize_denormalize_roundtrip_seeded():
    rng = random.Random(7)
    for _ in range(30):
        c = random_complex(rng, -3, 0, max_summands=2)
        assert normalize_h(denormalize_h(c)) == c


def test_normalized_part_equals_iterated_face_kernels():
    rng = random.Random(19)
    for _ in range(6):
        c = random_complex(rng, -3, 0, max_summands=2)
        x = conjugated(denormalize_h(c), rng)
        for n in range(1, x.top + 1):
            stacked = [[x.face(n, i)[r, s] for s in range(x.rank(n))]
                       for i in range(n) for r in range(x.rank(n - 1))]
            mat = IntMatrix(stacked, rows=n and len(stacked),
                            cols=x.rank(n))
            assert hermite_columns(kernel_basis(mat)) == \
                _normal_inclusion_h(x, n)


def test_dold_kan_comparison_is_checked_isomorphism():
    rng = random.Random(101)
    for _ in range(6):
        c = random_complex(rng, -2, 0, max_summands=2)
        x = conjugated(denormalize_h(c), rng)
        iso = dold_kan_iso(x)
        assert sorted(iso) == list(range(x.top + 1))
        for n, phi in iso.items():
            assert abs(phi.det()) == 1 or phi.rows == 0


def test_simplicial_identity_violation_is_named():
    c = ChainComplex(-2, 0, {-2: 1, -1: 1, 0: 1})
    x = denormalize_h(c)
    faces = dict(x.faces)
    faces[(2, 0)] = faces[(2, 0)] + faces[(2, 2)]
    with pytest.raises(ValueError, match=r"simplicial identity d_0 d_1"):
        SimplicialModule(x.ranks, faces, x.degens)


def test_cosimplicial_identity_violation_is_named():
    c = ChainComplex(0, 2, {0: 1, 1: 1, 2: 1})
    x = denormalize_v(c)
    codegens = dict(x.codegens)
    codegens[(0, 0)] = codegens[(0, 0)].scale(2)
    with pytest.raises(ValueError, match=r"cosimplicial identity s\^0 d\^0"):
        CosimplicialModule(x.ranks, x.cofaces, codegens)


def test_denormalize_h_rejects_positive_degrees():
    with pytest.raises(ValueError, match="degrees up to 1"):
        denormalize_h(ChainComplex(0, 1, {0: 1, 1: 1}))


def test_denormalize_v_rejects_negative_degrees():
    with pytest.raises(ValueError, match="degrees down to -1"):
        denormalize_v(ChainComplex(-1, 0, {-1: 1, 0: 1}))


def test_cosimplicial_roundtrip_seeded():
    rng = random.Random(11)
    for _ in range(30):
        c = random_complex(rng, 0, 3, max_summands=2)
        assert normalize_v(denormalize_v(c)) == c


def test_square_of_identities_totalizes_acyclically():
    one = IntMatrix([[1]])
    d = DoubleComplex({(-1, 0): 1, (0, 0): 1, (-1, 1): 1, (0, 1): 1},
                      horiz={(-1, 0): one, (-1, 1): one},
                      vert={(-1, 0): one, (0, 0): one})
    t = tot(d)
    assert t.diff(-1) == IntMatrix([[-1], [1]])
    assert t.diff(0) == IntMatrix([[1, 1]])
    assert is_acyclic(t)


def test_double_complex_must_commute():
    one = IntMatrix([[1]])
    with pytest.raises(ValueError, match=r"square at \(-1, 0\)"):
        DoubleComplex({(-1, 0): 1, (0, 0): 1, (-1, 1): 1, (0, 1): 1},
                      horiz={(-1, 0): one, (-1, 1): one},
                      vert={(-1, 0): one, (0, 0): -one})


def test_tot_summands_sorted_by_column():
    d = DoubleComplex({(-1, 1): 2, (0, 0): 3})
    assert tot_summands(d, 0) == [(-1, 1, 0, 2), (0, 0, 2, 3)]


def test_embed_point_is_constant_object():
    x = constant_mixed(2, 2, 2)
    assert all(x.rank(p, q) == 2 for p in range(3) for q in range(3))
    t = tot(normalize_mixed(x))
    assert t.rank(0) == 2
    assert all(t.rank(n) == 0 for n in t.degrees() if n != 0)


def test_embed_negative_complex_has_trivial_cosimplicial_direction():
    k = ChainComplex(-2, 0, {-2: 1, -1: 2, 0: 1},
                     {-2: IntMatrix([[1], [1]]), -1: IntMatrix([[1, -1]])})
    x = embed_i(k)
    assert x.p_top == 0
    assert [x.rank(0, q) for q in range(3)] == [1, 3, 6]
    assert tot(normalize_mixed(x)) == k


def test_embed_two_sided_roundtrip_seeded():
    rng = random.Random(23)
    for _ in range(15):
        k = random_complex(rng, -2, 2, max_summands=2)
        assert tot(normalize_mixed(embed_i(k))) == k


def test_embed_truncation_guard():
    k = ChainComplex(-1, 1, {-1: 1, 0: 1, 1: 1})
    with pytest.raises(ValueError, match="too small for degrees -1..1"):
        embed_i(k, p_levels=0)


def test_mixed_cross_commutation_is_checked():
    cm = constant_mixed(2, 1, 1)
    u = IntMatrix([[1, 1], [0, 1]])
    uinv = IntMatrix([[1, -1], [0, 1]])
    hfaces = dict(cm.hfaces)
    hdegens = dict(cm.hdegens)
    hfaces[(1, 1, 0)] = u
    hfaces[(1, 1, 1)] = u
    hdegens[(1, 0, 0)] = uinv
    with pytest.raises(ValueError, match=r"do not commute at level \(1, 1\)"):
        MixedObject(1, 1, cm.ranks, cm.vfaces, cm.vdegens, hfaces, hdegens)


def pairing_pair(k1, k2):
    p_top = max(k1.hi, 0) + max(k2.hi, 0)
    q_top = max(-k1.lo, 0) + max(-k2.lo, 0)
    return (embed_i(k1, p_levels=p_top, q_levels=q_top),
            embed_i(k2, p_levels=p_top, q_levels=q_top))


def compose(aw, ez, src, mid, dst):
    for n in src.degrees():
        a = aw.get(n, IntMatrix.zero(dst.rank(n), mid.rank(n)))
        e = ez.get(n, IntMatrix.zero(mid.rank(n), src.rank(n)))
        yield n, a * e


def test_pairings_on_constants_are_inverse():
    a = constant_mixed(1, 2, 2)
    b = constant_mixed(1, 2, 2)
    src, tr, ez = ez_map(a, b)
    _, dst, aw = aw_map(a, b)
    assert ez[0] == IntMatrix([[1]])
    assert aw[0] == IntMatrix([[1]])
    for n, m in compose(aw, ez, src, tr, dst):
        assert m == IntMatrix.identity(src.rank(n))


def test_pairings_are_chain_maps_and_one_sided_inverse():
    cases = [
        (ChainComplex(-1, -1, {-1: 1}), ChainComplex(1, 1, {1: 1})),
        (ChainComplex(-1, 1, {-1: 1, 0: 1, 1: 1}, {-1: IntMatrix([[2]])}),
         ChainComplex(-1, 0, {-1: 1, 0: 1}, {-1: IntMatrix([[3]])})),
    ]
    for k1, k2 in cases:
        a, b = pairing_pair(k1, k2)
        src, tr, ez = ez_map(a, b)
        _, dst, aw = aw_map(a, b)
        for n, m in compose(aw, ez, src, tr, dst):
            assert m == IntMatrix.identity(src.rank(n))


def nonzero_homology(k):
    return {n: h for n, h in homology(k).items() if h != (0, ())}


def test_pairing_sides_have_matching_homology():
    k1 = ChainComplex(-1, 1, {-1: 1, 0: 1, 1: 1}, {-1: IntMatrix([[2]])})
    k2 = ChainComplex(-1, 0, {-1: 1, 0: 1}, {-1: IntMatrix([[3]])})
    a, b = pairing_pair(k1, k2)
    src, tr, _ = ez_map(a, b)
    assert nonzero_homology(src) == nonzero_homology(tr)
    assert nonzero_homology(src) == nonzero_homology(tensor_complex(k1, k2))


def test_pairing_reports_insufficient_truncation():
    k = ChainComplex(-1, -1, {-1: 1})
    a = embed_i(k)
    b = embed_i(k)
    with pytest.raises(ValueError,
                       match=r"truncation too small for total degree -2: "
                             r"needs level \(0, 2\)"):
        ez_map(a, b)
