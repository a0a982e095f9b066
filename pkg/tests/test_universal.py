"""Universal operation laws: goldens, binomial oracles, and the cache."""

from itertools import combinations

import pytest

import lambdakit.universal as universal
from lambdakit.poly import LaurentPoly, elementary_symmetric, format_poly
from lambdakit.symmetric import decompose_symmetric
from lambdakit.universal import (
    universal_comp,
    universal_gamma_comp,
    universal_gamma_mult,
    universal_mult,
    universal_poly,
)


def _binom(n, k):
    # falling-factorial binomial, valid for negative n
    num = 1
    for i in range(k):
        num *= n - i
    den = 1
    for i in range(2, k + 1):
        den *= i
    q, r = divmod(num, den)
    assert r == 0
    return q


def test_product_law_goldens():
    assert format_poly(universal_mult(1).polynomial) == "e1*f1"
    assert format_poly(universal_mult(2).polynomial) == "e1^2*f2 + e2*f1^2 - 2*e2*f2"


def test_product_law_rejects_index_zero():
    with pytest.raises(ValueError, match="k >= 1"):
        universal_mult(0)


def test_composition_law_goldens():
    assert format_poly(universal_comp(2, 2).polynomial) == "e1*e3 - e4"
    for l in (1, 2, 3, 4):
        assert format_poly(universal_comp(1, l).polynomial) == f"e{l}"
    for k in (1, 2, 3, 4):
        assert format_poly(universal_comp(k, 1).polynomial) == f"e{k}"


def test_composition_cap():
    with pytest.raises(ValueError, match="cap"):
        universal_comp(2, 5)
    with pytest.raises(ValueError, match="k, l >= 1"):
        universal_comp(0, 3)


def test_gamma_goldens():
    assert format_poly(universal_gamma_mult(1).polynomial) == "g1*h1"
    assert format_poly(universal_gamma_mult(2).polynomial) == (
        "-g1^2*h1 + g1^2*h2 - g1*h1^2 + g2*h1^2 "
        "- g1*h1 + 2*g1*h2 + 2*g2*h1 - 2*g2*h2"
    )
    for l in (1, 2, 3):
        assert format_poly(universal_gamma_comp(1, l).polynomial) == f"g{l}"
    for k in (1, 2, 3):
        assert format_poly(universal_gamma_comp(k, 1).polynomial) == f"g{k}"


def test_product_law_against_integer_binomials():
    # in the integers, the k-th operation of n is C(n, k)
    for k in range(1, 5):
        poly = universal_mult(k).polynomial
        for m in range(-3, 4):
            for n in range(-3, 4):
                values = {f"e{i}": _binom(m, i) for i in range(1, k + 1)}
                values.update({f"f{i}": _binom(n, i) for i in range(1, k + 1)})
                assert poly.eval_at(values, 1) == _binom(m * n, k), (k, m, n)


def test_composition_law_against_integer_binomials():
    for k, l in [(1, 1), (1, 4), (2, 2), (2, 3), (3, 2), (4, 1), (2, 4), (3, 3)]:
        poly = universal_comp(k, l).polynomial
        for n in range(-3, 4):
            values = {f"e{i}": _binom(n, i) for i in range(1, k * l + 1)}
            assert poly.eval_at(values, 1) == _binom(_binom(n, l), k), (k, l, n)


def test_gamma_product_law_against_integer_binomials():
    # gamma^i of the integer n is C(n+i-1, i)
    for k in range(1, 4):
        poly = universal_gamma_mult(k).polynomial
        for m in range(-3, 4):
            for n in range(-3, 4):
                values = {f"g{i}": _binom(m + i - 1, i) for i in range(1, k + 1)}
                values.update({f"h{i}": _binom(n + i - 1, i) for i in range(1, k + 1)})
                assert poly.eval_at(values, 1) == _binom(m * n + k - 1, k), (k, m, n)


def test_gamma_composition_law_against_integer_binomials():
    for k, l in [(2, 2), (2, 3), (3, 2), (1, 5)]:
        poly = universal_gamma_comp(k, l).polynomial
        for n in range(-3, 4):
            values = {f"g{i}": _binom(n + i - 1, i) for i in range(1, k * l + 1)}
            inner = _binom(n + l - 1, l)
            assert poly.eval_at(values, 1) == _binom(inner + k - 1, k), (k, l, n)


def test_product_law_matches_brute_force_decomposition():
    for k in (2, 3):
        xs = tuple(f"x{i}" for i in range(1, k + 1))
        ys = tuple(f"y{i}" for i in range(1, k + 1))
        v = xs + ys
        products = [
            LaurentPoly.var(v, a) * LaurentPoly.var(v, b) for a in xs for b in ys
        ]
        ek = elementary_symmetric(products, k)
        brute = decompose_symmetric(ek, {"e": list(xs), "f": list(ys)})
        assert brute == universal_mult(k).polynomial


def test_composition_law_matches_brute_force_decomposition():
    for k, l in [(2, 2), (2, 3), (3, 2)]:
        n = k * l
        xs = tuple(f"x{i}" for i in range(1, n + 1))
        roots = [LaurentPoly.var(xs, x) for x in xs]
        products = []
        for subset in combinations(range(n), l):
            m = LaurentPoly.const(xs, 1)
            for i in subset:
                m = m * roots[i]
            products.append(m)
        ek = elementary_symmetric(products, k)
        brute = decompose_symmetric(ek, {"e": list(xs)})
        assert brute == universal_comp(k, l).polynomial


def test_weight_of_product_law():
    poly = universal_mult(3).polynomial
    e_w = {f"e{i}": i for i in range(1, 4)}
    f_w = {f"f{i}": i for i in range(1, 4)}
    assert poly.is_isobaric(e_w, 3)
    assert poly.is_isobaric(f_w, 3)


def _clear_memo():
    universal._MEMO.clear()


def test_cache_round_trip(tmp_path):
    _clear_memo()
    up = universal_poly("PKL", 2, 2, cache_dir=tmp_path)
    assert format_poly(up.polynomial) == "e1*e3 - e4"
    path = tmp_path / "PKL_2_2.poly"
    assert path.exists()
    cold = path.read_bytes()
    _clear_memo()
    again = universal_poly("PKL", 2, 2, cache_dir=tmp_path)
    assert again.polynomial == up.polynomial
    assert path.read_bytes() == cold


def test_cache_survives_corruption(tmp_path):
    _clear_memo()
    universal_poly("P", 2, cache_dir=tmp_path)
    path = tmp_path / "P_2.poly"
    healthy = path.read_bytes()
    path.write_text("scribbles\n", encoding="ascii")
    _clear_memo()
    up = universal_poly("P", 2, cache_dir=tmp_path)
    assert format_poly(up.polynomial) == "e1^2*f2 + e2*f1^2 - 2*e2*f2"
    assert path.read_bytes() == healthy


def test_cache_detects_hash_mismatch(tmp_path):
    _clear_memo()
    universal_poly("P", 1, cache_dir=tmp_path)
    path = tmp_path / "P_1.poly"
    text = path.read_text(encoding="ascii")
    tampered = text.replace("e1*f1", "e1*f1 + e1")
    path.write_text(tampered, encoding="ascii")
    _clear_memo()
    up = universal_poly("P", 1, cache_dir=tmp_path)
    assert format_poly(up.polynomial) == "e1*f1"


def test_cache_env_var_override(tmp_path, monkeypatch):
    _clear_memo()
    monkeypatch.setenv(universal.ENV_CACHE_DIR, str(tmp_path / "elsewhere"))
    universal_poly("P", 1)
    assert (tmp_path / "elsewhere" / "P_1.poly").exists()


def test_universal_poly_validates_kind_and_arity(tmp_path):
    with pytest.raises(ValueError, match="kind"):
        universal_poly("X", 1, cache_dir=tmp_path)
    with pytest.raises(ValueError, match="indices"):
        universal_poly("P", 1, 2, cache_dir=tmp_path)
