"""Truncated big Witt vectors.

Elements are power series 1 + a1 t + ... + ad t^d with a fixed
truncation degree d.  Addition is the series product, negation the
series reciprocal, and multiplication has nth coefficient equal to the
product law evaluated on the coefficient prefixes.  Lambda operations
treat an element as a product of d formal lines: Newton's identities
recover power sums of the roots, power sums of k-fold subset products
are elementary symmetric values of the powered roots, and Newton's
identities turn those back into coefficients.  Everything is exact over
the rationals and lands back in the integers for integer input.

The ring operations accept coefficients from any commutative carrier
(the product law is evaluated symbolically when coefficients are not
plain numbers); the lambda operations need numeric coefficients.
"""

from __future__ import annotations

from fractions import Fraction

from .lambdaring import LambdaRingSpec
from .series import TruncSeries
from .universal import (
    elementary_from_power_sums,
    power_sums_from_elementary,
    universal_mult,
)


def _normalize(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def _is_scalar(c) -> bool:
    return isinstance(c, (int, Fraction))


class WittElement:
    """Series 1 + a1 t + ... + ad t^d under the Witt ring operations."""

    __slots__ = ("series",)

    def __init__(self, series: TruncSeries):
        if series.coeffs[0] != 1:
            raise ValueError(
                f"constant term must be 1, got {series.coeffs[0]!r}")
        self.series = series

    @property
    def degree(self) -> int:
        return self.series.degree

    @property
    def coeffs(self) -> tuple:
        return self.series.coeffs

    def is_numeric(self) -> bool:
        return all(_is_scalar(c) for c in self.coeffs)

    def __add__(self, other):
        if not isinstance(other, WittElement):
            return NotImplemented
        return witt_add(self, other)

    def __neg__(self):
        return witt_neg(self)

    def __sub__(self, other):
        if not isinstance(other, WittElement):
            return NotImplemented
        return witt_add(self, witt_neg(other))

    def __mul__(self, other):
        if isinstance(other, WittElement):
            return witt_mul(self, other)
        if isinstance(other, int):
            return self._int_multiple(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, int):
            return self._int_multiple(other)
        return NotImplemented

    def _int_multiple(self, c: int) -> "WittElement":
        acc = witt_zero(self.degree)
        step = self if c >= 0 else witt_neg(self)
        for _ in range(abs(c)):
            acc = witt_add(acc, step)
        return acc

    def __pow__(self, n: int) -> "WittElement":
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"Witt powers need an exponent >= 0, got {n!r}")
        acc = witt_one(self.degree)
        for _ in range(n):
            acc = witt_mul(acc, self)
        return acc

    def __eq__(self, other):
        if not isinstance(other, WittElement):
            return NotImplemented
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.degree, self.coeffs))

    def __repr__(self):
        parts = ["1"]
        for i, c in enumerate(self.coeffs[1:], start=1):
            if c == 0:
                continue
            mag = c if (not _is_scalar(c)) or c > 0 else -c
            sign = " - " if _is_scalar(c) and c < 0 else " + "
            tpow = "t" if i == 1 else f"t^{i}"
            body = tpow if mag == 1 else f"{mag}*{tpow}"
            parts.append(f"{sign}{body}")
        return "".join(parts)


def from_coeffs(tail, *, ring: str = "") -> WittElement:
    """Element 1 + tail[0] t + tail[1] t^2 + ...; the truncation degree
    is the length of the tail."""
    cs = [1] + [_normalize(c) for c in tail]
    return WittElement(TruncSeries(len(cs) - 1, cs, ring=ring))


def witt_zero(degree: int) -> WittElement:
    return from_coeffs([0] * degree)


def witt_one(degree: int) -> WittElement:
    return from_coeffs([1] + [0] * (degree - 1))


def witt_line(a, degree: int) -> WittElement:
    """The class of a rank-one element: 1 + a t."""
    return from_coeffs([a] + [0] * (degree - 1))


def witt_add(u: WittElement, v: WittElement) -> WittElement:
    return WittElement(u.series * v.series)


def witt_neg(u: WittElement) -> WittElement:
    return WittElement(u.series.reciprocal())


def witt_sub(u: WittElement, v: WittElement) -> WittElement:
    return witt_add(u, witt_neg(v))


def _check_degrees(u: WittElement, v: WittElement) -> None:
    if u.degree != v.degree:
        raise ValueError(
            f"truncation degrees differ: {u.degree} vs {v.degree}")


def witt_mul(u: WittElement, v: WittElement) -> WittElement:
    """Product with nth coefficient P_n(a1..an; b1..bn)."""
    _check_degrees(u, v)
    if u.is_numeric() and v.is_numeric():
        return _mul_numeric(u, v)
    return _mul_symbolic(u, v)


def _mul_numeric(u: WittElement, v: WittElement) -> WittElement:
    d = u.degree
    pu = power_sums_from_elementary(list(u.coeffs[1:]), d, 0)
    pv = power_sums_from_elementary(list(v.coeffs[1:]), d, 0)
    qs = [pu[j] * pv[j] for j in range(d)]
    tail = [_normalize(c) for c in elementary_from_power_sums(qs, d, Fraction(0))]
    return from_coeffs(tail)


def _mul_symbolic(u: WittElement, v: WittElement) -> WittElement:
    d = u.degree
    tail = []
    for n in range(1, d + 1):
        p = universal_mult(n).polynomial
        assignment = {}
        for i in range(1, n + 1):
            assignment[f"e{i}"] = u.coeffs[i]
            assignment[f"f{i}"] = v.coeffs[i]
        tail.append(p.eval_at(assignment, one=None))
    return from_coeffs(tail)


def witt_lambda(k: int, u: WittElement) -> WittElement:
    """Exterior power operation: treat u as a product of d formal lines
    and take the product over k-element subsets."""
    if k < 0:
        raise ValueError(f"operation index must be >= 0, got {k}")
    d = u.degree
    if k == 0:
        return witt_one(d)
    if k == 1:
        return u
    if not u.is_numeric():
        raise ValueError(
            "lambda operations need numeric coefficients; "
            f"got {u.coeffs[1]!r}")
    ps = power_sums_from_elementary(list(u.coeffs[1:]), d * k, 0)
    qs = []
    for j in range(1, d + 1):
        powered = [ps[j * m - 1] for m in range(1, k + 1)]
        qs.append(elementary_from_power_sums(powered, k, Fraction(0))[k - 1])
    tail = [_normalize(c) for c in elementary_from_power_sums(qs, d, Fraction(0))]
    if all(isinstance(c, int) for c in u.coeffs) and not all(
            isinstance(c, int) for c in tail):
        raise RuntimeError(f"lambda {k} left the integers on {u!r}")
    return from_coeffs(tail)


def witt_rank(u: WittElement):
    """The rank map: the coefficient of t."""
    return u.coeffs[1]


def witt_spec(degree: int, name: str | None = None) -> LambdaRingSpec:
    """The truncated Witt vectors of the integers as a verifiable ring."""
    return LambdaRingSpec(
        name=name or f"W{degree}(Z)", has_unit=True,
        lam=lambda k, u: witt_lambda(k, u),
        zero=witt_zero(degree), one=witt_one(degree), eps=witt_rank)
