"""Truncated power series over an arbitrary commutative coefficient ring.

A series of truncation degree d stores exactly d+1 coefficients, index n
holding the t^n coefficient.  Coefficients can be any Python objects closed
under +, * and integer scalar multiples (ints, Fractions, LaurentPoly,
group-ring elements, ...).  All arithmetic silently discards degrees > d.
Binary operations require equal truncation degrees and equal ring tags.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class TruncSeries:
    __slots__ = ("degree", "coeffs", "ring")

    def __init__(self, degree: int, coeffs: Sequence, ring: str = ""):
        if degree < 0:
            raise ValueError(f"truncation degree must be >= 0, got {degree}")
        cs = list(coeffs)
        if len(cs) > degree + 1:
            cs = cs[: degree + 1]
        if len(cs) < degree + 1:
            raise ValueError(
                f"need {degree + 1} coefficients for truncation degree {degree}, got {len(cs)}"
            )
        self.degree = degree
        self.coeffs = tuple(cs)
        self.ring = ring

    def _check(self, other: "TruncSeries") -> None:
        if self.degree != other.degree:
            raise ValueError(
                f"truncation degrees differ: {self.degree} vs {other.degree}"
            )
        if self.ring != other.ring:
            raise ValueError(f"coefficient rings differ: {self.ring!r} vs {other.ring!r}")

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        return TruncSeries(
            self.degree,
            [a + b for a, b in zip(self.coeffs, other.coeffs)],
            self.ring,
        )

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        return TruncSeries(
            self.degree,
            [a + (-1) * b for a, b in zip(self.coeffs, other.coeffs)],
            self.ring,
        )

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        out = []
        for n in range(self.degree + 1):
            pieces = [
                self.coeffs[i] * other.coeffs[n - i]
                for i in range(n + 1)
            ]
            acc = pieces[0]
            for p in pieces[1:]:
                acc = acc + p
            out.append(acc)
        return TruncSeries(self.degree, out, self.ring)

    def reciprocal(self) -> "TruncSeries":
        """Inverse of a series whose constant term is the ring unit."""
        one = self.coeffs[0]
        # cheap unit guard: the unit is idempotent and nonzero
        if one * one != one or one + one == one:
            raise ValueError(f"constant term {one!r} is not the ring unit; cannot invert")
        out = [one]
        for n in range(1, self.degree + 1):
            pieces = [self.coeffs[i] * out[n - i] for i in range(1, n + 1)]
            acc = pieces[0]
            for p in pieces[1:]:
                acc = acc + p
            out.append((-1) * acc)
        return TruncSeries(self.degree, out, self.ring)

    def pow_int(self, n: int) -> "TruncSeries":
        if n < 0:
            return self.reciprocal().pow_int(-n)
        result = None
        base = self
        # n == 0 needs an explicit unit series, which needs coeffs[0] to be
        # the unit and a zero; callers use pow_int only with the constant
        # term equal to the unit, so 1 + 0 + ... works via base - base.
        if n == 0:
            zero_tail = [(0) * c for c in self.coeffs[1:]]
            return TruncSeries(self.degree, [self.coeffs[0]] + zero_tail, self.ring)
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def pow_frac(self, q: Fraction) -> "TruncSeries":
        """Rational power of a series with constant term the ring unit,
        via the binomial series sum_m C(q, m) (s - 1)^m.  Coefficients must
        admit Fraction scalar multiples."""
        q = Fraction(q)
        if q.denominator == 1:
            return self.pow_int(int(q))
        one = self.coeffs[0]
        nil = [(0) * c for c in self.coeffs]
        nil[0] = (0) * one
        eps = TruncSeries(self.degree, [nil[0]] + list(self.coeffs[1:]), self.ring)
        acc = TruncSeries(self.degree, [one] + nil[1:], self.ring)
        power = acc
        binom = Fraction(1)
        for m in range(1, self.degree + 1):
            power = power * eps
            binom = binom * (q - (m - 1)) / m
            acc = acc + TruncSeries(
                self.degree, [binom * c for c in power.coeffs], self.ring
            )
        return acc

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.ring == other.ring
            and all(a == b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __repr__(self):
        return f"TruncSeries(deg={self.degree}, {self.coeffs!r})"


def unit_series(degree: int, zero, one, ring: str = "") -> TruncSeries:
    """The unit series 1 + 0 t + ... for explicitly supplied ring constants."""
    return TruncSeries(degree, [one] + [zero] * degree, ring)
