"""Ring-with-operations descriptions and the axiom verifier.

A LambdaRingSpec bundles a carrier with a total operation evaluator
lam(k, x).  Elements are ordinary Python objects carrying their own
arithmetic (int, Fraction, group-ring elements, quotient-ring elements,
augmented pairs), so generic code can combine them with +, * and
integer or Fraction scalar multiples.

verify_lambda checks the defining axioms instance by instance on sample
elements and reports every check with a witness on failure: the zeroth
and first operations, the addition rule (Cauchy convolution), vanishing
on the unit, and the product and composition laws given by the
universal polynomials.

augment builds the square-zero-style extension of a unital base by a
non-unital fiber with a prescribed action, carrying the operation
formula on pairs; this is the workhorse behind relative constructions
where the fiber models augmentation-trivial data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

from .series import TruncSeries, unit_series
from .universal import COMPOSITION_CAP, universal_comp, universal_mult


def binomial_int(n: int, k: int) -> int:
    """Binomial coefficient by falling factorial, valid for negative n."""
    if k < 0:
        raise ValueError(f"binomial needs k >= 0, got {k}")
    num = 1
    for i in range(k):
        num *= n - i
    den = 1
    for i in range(2, k + 1):
        den *= i
    q, r = divmod(num, den)
    if r:
        raise RuntimeError(f"binomial({n}, {k}) is not integral")
    return q


@dataclass(frozen=True)
class LambdaRingSpec:
    """A carrier with operations: total evaluator, distinguished
    constants, and an optional rank map eps."""

    name: str
    has_unit: bool
    lam: Callable[[int, Any], Any]
    zero: Any
    one: Any = None
    eps: Callable[[Any], Any] | None = None

    def lam_checked(self, k: int, x):
        try:
            return self.lam(k, x)
        except Exception as exc:
            raise ValueError(
                f"evaluator of {self.name} failed at index {k} on {x!r}"
            ) from exc


def integers_spec() -> LambdaRingSpec:
    """The integers with the binomial-coefficient operations."""
    def lam(k, n):
        return binomial_int(n, k)

    return LambdaRingSpec(
        name="Z", has_unit=True, lam=lam, zero=0, one=1, eps=lambda n: n
    )


# ---------------------------------------------------------------------------
# axiom verification


@dataclass(frozen=True)
class CheckRecord:
    axiom: str
    instance: str
    ok: bool
    witness: str = ""


@dataclass
class VerificationReport:
    ring: str
    records: list[CheckRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.records)

    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if not r.ok]

    def add(self, axiom: str, instance: str, ok: bool, witness: str = "") -> None:
        self.records.append(CheckRecord(axiom, instance, ok, witness))

    def format(self) -> str:
        lines = [f"ring {self.ring}: {'PASS' if self.passed else 'FAIL'}"]
        by_axiom: dict[str, list[CheckRecord]] = {}
        for r in self.records:
            by_axiom.setdefault(r.axiom, []).append(r)
        for axiom, recs in by_axiom.items():
            good = sum(1 for r in recs if r.ok)
            lines.append(f"  {axiom}: {good}/{len(recs)} checks pass")
            for r in recs:
                if not r.ok:
                    lines.append(f"    FAIL {r.instance}: {r.witness}")
        return "\n".join(lines)


def _eval_product_law(k: int, lam_x: list, lam_y: list, one):
    poly = universal_mult(k).polynomial
    values = {f"e{i}": lam_x[i] for i in range(1, k + 1)}
    values.update({f"f{i}": lam_y[i] for i in range(1, k + 1)})
    return poly.eval_at(values, one)


def _eval_composition_law(k: int, l: int, lam_x: list, one):
    poly = universal_comp(k, l).polynomial
    values = {f"e{i}": lam_x[i] for i in range(1, k * l + 1)}
    return poly.eval_at(values, one)


def verify_lambda(ring: LambdaRingSpec, samples: Sequence, k_max: int,
                  l_max: int = 1) -> VerificationReport:
    """Check the operation axioms on the given samples.

    Axioms: (a) index 0 yields the unit and index 1 the identity;
    (b) the addition rule lam_n(x+y) = sum_i lam_i(x) lam_{n-i}(y) for
    n <= k_max; (c) lam_n(1) = 0 for 1 < n <= k_max in unital rings;
    (d) the product law for k <= k_max; (e) the composition law for
    k <= k_max, l <= l_max.  Rings without unit skip (c) and the
    boundary terms of (b) follow the convention that the index-0 factor
    acts as the identity.
    """
    if k_max < 1:
        raise ValueError(f"k_max must be >= 1, got {k_max}")
    if k_max * l_max > COMPOSITION_CAP:
        raise ValueError(
            f"k_max*l_max = {k_max * l_max} exceeds the composition cap {COMPOSITION_CAP}"
        )
    report = VerificationReport(ring.name)
    samples = list(samples)
    top = k_max * l_max

    tables: list[list] = []
    for x in samples:
        tables.append([None] + [ring.lam_checked(k, x) for k in range(1, top + 1)])

    for x, table in zip(samples, tables):
        if ring.has_unit:
            ok = ring.lam_checked(0, x) == ring.one
            report.add("(a) unit and identity", f"index 0 on {x!r}", ok,
                       "" if ok else f"got {ring.lam_checked(0, x)!r}")
        ok = table[1] == x
        report.add("(a) unit and identity", f"index 1 on {x!r}", ok,
                   "" if ok else f"got {table[1]!r}")

    for xi, x in enumerate(samples):
        for yi, y in enumerate(samples):
            s = x + y
            for n in range(1, k_max + 1):
                left = ring.lam_checked(n, s)
                right = tables[xi][n] + tables[yi][n]
                for i in range(1, n):
                    right = right + tables[xi][i] * tables[yi][n - i]
                ok = left == right
                report.add(
                    "(b) addition rule", f"n={n} on ({x!r}, {y!r})", ok,
                    "" if ok else f"left {left!r} != right {right!r}")

    if ring.has_unit:
        for n in range(2, k_max + 1):
            value = ring.lam_checked(n, ring.one)
            ok = value == ring.zero
            report.add("(c) vanishing on the unit", f"n={n}", ok,
                       "" if ok else f"got {value!r}")

    one = ring.one if ring.has_unit else None
    for xi, x in enumerate(samples):
        for yi, y in enumerate(samples):
            p = x * y
            for k in range(1, k_max + 1):
                left = ring.lam_checked(k, p)
                right = _eval_product_law(k, tables[xi], tables[yi], one)
                ok = left == right
                report.add(
                    "(d) product law", f"k={k} on ({x!r}, {y!r})", ok,
                    "" if ok else f"left {left!r} != right {right!r}")

    for xi, x in enumerate(samples):
        for l in range(1, l_max + 1):
            inner = tables[xi][l] if l >= 1 else None
            for k in range(1, k_max + 1):
                if k * l > top:
                    continue
                left = ring.lam_checked(k, inner)
                right = _eval_composition_law(k, l, tables[xi], one)
                ok = left == right
                report.add(
                    "(e) composition law", f"k={k}, l={l} on {x!r}", ok,
                    "" if ok else f"left {left!r} != right {right!r}")

    return report


# ---------------------------------------------------------------------------
# augmented rings


class AugPair:
    """Element (base, fiber) of an augmented ring."""

    __slots__ = ("ring", "base", "fiber")

    def __init__(self, ring: "AugmentedRing", base, fiber):
        self.ring = ring
        self.base = base
        self.fiber = fiber

    def _like(self, other) -> "AugPair":
        if isinstance(other, AugPair):
            if other.ring is not self.ring:
                raise ValueError("augmented-ring elements from different rings")
            return other
        raise TypeError(f"cannot combine AugPair with {other!r}")

    def __add__(self, other):
        o = self._like(other)
        return AugPair(self.ring, self.base + o.base, self.fiber + o.fiber)

    def __sub__(self, other):
        o = self._like(other)
        return AugPair(self.ring, self.base - o.base, self.fiber - o.fiber)

    def __neg__(self):
        return AugPair(self.ring, -self.base, -self.fiber)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return AugPair(self.ring, other * self.base, other * self.fiber)
        o = self._like(other)
        r = self.ring
        fiber = (r.action(self.base, o.fiber) + r.action(o.base, self.fiber)
                 + r.internal(self.fiber, o.fiber))
        return AugPair(r, self.base * o.base, fiber)

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return AugPair(self.ring, c * self.base, c * self.fiber)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 1:
            raise ValueError(f"pair power needs n >= 1, got {n}")
        out = self
        for _ in range(n - 1):
            out = out * self
        return out

    def __eq__(self, other):
        return (isinstance(other, AugPair) and other.ring is self.ring
                and self.base == other.base and self.fiber == other.fiber)

    __hash__ = None

    def __repr__(self):
        return f"({self.base!r}, {self.fiber!r})"


class AugmentedRing:
    """Unital base plus non-unital fiber, with product
    (r, s)(r', t) = (r r', r t + r' s + s t) and the operation formula
    lam_n(r, s) = (lam_n r, sum_{i<n} lam_i(r) lam_{n-i}(s))."""

    def __init__(self, base: LambdaRingSpec, fiber: LambdaRingSpec,
                 action: Callable, internal: Callable, name: str | None = None):
        if not base.has_unit:
            raise ValueError(f"augmented base {base.name} must have a unit")
        if fiber.has_unit:
            raise ValueError(f"augmented fiber {fiber.name} must be flagged unit-free")
        self.base = base
        self.fiber = fiber
        self.action = action
        self.internal = internal
        self.name = name or f"{base.name}+{fiber.name}"
        self.zero = AugPair(self, base.zero, fiber.zero)
        self.one = AugPair(self, base.one, fiber.zero)

    def pair(self, r, s) -> AugPair:
        return AugPair(self, r, s)

    def lam(self, k: int, p: AugPair):
        if k == 0:
            return self.one
        base_part = self.base.lam_checked(k, p.base)
        fiber_part = self.fiber.lam_checked(k, p.fiber)
        for i in range(1, k):
            fiber_part = fiber_part + self.action(
                self.base.lam_checked(i, p.base),
                self.fiber.lam_checked(k - i, p.fiber))
        return AugPair(self, base_part, fiber_part)

    def spec(self) -> LambdaRingSpec:
        eps = None
        if self.base.eps is not None:
            base_eps = self.base.eps
            eps = lambda p: base_eps(p.base)
        return LambdaRingSpec(
            name=self.name, has_unit=True, lam=self.lam,
            zero=self.zero, one=self.one, eps=eps)


def augment(base: LambdaRingSpec, fiber: LambdaRingSpec, action: Callable,
            internal: Callable | None = None,
            base_samples: Sequence = (), fiber_samples: Sequence = (),
            name: str | None = None) -> AugmentedRing:
    """Build the augmented ring, spot-checking that the action is
    additive in each slot (and fixes the fiber under the unit) on the
    provided samples."""
    if internal is None:
        internal = lambda s, t: fiber.zero
    for r in base_samples:
        for rp in base_samples:
            for s in fiber_samples:
                left = action(r + rp, s)
                right = action(r, s) + action(rp, s)
                if left != right:
                    raise ValueError(
                        f"action is not additive in the base slot at "
                        f"({r!r} + {rp!r}, {s!r}): {left!r} != {right!r}")
    for r in base_samples:
        for s in fiber_samples:
            for sp in fiber_samples:
                left = action(r, s + sp)
                right = action(r, s) + action(r, sp)
                if left != right:
                    raise ValueError(
                        f"action is not additive in the fiber slot at "
                        f"({r!r}, {s!r} + {sp!r}): {left!r} != {right!r}")
    for s in fiber_samples:
        if action(base.one, s) != s:
            raise ValueError(
                f"action of the unit is not the identity on {s!r}: "
                f"got {action(base.one, s)!r}")
    return AugmentedRing(base, fiber, action, internal, name)


# ---------------------------------------------------------------------------
# rational polynomials modulo a power of the variable


class QuotientElement:
    """Element of Q[v]/(v^n), stored as n coefficients."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: "TruncatedPolynomialRing", coeffs):
        cs = list(coeffs)
        if len(cs) != ring.power:
            raise ValueError(
                f"need {ring.power} coefficients in {ring.name}, got {len(cs)}")
        self.ring = ring
        self.coeffs = tuple(
            int(c) if isinstance(c, Fraction) and c.denominator == 1 else c
            for c in cs)

    def _like(self, other) -> "QuotientElement":
        if isinstance(other, QuotientElement) and other.ring is self.ring:
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        raise TypeError(f"cannot combine {self.ring.name} element with {other!r}")

    def __add__(self, other):
        o = self._like(other)
        return QuotientElement(
            self.ring, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._like(other)
        return QuotientElement(
            self.ring, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __neg__(self):
        return QuotientElement(self.ring, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuotientElement(self.ring, [other * a for a in self.coeffs])
        o = self._like(other)
        n = self.ring.power
        out = [0] * n
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                if i + j < n and b:
                    out[i + j] += a * b
        return QuotientElement(self.ring, out)

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return QuotientElement(self.ring, [c * a for a in self.coeffs])
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError(f"negative power {n} in {self.ring.name}")
        out = self.ring.one
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        return (isinstance(other, QuotientElement) and other.ring is self.ring
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((id(self.ring), self.coeffs))

    def __repr__(self):
        v = self.ring.var
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "1" if i == 0 else (v if i == 1 else f"{v}^{i}")
            parts.append(mono if c == 1 and i > 0 else
                         (f"{c}" if i == 0 else f"{c}*{mono}"))
        return " + ".join(parts) if parts else "0"


class TruncatedPolynomialRing:
    """Q[v]/(v^n) with operations determined by the values on v.

    By default v + 1 behaves as a line, so lam_k(v) = (-1)^(k-1) v.  The
    values on powers of v are derived through the product law, scalars
    through binomial series, and a general element multiplicatively from
    its monomials.
    """

    def __init__(self, var: str, power: int,
                 lam_generator: Callable[[int], "QuotientElement"] | None = None):
        if power < 1:
            raise ValueError(f"modulus power must be >= 1, got {power}")
        self.var = var
        self.power = power
        self.name = f"Q[{var}]/({var}^{power})"
        self.zero = QuotientElement(self, [0] * power)
        one = [0] * power
        one[0] = 1
        self.one = QuotientElement(self, one)
        if lam_generator is None:
            def lam_generator(k: int) -> QuotientElement:
                sign = 1 if k % 2 == 1 else -1
                return sign * self.generator()
        self._lam_gen = lam_generator
        self._tables: dict[int, list[QuotientElement]] = {}

    def const(self, c) -> QuotientElement:
        coeffs = [0] * self.power
        coeffs[0] = c
        return QuotientElement(self, coeffs)

    def generator(self) -> QuotientElement:
        if self.power < 2:
            return self.zero
        coeffs = [0] * self.power
        coeffs[1] = 1
        return QuotientElement(self, coeffs)

    def element(self, coeffs) -> QuotientElement:
        cs = list(coeffs)
        cs += [0] * (self.power - len(cs))
        return QuotientElement(self, cs)

    def _monomial_table(self, j: int, k_max: int) -> list[QuotientElement]:
        """Values lam_m(v^j) for m = 0..k_max."""
        table = self._tables.get(j)
        if table is not None and len(table) > k_max:
            return table
        if j == 1:
            table = [self.one] + [self._lam_gen(m) for m in range(1, k_max + 1)]
        else:
            lower = self._monomial_table(j - 1, k_max)
            gen = self._monomial_table(1, k_max)
            table = [self.one]
            for m in range(1, k_max + 1):
                poly = universal_mult(m).polynomial
                values = {f"e{i}": lower[i] for i in range(1, m + 1)}
                values.update({f"f{i}": gen[i] for i in range(1, m + 1)})
                table.append(poly.eval_at(values, self.one))
        self._tables[j] = table
        return table

    def lam(self, k: int, x: QuotientElement) -> QuotientElement:
        if k < 0:
            raise ValueError(f"operation index must be >= 0, got {k}")
        if k == 0:
            return self.one
        series = unit_series(k, self.zero, self.one, ring=self.name)
        a0 = x.coeffs[0]
        if a0:
            line = TruncSeries(k, [self.one, self.one] + [self.zero] * (k - 1),
                               ring=self.name)
            series = series * line.pow_frac(Fraction(a0))
        for j in range(1, self.power):
            c = x.coeffs[j]
            if not c:
                continue
            table = self._monomial_table(j, k)
            mono = TruncSeries(k, table[: k + 1], ring=self.name)
            series = series * mono.pow_frac(Fraction(c))
        return series.coeffs[k]

    def spec(self) -> LambdaRingSpec:
        return LambdaRingSpec(
            name=self.name, has_unit=True, lam=self.lam,
            zero=self.zero, one=self.one, eps=lambda x: x.coeffs[0])
