"""Representation rings of abelian groups and friends.

Group rings are stored sparsely as maps from group elements (exponent
tuples, additive notation) to integer or Fraction coefficients.  Every
group element is a line, so the operations on a general element come
from the series product of the lines in its support; the k-th power map
extends linearly and drives the rationalized-fiber construction used in
relative settings.

Also here: Weyl-style actions by integer matrices on the character
lattice with orbit-sum invariants, the tensor construction pairing a
group ring with a coefficient ring, and the truncated monoid
representation ring whose generators record exterior powers of the two
standard classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product
from typing import Callable, Iterable, Mapping, Sequence

from .intmat import IntMatrix, span_basis, spans_equal
from .lambdaring import LambdaRingSpec
from .poly import LaurentPoly, elementary_symmetric
from .series import TruncSeries, unit_series
from .symmetric import decompose_symmetric

WEYL_CAP = 10000


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group: free rank plus invariant factors.

    Elements are exponent tuples, free coordinates first, torsion
    coordinates reduced modulo their factor.
    """

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError(f"free rank must be >= 0, got {self.free_rank}")
        object.__setattr__(self, "torsion", tuple(self.torsion))
        for d in self.torsion:
            if d < 2:
                raise ValueError(f"invariant factors must be >= 2, got {d}")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(
                    f"invariant factors must form a divisibility chain, "
                    f"got {a} before {b}")

    @property
    def dims(self) -> int:
        return self.free_rank + len(self.torsion)

    def identity(self) -> tuple[int, ...]:
        return (0,) * self.dims

    def reduce(self, exps: Sequence[int]) -> tuple[int, ...]:
        e = list(exps)
        if len(e) != self.dims:
            raise ValueError(f"expected {self.dims} exponents, got {len(e)}")
        for i, d in enumerate(self.torsion):
            j = self.free_rank + i
            e[j] %= d
        return tuple(e)

    def add(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        return self.reduce([x + y for x, y in zip(a, b)])

    def neg(self, a: Sequence[int]) -> tuple[int, ...]:
        return self.reduce([-x for x in a])

    def scale(self, a: Sequence[int], k: int) -> tuple[int, ...]:
        return self.reduce([k * x for x in a])

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def elements(self) -> list[tuple[int, ...]]:
        if not self.is_finite():
            raise ValueError("infinite group; enumerate with a degree bound instead")
        return [tuple(e) for e in iter_product(*[range(d) for d in self.torsion])]

    def generator_name(self, i: int) -> str:
        if i < self.free_rank:
            return f"t{i + 1}"
        return f"s{i - self.free_rank + 1}"


class GroupRingElement:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: "GroupRing", terms: Mapping[tuple, int | Fraction]):
        clean: dict[tuple, int | Fraction] = {}
        for g, c in terms.items():
            if isinstance(c, Fraction) and c.denominator == 1:
                c = int(c)
            if c:
                clean[ring.group.reduce(g)] = c
        self.ring = ring
        self.terms = clean

    def _like(self, other) -> "GroupRingElement":
        if isinstance(other, GroupRingElement) and other.ring is self.ring:
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        raise TypeError(f"cannot combine group-ring element with {other!r}")

    def __add__(self, other):
        o = self._like(other)
        terms = dict(self.terms)
        for g, c in o.terms.items():
            terms[g] = terms.get(g, 0) + c
        return GroupRingElement(self.ring, terms)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._like(other))

    def __neg__(self):
        return GroupRingElement(self.ring, {g: -c for g, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GroupRingElement(
                self.ring, {g: other * c for g, c in self.terms.items()})
        o = self._like(other)
        group = self.ring.group
        terms: dict[tuple, int | Fraction] = {}
        for g, c in self.terms.items():
            for h, d in o.terms.items():
                k = group.add(g, h)
                terms[k] = terms.get(k, 0) + c * d
        return GroupRingElement(self.ring, terms)

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return GroupRingElement(
                self.ring, {g: c * x for g, x in self.terms.items()})
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError(f"cannot invert non-monomial {self!r}")
            (g, c), = self.terms.items()
            inv = GroupRingElement(
                self.ring, {self.ring.group.neg(g): Fraction(1, 1) / Fraction(c)})
            return inv ** (-n)
        out = self.ring.one
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        return (isinstance(other, GroupRingElement) and other.ring is self.ring
                and self.terms == other.terms)

    def __hash__(self):
        return hash((id(self.ring), tuple(sorted(self.terms.items()))))

    def degree(self) -> int:
        """Max over terms of the total exponent size (absolute values on
        the free part, representatives on the torsion part)."""
        if not self.terms:
            return 0
        return max(sum(abs(x) for x in g) for g in self.terms)

    def coefficient_sum(self) -> int | Fraction:
        total: int | Fraction = 0
        for c in self.terms.values():
            total += c
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        group = self.ring.group
        parts = []
        for g in sorted(self.terms, reverse=True):
            c = self.terms[g]
            factors = []
            for i, e in enumerate(g):
                if e:
                    name = group.generator_name(i)
                    factors.append(name if e == 1 else f"{name}^{e}")
            mono = "*".join(factors) if factors else "1"
            if c == 1 and factors:
                parts.append(mono)
            elif c == -1 and factors:
                parts.append(f"-{mono}")
            elif not factors:
                parts.append(f"{c}")
            else:
                parts.append(f"{c}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


class GroupRing:
    """Sparse group ring of a finitely generated abelian group."""

    def __init__(self, group: AbelianGroup, name: str | None = None):
        self.group = group
        self.name = name or f"Z[{group.free_rank};{','.join(map(str, group.torsion))}]"
        self.zero = GroupRingElement(self, {})
        self.one = GroupRingElement(self, {group.identity(): 1})

    def const(self, c) -> GroupRingElement:
        return GroupRingElement(self, {self.group.identity(): c})

    def monomial(self, exps: Sequence[int], c: int | Fraction = 1) -> GroupRingElement:
        return GroupRingElement(self, {tuple(exps): c})

    def generator(self, i: int) -> GroupRingElement:
        e = [0] * self.group.dims
        e[i] = 1
        return self.monomial(e)

    def element(self, terms: Mapping[tuple, int | Fraction]) -> GroupRingElement:
        return GroupRingElement(self, terms)

    def basis_elements(self) -> list[GroupRingElement]:
        return [self.monomial(g) for g in self.group.elements()]

    def lam(self, k: int, x: GroupRingElement) -> GroupRingElement:
        return group_ring_lambda(k, x)

    def adams(self, k: int, x: GroupRingElement) -> GroupRingElement:
        """The k-th power map, extended linearly over the coefficients."""
        if k < 1:
            raise ValueError(f"power-map index must be >= 1, got {k}")
        terms: dict[tuple, int | Fraction] = {}
        for g, c in x.terms.items():
            h = self.group.scale(g, k)
            terms[h] = terms.get(h, 0) + c
        return GroupRingElement(self, terms)

    def eps(self, x: GroupRingElement) -> int | Fraction:
        return x.coefficient_sum()

    def spec(self) -> LambdaRingSpec:
        def lam(k, x):
            return group_ring_lambda(k, x)

        return LambdaRingSpec(
            name=self.name, has_unit=True, lam=lam,
            zero=self.zero, one=self.one, eps=self.eps)


def group_ring_lambda(k: int, x: GroupRingElement) -> GroupRingElement:
    """k-th operation on a group-ring element: every group element is a
    line, so the operation series of x is the product over the support
    of (1 + g t)^(multiplicity of g)."""
    ring = x.ring
    if k < 0:
        raise ValueError(f"operation index must be >= 0, got {k}")
    if k == 0:
        return ring.one
    series = unit_series(k, ring.zero, ring.one, ring=ring.name)
    for g, c in sorted(x.terms.items()):
        line = TruncSeries(
            k, [ring.one, ring.monomial(g)] + [ring.zero] * (k - 1), ring=ring.name)
        if isinstance(c, int):
            series = series * line.pow_int(c)
        else:
            series = series * line.pow_frac(c)
    return series.coeffs[k]


def rationalized_fiber_spec(ring: GroupRing, name: str | None = None) -> LambdaRingSpec:
    """Rank-zero rational coefficients of a group ring as a unit-free
    carrier with zero internal product.

    The operations divide the linearly extended power map by its index,
    with alternating sign; this is forced on a square-zero ideal by the
    Newton recursion, which degenerates there to
    psi_k = (-1)^(k+1) k lam_k.
    """
    def lam(k, s):
        if k == 0:
            raise ValueError("operation index 0 is undefined in a ring without unit")
        sign = 1 if k % 2 == 1 else -1
        return Fraction(sign, k) * ring.adams(k, s)

    return LambdaRingSpec(
        name=name or f"I({ring.name})xQ", has_unit=False, lam=lam,
        zero=ring.zero, one=None, eps=None)


# ---------------------------------------------------------------------------
# Weyl-style actions and invariants


class WeylAction:
    """Finite matrix group acting on the exponent lattice of a group ring.

    Generators are integer matrices, invertible over the integers,
    mapping the torsion block into itself compatibly with the factors.
    The full group is enumerated by closure, capped at 10000 elements.
    """

    def __init__(self, ring: GroupRing, generators: Sequence[IntMatrix]):
        self.ring = ring
        group = ring.group
        n = group.dims
        for m in generators:
            if m.rows != n or m.cols != n:
                raise ValueError(f"generator must be {n}x{n}, got {m.rows}x{m.cols}")
            if m.det() not in (1, -1):
                raise ValueError(f"generator is not invertible over the integers: {m!r}")
            for j in range(group.free_rank, n):
                dj = group.torsion[j - group.free_rank]
                for i in range(n):
                    entry = m[i, j]
                    if i < group.free_rank:
                        if entry:
                            raise ValueError(
                                "generator maps a torsion coordinate to the free part")
                    else:
                        di = group.torsion[i - group.free_rank]
                        if (entry * dj) % di:
                            raise ValueError(
                                "generator does not preserve the torsion structure")
        self.elements = self._closure(list(generators), n)

    @staticmethod
    def _closure(gens: list[IntMatrix], n: int) -> list[IntMatrix]:
        seen = {IntMatrix.identity(n)}
        frontier = [IntMatrix.identity(n)]
        while frontier:
            nxt = []
            for m in frontier:
                for g in gens:
                    p = g * m
                    if p not in seen:
                        if len(seen) >= WEYL_CAP:
                            raise ValueError(
                                f"group enumeration exceeded the cap of {WEYL_CAP} elements")
                        seen.add(p)
                        nxt.append(p)
            frontier = nxt
        return sorted(seen, key=lambda m: m.data)

    def act_on_exponents(self, m: IntMatrix, g: Sequence[int]) -> tuple[int, ...]:
        return self.ring.group.reduce(m.apply(g))

    def act(self, m: IntMatrix, x: GroupRingElement) -> GroupRingElement:
        terms: dict[tuple, int | Fraction] = {}
        for g, c in x.terms.items():
            h = self.act_on_exponents(m, g)
            terms[h] = terms.get(h, 0) + c
        return GroupRingElement(self.ring, terms)

    def is_invariant(self, x: GroupRingElement) -> bool:
        return all(self.act(m, x) == x for m in self.elements)

    def orbit_sum(self, g: Sequence[int]) -> GroupRingElement:
        orbit = {self.act_on_exponents(m, g) for m in self.elements}
        return GroupRingElement(self.ring, {h: 1 for h in orbit})


def weyl_invariants(action: WeylAction, degree_cap: int) -> list[GroupRingElement]:
    """Orbit sums of all monomials of degree at most degree_cap, one per
    orbit, in a deterministic order."""
    group = action.ring.group
    seen: set[tuple] = set()
    out: list[GroupRingElement] = []
    for g in _bounded_exponents(group, degree_cap):
        if g in seen:
            continue
        orbit = {action.act_on_exponents(m, g) for m in action.elements}
        seen.update(orbit)
        out.append(GroupRingElement(action.ring, {h: 1 for h in orbit}))
    return out


def _bounded_exponents(group: AbelianGroup, cap: int) -> list[tuple[int, ...]]:
    free_ranges = []
    prefix: list[list[int]] = [[]]
    for _ in range(group.free_rank):
        grown = []
        for p in prefix:
            budget = cap - sum(abs(x) for x in p)
            for v in range(-budget, budget + 1):
                grown.append(p + [v])
        prefix = grown
    full = []
    for p in prefix:
        budget = cap - sum(abs(x) for x in p)
        for tors in iter_product(*[range(d) for d in group.torsion]):
            if sum(tors) <= budget:
                full.append(tuple(p) + tors)
    return sorted(full)


def elements_span(elements: Sequence[GroupRingElement]) -> tuple[list[tuple], list]:
    """Common support keys and the canonical rational span basis of the
    coefficient vectors."""
    keys = sorted({g for x in elements for g in x.terms})
    vectors = []
    for x in elements:
        vectors.append(tuple(Fraction(x.terms.get(g, 0)) for g in keys))
    return keys, span_basis(vectors)


def spans_match(a: Sequence[GroupRingElement], b: Sequence[GroupRingElement]) -> bool:
    keys = sorted({g for x in list(a) + list(b) for g in x.terms})
    va = [tuple(Fraction(x.terms.get(g, 0)) for g in keys) for x in a]
    vb = [tuple(Fraction(x.terms.get(g, 0)) for g in keys) for x in b]
    return spans_equal(va, vb)


# ---------------------------------------------------------------------------
# tensor of a group ring with a coefficient ring


class TensorElement:
    """Element of (group ring) tensor (coefficient ring): finitely many
    group elements with coefficients in the second factor."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: "TensorRing", terms: Mapping[tuple, object]):
        clean = {}
        for g, kappa in terms.items():
            if kappa != ring.coeff_zero:
                clean[ring.base.group.reduce(g)] = kappa
        self.ring = ring
        self.terms = clean

    def _like(self, other) -> "TensorElement":
        if isinstance(other, TensorElement) and other.ring is self.ring:
            return other
        raise TypeError(f"cannot combine tensor element with {other!r}")

    def __add__(self, other):
        o = self._like(other)
        terms = dict(self.terms)
        for g, kappa in o.terms.items():
            terms[g] = terms[g] + kappa if g in terms else kappa
        return TensorElement(self.ring, terms)

    def __sub__(self, other):
        return self + (-self._like(other))

    def __neg__(self):
        return TensorElement(self.ring, {g: -k for g, k in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TensorElement(
                self.ring, {g: other * k for g, k in self.terms.items()})
        o = self._like(other)
        group = self.ring.base.group
        terms: dict[tuple, object] = {}
        for g, kappa in self.terms.items():
            for h, mu in o.terms.items():
                key = group.add(g, h)
                piece = kappa * mu
                terms[key] = terms[key] + piece if key in terms else piece
        return TensorElement(self.ring, terms)

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return TensorElement(self.ring, {g: c * k for g, k in self.terms.items()})
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError(f"negative power {n} on a tensor element")
        out = self.ring.one
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return (isinstance(other, TensorElement) and other.ring is self.ring
                and self.terms == other.terms)

    __hash__ = None

    def __repr__(self):
        if not self.terms:
            return "0"
        group = self.ring.base.group
        parts = []
        for g in sorted(self.terms, reverse=True):
            factors = [group.generator_name(i) + (f"^{e}" if e != 1 else "")
                       for i, e in enumerate(g) if e]
            mono = "*".join(factors) if factors else "1"
            parts.append(f"{mono}(x)({self.terms[g]!r})")
        return " + ".join(parts)


class TensorRing:
    """Group ring tensored with a unital coefficient ring.

    The operations treat a summand g(x)kappa as the product of the line
    g and the coefficient kappa: its operation series has k-th term
    g^k (x) lam_k(kappa), and the series of a sum is the product of the
    series of its summands.
    """

    def __init__(self, base: GroupRing, coeff: LambdaRingSpec, name: str | None = None):
        if not coeff.has_unit:
            raise ValueError("tensor coefficients need a unit")
        self.base = base
        self.coeff = coeff
        self.coeff_zero = coeff.zero
        self.name = name or f"{base.name}(x){coeff.name}"
        self.zero = TensorElement(self, {})
        self.one = TensorElement(self, {base.group.identity(): coeff.one})

    def monomial(self, exps: Sequence[int], kappa) -> TensorElement:
        return TensorElement(self, {tuple(exps): kappa})

    def lam(self, k: int, x: TensorElement) -> TensorElement:
        if k < 0:
            raise ValueError(f"operation index must be >= 0, got {k}")
        if k == 0:
            return self.one
        group = self.base.group
        series = unit_series(k, self.zero, self.one, ring=self.name)
        for g, kappa in sorted(x.terms.items()):
            coeffs = [self.one]
            for i in range(1, k + 1):
                coeffs.append(
                    TensorElement(
                        self, {group.scale(g, i): self.coeff.lam_checked(i, kappa)}))
            series = series * TruncSeries(k, coeffs, ring=self.name)
        return series.coeffs[k]

    def eps(self, x: TensorElement):
        if self.coeff.eps is None:
            raise ValueError(f"coefficient ring {self.coeff.name} has no rank map")
        total = 0
        for kappa in x.terms.values():
            total = total + self.coeff.eps(kappa)
        return total

    def spec(self) -> LambdaRingSpec:
        eps = None if self.coeff.eps is None else self.eps
        return LambdaRingSpec(
            name=self.name, has_unit=True, lam=self.lam,
            zero=self.zero, one=self.one, eps=eps)


def tensor_lambda_ring(base: GroupRing, coeff: LambdaRingSpec) -> TensorRing:
    return TensorRing(base, coeff)


# ---------------------------------------------------------------------------
# truncated monoid representation ring


class MonoidRepRing:
    """Polynomial classes a1..aN, b1..bN recording the exterior powers of
    the two standard classes of a product monoid, with operations
    computed by splitting each standard class into N lines.

    Elements are polynomials over (a1..aN, b1..bN); the weight of ai and
    bi is i, and basis(d) lists the monomials of weight at most d.
    """

    def __init__(self, n: int):
        if n < 1:
            raise ValueError(f"need at least one line, got {n}")
        self.n = n
        self.avars = tuple(f"a{i}" for i in range(1, n + 1))
        self.bvars = tuple(f"b{i}" for i in range(1, n + 1))
        self.variables = self.avars + self.bvars
        self.xvars = tuple(f"x{i}" for i in range(1, n + 1))
        self.yvars = tuple(f"y{i}" for i in range(1, n + 1))
        self.split_vars = self.xvars + self.yvars
        self.one = LaurentPoly.const(self.variables, 1)
        self.zero = LaurentPoly.zero(self.variables)

    def basis(self, d: int) -> list[LaurentPoly]:
        return [LaurentPoly(self.variables, {exps: 1})
                for exps in self._bounded_monomials(d)]

    def _bounded_monomials(self, d: int) -> list[tuple[int, ...]]:
        per_var = [i % self.n + 1 for i in range(2 * self.n)]
        results: list[tuple[int, ...]] = []

        def grow(i: int, acc: list[int], weight: int):
            if i == 2 * self.n:
                results.append(tuple(acc))
                return
            w = per_var[i]
            e = 0
            while weight + w * e <= d:
                grow(i + 1, acc + [e], weight + w * e)
                e += 1

        grow(0, [], 0)
        return sorted(results, key=lambda t: (sum(t), t))

    def _split(self, p: LaurentPoly) -> LaurentPoly:
        xs = [LaurentPoly.var(self.split_vars, v) for v in self.xvars]
        ys = [LaurentPoly.var(self.split_vars, v) for v in self.yvars]
        values: dict[str, LaurentPoly] = {}
        for i in range(1, self.n + 1):
            values[f"a{i}"] = elementary_symmetric(xs, i)
            values[f"b{i}"] = elementary_symmetric(ys, i)
        return p.substitute(values, self.split_vars)

    def _unsplit(self, q: LaurentPoly) -> LaurentPoly:
        blocks = {"a": list(self.xvars), "b": list(self.yvars)}
        return decompose_symmetric(q, blocks)

    def lam(self, k: int, p: LaurentPoly) -> LaurentPoly:
        """Operation on a class: split into line monomials, take the
        series product of (1 + monomial t)^coefficient, read the t^k
        term, and rewrite in the generators."""
        if k < 0:
            raise ValueError(f"operation index must be >= 0, got {k}")
        if k == 0:
            return self.one
        f = self._split(p)
        one = LaurentPoly.const(self.split_vars, 1)
        zero = LaurentPoly.zero(self.split_vars)
        series = unit_series(k, zero, one, ring="split")
        for exps, c in f.sorted_terms():
            mono = LaurentPoly(self.split_vars, {exps: 1})
            line = TruncSeries(k, [one, mono] + [zero] * (k - 1), ring="split")
            if isinstance(c, int):
                series = series * line.pow_int(c)
            else:
                series = series * line.pow_frac(c)
        return self._unsplit(series.coeffs[k])

    def substitute_classes(self, p: LaurentPoly, a_images: Sequence,
                           b_images: Sequence, one):
        """Evaluate a class after sending ai and bi to the listed images
        (the i-th operation values of two target classes)."""
        if len(a_images) != self.n or len(b_images) != self.n:
            raise ValueError(
                f"need {self.n} images per standard class, got "
                f"{len(a_images)} and {len(b_images)}")
        assignment = {f"a{i + 1}": img for i, img in enumerate(a_images)}
        assignment.update({f"b{i + 1}": img for i, img in enumerate(b_images)})
        return p.eval_at_with_zero(assignment, one, (0) * one)
