"""Gamma operations, Adams operations, and the induced filtration.

The gamma operations are the binomial rewrites of the lambda operations
(index shifted by the rank of the unit); Adams operations come from the
alternating Newton recursion.  On a finite-dimensional rational algebra
the filtration generated by gamma values of rank-zero elements is
computed by saturation: each stage is spanned by gamma values multiplied
into the previous stages, with generator indices capped and the cap
certified by a stability check.

Eigenspace decomposition uses Lagrange projectors after confirming that
the Adams matrix is annihilated by the product of its expected linear
factors; the minimal polynomial is reported otherwise.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Any, Callable, Mapping, Sequence

from .intmat import in_span, rref, span_basis
from .lambdaring import LambdaRingSpec


def gamma(ring: LambdaRingSpec, k: int, x):
    """Gamma operation: the binomial combination
    sum_j C(k-1, k-j) lam_j(x) for k >= 1; index 0 gives the unit and
    needs one."""
    if k < 0:
        raise ValueError(f"gamma index must be >= 0, got {k}")
    if k == 0:
        if not ring.has_unit:
            raise ValueError(
                f"gamma index 0 needs a unit, and {ring.name} has none")
        return ring.one
    acc = ring.lam_checked(k, x)
    for j in range(1, k):
        c = comb(k - 1, k - j)
        if c:
            acc = acc + c * ring.lam_checked(j, x)
    return acc


def adams(ring: LambdaRingSpec, k: int, x, mul: Callable = operator.mul):
    """Adams operation by the Newton recursion
    psi_k = lam_1 psi_{k-1} - lam_2 psi_{k-2} + ... + (-1)^(k+1) k lam_k,
    with psi_1 the identity.  mul overrides the ring product (a fiber
    with zero internal product degenerates the recursion to its last
    term)."""
    if k < 1:
        raise ValueError(f"Adams index must be >= 1, got {k}")
    psi = [None, x]
    for n in range(2, k + 1):
        sign = 1 if n % 2 == 1 else -1
        acc = (sign * n) * ring.lam_checked(n, x)
        for i in range(1, n):
            term = mul(ring.lam_checked(i, x), psi[n - i])
            acc = acc + term if i % 2 == 1 else acc - term
        psi.append(acc)
    return psi[k]


# ---------------------------------------------------------------------------
# finite-dimensional rational algebras with a filtration


@dataclass
class FilteredAlgebra:
    """Finite-dimensional rational algebra carrying operation access.

    basis lists carrier elements; to_coords maps any carrier element to
    rational coordinates in that basis; lam and mul evaluate operations
    and products on carrier elements.  degree_label marks which homotopy
    slot the algebra models (0 means the unital base).  The filtration
    field is populated by gamma_filtration.
    """

    name: str
    basis: tuple
    to_coords: Callable[[Any], tuple]
    lam: Callable[[int, Any], Any]
    eps: Callable[[Any], Any] | None
    mul: Callable[[Any, Any], Any] = operator.mul
    one: Any = None
    degree_label: int = 0
    filtration: list[list[tuple[Fraction, ...]]] | None = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, x) -> tuple[Fraction, ...]:
        return tuple(Fraction(c) for c in self.to_coords(x))

    def from_coords(self, vec: Sequence[Fraction]):
        acc = None
        for c, b in zip(vec, self.basis):
            term = c * b
            acc = term if acc is None else acc + term
        return acc

    def gamma_value(self, i: int, x):
        acc = self.lam(i, x)
        for j in range(1, i):
            c = comb(i - 1, i - j)
            if c:
                acc = acc + c * self.lam(j, x)
        return acc


def from_spec(spec: LambdaRingSpec, basis: Sequence, to_coords: Callable,
              mul: Callable = operator.mul, degree_label: int = 0,
              name: str | None = None) -> FilteredAlgebra:
    return FilteredAlgebra(
        name=name or spec.name, basis=tuple(basis), to_coords=to_coords,
        lam=spec.lam_checked, eps=spec.eps, mul=mul,
        one=spec.one if spec.has_unit else None, degree_label=degree_label)


def _kernel_elements(algebra: FilteredAlgebra) -> list:
    """Elements spanning the kernel of the rank map, as rational
    combinations of the basis."""
    eps = algebra.eps
    if eps is None:
        raise ValueError(f"{algebra.name} has no rank map; the filtration needs one")
    row = [Fraction(eps(b)) for b in algebra.basis]
    if all(c == 0 for c in row):
        return list(algebra.basis)
    pivot = next(i for i, c in enumerate(row) if c != 0)
    out = []
    for j in range(algebra.dim):
        if j == pivot:
            continue
        # basis_j - (eps_j / eps_pivot) basis_pivot
        coeff = row[j] / row[pivot]
        out.append(algebra.basis[j] + (-coeff) * algebra.basis[pivot])
    return out


def gamma_filtration(algebra: FilteredAlgebra, m_max: int) -> FilteredAlgebra:
    """Populate the descending filtration F^0 ... F^m_max.

    F^m is spanned by products of gamma values of rank-zero elements
    with index sum at least m.  The saturation runs over a kernel basis
    with generator index up to dim * m_max; afterwards the next dim
    indices are checked to confirm the span has stabilized.
    """
    if m_max < 0:
        raise ValueError(f"m_max must be >= 0, got {m_max}")
    kernel = _kernel_elements(algebra)
    cap = max(algebra.dim * m_max, 1)
    check_extra = algebra.dim

    values: dict[tuple[int, int], Any] = {}
    for ai, a in enumerate(kernel):
        for i in range(1, cap + check_extra + 1):
            values[(ai, i)] = algebra.gamma_value(i, a)

    filtration: list[list[tuple[Fraction, ...]]] = [
        span_basis([algebra.coords(b) for b in algebra.basis])
    ]
    for m in range(1, m_max + 1):
        vectors: list[tuple[Fraction, ...]] = []
        for ai in range(len(kernel)):
            for i in range(1, cap + 1):
                g = values[(ai, i)]
                if i >= m:
                    vectors.append(algebra.coords(g))
                prev = filtration[max(m - i, 0)]
                for w in prev:
                    vectors.append(algebra.coords(algebra.mul(g, algebra.from_coords(w))))
        filtration.append(span_basis(vectors))

    top = filtration[m_max] if m_max else filtration[0]
    for ai in range(len(kernel)):
        for i in range(cap + 1, cap + check_extra + 1):
            v = algebra.coords(values[(ai, i)])
            if not in_span(v, top):
                raise RuntimeError(
                    f"saturation cap {cap} too small for {algebra.name}: "
                    f"gamma index {i} escapes stage {m_max}")

    algebra.filtration = filtration
    return algebra


def graded_dimension(algebra: FilteredAlgebra, j: int) -> int:
    f = algebra.filtration
    if f is None or len(f) <= j + 1:
        raise ValueError(
            f"filtration of {algebra.name} is not populated through stage {j + 1}")
    return len(f[j]) - len(f[j + 1])


def filtration_table(algebra: FilteredAlgebra) -> str:
    """Aligned text table with columns m, dim F^m, dim gr^m."""
    f = algebra.filtration
    if f is None:
        raise ValueError(f"filtration of {algebra.name} is not populated")
    rows = [("m", "dim F^m", "dim gr^m")]
    for m in range(len(f)):
        gr = str(len(f[m]) - len(f[m + 1])) if m + 1 < len(f) else "-"
        rows.append((str(m), str(len(f[m])), gr))
    widths = [max(len(r[c]) for r in rows) for c in range(3)]
    lines = ["  ".join(cell.rjust(widths[c]) for c, cell in enumerate(row))
             for row in rows]
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# concrete carriers


def rational_group_algebra(ring, name: str | None = None) -> FilteredAlgebra:
    """Group ring with rational coefficients as a filtered algebra."""
    keys = sorted(ring.group.elements())
    basis = [ring.monomial(g) for g in keys]

    def to_coords(x):
        return tuple(Fraction(x.terms.get(g, 0)) for g in keys)

    return from_spec(ring.spec(), basis, to_coords,
                     name=name or f"{ring.name}(x)Q")


def truncated_polynomial_algebra(ring) -> FilteredAlgebra:
    basis = [ring.generator() ** j for j in range(ring.power)]

    def to_coords(x):
        return tuple(Fraction(c) for c in x.coeffs)

    return from_spec(ring.spec(), basis, to_coords, name=ring.name)


def zero_product_fiber_algebra(ring, fiber_spec, degree_label: int,
                               name: str | None = None) -> FilteredAlgebra:
    """Augmentation ideal of a group ring, rational coefficients, zero
    internal product, as the model of a positive homotopy slot."""
    identity = ring.group.identity()
    keys = sorted(g for g in ring.group.elements() if g != identity)
    basis = [ring.monomial(g) - ring.one for g in keys]
    zero = ring.zero

    def to_coords(x):
        if x.coefficient_sum() != 0:
            raise ValueError(f"{x!r} is not in the augmentation ideal")
        return tuple(Fraction(x.terms.get(g, 0)) for g in keys)

    return FilteredAlgebra(
        name=name or f"I({ring.name})(x)Q", basis=tuple(basis),
        to_coords=to_coords, lam=fiber_spec.lam_checked,
        eps=lambda x: 0, mul=lambda a, b: zero, one=None,
        degree_label=degree_label)


# ---------------------------------------------------------------------------
# graded pieces and the cohomology accessor


@dataclass(frozen=True)
class GradedPiece:
    slot: int
    weight: int
    dimension: int
    representatives: tuple[tuple[Fraction, ...], ...]


def absolute_cohomology(family: Mapping[int, FilteredAlgebra], i: int,
                        j: int) -> GradedPiece:
    """Weight-j graded piece of the slot n = 2j - i of the family."""
    n = 2 * j - i
    if n not in family:
        raise ValueError(f"π_{n} not modeled")
    algebra = family[n]
    if j < 0:
        # F^j is the whole space for j <= 0, so negative weights vanish
        return GradedPiece(slot=n, weight=j, dimension=0, representatives=())
    if algebra.filtration is None or len(algebra.filtration) <= j + 1:
        gamma_filtration(algebra, j + 1)
    f = algebra.filtration
    reps = []
    current = list(f[j + 1])
    for v in f[j]:
        if not in_span(v, span_basis(current)):
            reps.append(v)
            current.append(v)
    return GradedPiece(slot=n, weight=j, dimension=len(f[j]) - len(f[j + 1]),
                       representatives=tuple(reps))


def chern_class(aug, i: int, j: int, alpha, beta):
    """Class gamma_j of the rank-normalized pair (alpha - rank, beta) in
    the augmented ring; the label i only records the cohomological
    degree."""
    base_spec = aug.base
    if base_spec.eps is None:
        raise ValueError(f"{base_spec.name} has no rank map; classes need one")
    rank = base_spec.eps(alpha)
    normalized = alpha + (-rank) * base_spec.one
    pair = aug.pair(normalized, beta)
    if j == 0:
        return aug.one
    spec = aug.spec()
    return gamma(spec, j, pair)


# ---------------------------------------------------------------------------
# eigenspace decomposition for Adams operations


def _adams_matrix(algebra: FilteredAlgebra, k: int) -> list[list[Fraction]]:
    spec_like = LambdaRingSpec(
        name=algebra.name, has_unit=algebra.one is not None,
        lam=algebra.lam, zero=None, one=algebra.one)
    cols = []
    for b in algebra.basis:
        cols.append(algebra.coords(adams(spec_like, k, b, mul=algebra.mul)))
    n = algebra.dim
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def _mat_mul(a, b):
    n = len(a)
    return [[sum(a[i][t] * b[t][j] for t in range(n)) for j in range(n)]
            for i in range(n)]


def _mat_sub_scalar(a, c):
    n = len(a)
    return [[a[i][j] - (c if i == j else 0) for j in range(n)] for i in range(n)]


def _minimal_polynomial(m) -> str:
    n = len(m)
    powers = [[[Fraction(1) if i == j else Fraction(0) for j in range(n)]
               for i in range(n)]]
    while True:
        powers.append(_mat_mul(powers[-1], m))
        vectors = [tuple(p[i][j] for i in range(n) for j in range(n))
                   for p in powers]
        _, reduced = rref([list(v) for v in vectors[:-1]])
        if in_span(vectors[-1], [tuple(r) for r in reduced]):
            break
    deg = len(powers) - 1
    rows = [list(v) for v in
            (tuple(p[i][j] for i in range(n) for j in range(n)) for p in powers[:-1])]
    target = [powers[-1][i][j] for i in range(n) for j in range(n)]
    # solve sum c_d M^d = M^deg
    aug_rows = [row + [t] for row, t in zip(map(list, zip(*rows)), target)]
    _, red = rref([[Fraction(x) for x in r] for r in aug_rows])
    coeffs = [Fraction(0)] * deg
    for r in red:
        lead = next(i for i, c in enumerate(r) if c != 0)
        if lead < deg:
            coeffs[lead] = r[-1]
    terms = [f"x^{deg}"]
    for d in range(deg - 1, -1, -1):
        c = -coeffs[d]
        if c:
            terms.append(f"{'+' if c > 0 else '-'} {abs(c)}*x^{d}")
    return " ".join(terms)


@dataclass(frozen=True)
class EigenComponent:
    weight: int
    vector: tuple[Fraction, ...]


def adams_eigenspace(algebra: FilteredAlgebra, x, k: int) -> list[EigenComponent]:
    """Decompose x into eigenvectors of the k-th Adams operation with
    eigenvalues k^0, ..., k^dim, via Lagrange projection.  Raises when
    the operation has an unexpected eigenvalue, reporting the minimal
    polynomial."""
    if k < 2:
        raise ValueError(f"eigenspace decomposition needs k >= 2, got {k}")
    m = _adams_matrix(algebra, k)
    n = algebra.dim
    eigen = [k ** t for t in range(n + 1)]

    annihilator = [[Fraction(1) if i == j else Fraction(0) for j in range(n)]
                   for i in range(n)]
    for ev in eigen:
        annihilator = _mat_mul(annihilator, _mat_sub_scalar(m, ev))
    if any(c for row in annihilator for c in row):
        raise ValueError(
            f"Adams operation {k} on {algebra.name} has an unexpected "
            f"eigenvalue; minimal polynomial {_minimal_polynomial(m)}")

    xv = list(algebra.coords(x))
    components: list[EigenComponent] = []
    for t, ev in enumerate(eigen):
        vec = [Fraction(c) for c in xv]
        for s, other in enumerate(eigen):
            if s == t:
                continue
            image = [sum(m[i][j] * vec[j] for j in range(n)) for i in range(n)]
            vec = [(image[i] - other * vec[i]) / (ev - other) for i in range(n)]
        if any(vec):
            components.append(EigenComponent(weight=t, vector=tuple(vec)))

    total = [sum(c.vector[i] for c in components) for i in range(n)]
    if total != [Fraction(c) for c in xv]:
        raise RuntimeError("eigen components do not sum back to the input")
    for c in components:
        image = [sum(m[i][j] * c.vector[j] for j in range(n)) for i in range(n)]
        if image != [k ** c.weight * v for v in c.vector]:
            raise RuntimeError(f"component of weight {c.weight} is not an eigenvector")
    return components
