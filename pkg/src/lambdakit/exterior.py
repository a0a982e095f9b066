"""Exterior powers: compound matrices, flagged exterior powers with
their product/projection/exact-sequence structure maps, and derived
exterior powers of bounded complexes.

The flagged exterior power of a flag of coordinate subspaces
span(e_0..e_{r_1-1}) into span(e_0..e_{r_2-1}) into ... has basis the
wedges e_{i_1} ^ ... ^ e_{i_k} with i_1 < ... < i_k and i_j < r_j; a
decomposable tensor maps to its signed straightening.  The derived
exterior power of a complex applies the levelwise exterior power to the
two-directional denormalized embedding, renormalizes, and totalizes;
only the Euler characteristic and the homology of the small normalized
output survive, but the intermediate levels are where the work happens.
"""

from __future__ import annotations

import itertools
from math import comb
from typing import Mapping, Sequence

from .complexes import ChainComplex, check_chain_map, euler_char, trim
from .doldkan import MixedObject, embed_i, normalize_mixed, tot
from .intmat import IntMatrix, kernel_basis, solve_columns


def exterior_basis(n: int, k: int) -> list[tuple[int, ...]]:
    """Strictly increasing k-tuples from range(n), in order."""
    return list(itertools.combinations(range(n), k))


def exterior_power_matrix(a: IntMatrix, k: int) -> IntMatrix:
    """Compound matrix: the action on wedges of basis vectors, rows and
    columns indexed by exterior_basis of the respective dimensions.
    Functorial: the compound of a product is the product of compounds."""
    rows = exterior_basis(a.rows, k)
    row_index = {t: i for i, t in enumerate(rows)}
    cols = exterior_basis(a.cols, k)
    sparse = [[(i, a[i, j]) for i in range(a.rows) if a[i, j]]
              for j in range(a.cols)]
    data = [[0] * len(cols) for _ in range(len(rows))]
    for cj, pick in enumerate(cols):
        # expand the wedge of the picked columns term by term
        terms = {(): 1}
        for j in pick:
            nxt = {}
            for chosen, coeff in terms.items():
                for i, v in sparse[j]:
                    if i in chosen:
                        continue
                    pos = sum(1 for c in chosen if c < i)
                    sign = -1 if (len(chosen) - pos) % 2 else 1
                    key = tuple(sorted(chosen + (i,)))
                    val = nxt.get(key, 0) + sign * coeff * v
                    if val:
                        nxt[key] = val
                    elif key in nxt:
                        del nxt[key]
            terms = nxt
        for key, coeff in terms.items():
            data[row_index[key]][cj] = coeff
    return IntMatrix(data, rows=len(rows), cols=len(cols))


class FlaggedModule:
    """A flag of coordinate subspaces of Z^(dims[-1]) with non-decreasing
    dimensions; step j is spanned by the first dims[j] basis vectors."""

    __slots__ = ("dims",)

    def __init__(self, dims: Sequence[int]):
        self.dims = tuple(int(d) for d in dims)
        if not self.dims:
            raise ValueError("a flag needs at least one step")
        if any(d < 0 for d in self.dims):
            raise ValueError("negative flag dimension")
        if any(a > b for a, b in zip(self.dims, self.dims[1:])):
            raise ValueError(f"flag dimensions must be non-decreasing, got {self.dims}")

    @property
    def length(self) -> int:
        return len(self.dims)

    def subquotient_rank(self, i: int, j: int) -> int:
        """Rank of step j modulo step i (steps numbered from 1; 0 is the
        zero subspace)."""
        top = self.dims[j - 1]
        bottom = self.dims[i - 1] if i else 0
        return top - bottom

    def __repr__(self):
        return f"FlaggedModule{self.dims}"


def flag_basis(dims: Sequence[int]) -> list[tuple[int, ...]]:
    """Wedge basis of the flagged exterior power: increasing tuples with
    the j-th entry below dims[j]."""
    out = []

    def grow(prefix: tuple[int, ...], j: int) -> None:
        if j == len(dims):
            out.append(prefix)
            return
        start = prefix[-1] + 1 if prefix else 0
        for i in range(start, dims[j]):
            grow(prefix + (i,), j + 1)

    grow((), 0)
    return out


def straighten(entries: Sequence[int]) -> tuple[tuple[int, ...], int] | None:
    """Sort a wedge of distinct basis indices, returning (sorted tuple,
    sign); None when two entries coincide."""
    if len(set(entries)) != len(entries):
        return None
    order = tuple(sorted(entries))
    inversions = sum(1 for x, y in itertools.combinations(entries, 2) if x > y)
    return order, (-1 if inversions % 2 else 1)


def flag_exterior(f: FlaggedModule) -> tuple[list[tuple[int, ...]], IntMatrix]:
    """Basis of the flagged exterior power together with the quotient
    map from the tensor product of the flag steps (tensor basis in
    Kronecker order, later factors fastest)."""
    basis = flag_basis(f.dims)
    index = {t: i for i, t in enumerate(basis)}
    cols = 1
    for d in f.dims:
        cols *= d
    data = [[0] * cols for _ in range(len(basis))]
    for cj, pick in enumerate(itertools.product(*(range(d) for d in f.dims))):
        hit = straighten(pick)
        if hit is None:
            continue
        order, sign = hit
        data[index[order]][cj] = sign
    return basis, IntMatrix(data, rows=len(basis), cols=cols)


# ---------------------------------------------------------------------------
# the flag structure maps


def e1_product(first: FlaggedModule, second: FlaggedModule) -> IntMatrix:
    """Wedge product of flagged exterior powers: from the tensor of the
    two (second factor's index fastest) to the power of the
    concatenated flag, by signed straightening."""
    if first.dims[-1] > second.dims[0]:
        raise ValueError(
            f"flags do not concatenate: step of dimension {first.dims[-1]} "
            f"cannot precede one of dimension {second.dims[0]}")
    combined = FlaggedModule(first.dims + second.dims)
    b1 = flag_basis(first.dims)
    b2 = flag_basis(second.dims)
    target = flag_basis(combined.dims)
    index = {t: i for i, t in enumerate(target)}
    data = [[0] * (len(b1) * len(b2)) for _ in range(len(target))]
    for c1, left in enumerate(b1):
        for c2, right in enumerate(b2):
            hit = straighten(left + right)
            if hit is None:
                continue
            order, sign = hit
            data[index[order]][c1 * len(b2) + c2] = sign
    return IntMatrix(data, rows=len(target), cols=len(b1) * len(b2))


def _split_projection(dims: Sequence[int], split: int, cut: int) -> IntMatrix:
    """Project the flagged power of dims onto (power of the first split
    steps) tensor (power of the remaining steps modulo the first cut
    coordinates); a wedge survives only when its tail avoids the cut."""
    src = flag_basis(dims)
    head = flag_basis(dims[:split])
    head_index = {t: i for i, t in enumerate(head)}
    quot = flag_basis(tuple(d - cut for d in dims[split:]))
    quot_index = {t: i for i, t in enumerate(quot)}
    data = [[0] * len(src) for _ in range(len(head) * len(quot))]
    for cj, pick in enumerate(src):
        if any(i >= cut for i in pick[:split]):
            continue
        tail = pick[split:]
        if any(i < cut for i in tail):
            continue
        row = head_index[pick[:split]] * len(quot) \
            + quot_index[tuple(i - cut for i in tail)]
        data[row][cj] = 1
    return IntMatrix(data, rows=len(head) * len(quot), cols=len(src))


def e2_projection(flag: FlaggedModule, split: int) -> IntMatrix:
    """Projection of the flagged power onto (power of the first split
    steps) tensor (power of the tail steps modulo the split-th step)."""
    if not 1 <= split <= flag.length:
        raise ValueError(f"split {split} outside 1..{flag.length}")
    return _split_projection(flag.dims, split, flag.dims[split - 1])


def quotient_power(flag: FlaggedModule, cut: int) -> IntMatrix:
    """Map induced on flagged powers by quotienting out the first cut
    coordinates from every step."""
    if cut > flag.dims[0]:
        raise ValueError(
            f"cut {cut} exceeds the first step dimension {flag.dims[0]}")
    return _split_projection(flag.dims, 0, cut)


def e5_sequence(flag: FlaggedModule, k: int) -> tuple[IntMatrix, IntMatrix]:
    """For a flag read as k head steps, two middle steps W1 <= W2, and a
    tail: the inclusion (power with W2 dropped) -> (power with W1
    dropped) and the projection of the latter onto (power of the head)
    tensor (power of the W2-and-tail flag modulo W1).  The two form a
    short exact sequence."""
    if flag.length < k + 2:
        raise ValueError(
            f"flag of length {flag.length} has no two middle steps after {k}")
    dims = flag.dims
    w1 = dims[k]
    dims_a = dims[:k] + (w1,) + dims[k + 2:]
    dims_b = dims[:k] + dims[k + 1:]
    basis_a = flag_basis(dims_a)
    basis_b = flag_basis(dims_b)
    index_b = {t: i for i, t in enumerate(basis_b)}
    incl = [[0] * len(basis_a) for _ in range(len(basis_b))]
    for cj, pick in enumerate(basis_a):
        incl[index_b[pick]][cj] = 1
    proj = _split_projection(dims_b, k, w1)
    return (IntMatrix(incl, rows=len(basis_b), cols=len(basis_a)), proj)


# ---------------------------------------------------------------------------
# derived exterior powers


def _levelwise_power(x: MixedObject, k: int) -> MixedObject:
    ranks = {pq: comb(r, k) for pq, r in x.ranks.items()}
    power = lambda maps: {key: exterior_power_matrix(m, k)
                          for key, m in maps.items()}
    return MixedObject(x.p_top, x.q_top, ranks,
                       power(x.vfaces), power(x.vdegens),
                       power(x.hfaces), power(x.hdegens))


def derived_lambda(k: int, key: ChainComplex, level_budget: int | None = None,
                   paranoid: bool = False) -> ChainComplex:
    """Derived exterior power of a bounded complex of free modules:
    exterior power applied levelwise to the two-directional embedding,
    renormalized and totalized.  Supported in degrees k*lo..k*hi; the
    needed truncation is k times the one-sided amplitude in each
    direction, by the cross-effect vanishing bound.  paranoid computes
    one extra level per active direction and checks that its normalized
    part vanishes."""
    if k < 0:
        raise ValueError("negative exterior power")
    if k == 0:
        return ChainComplex(0, 0, {0: 1})
    q_need = k * max(-key.lo, 0)
    p_need = k * max(key.hi, 0)
    if level_budget is not None and max(p_need, q_need) > level_budget:
        raise ValueError(
            f"level budget {level_budget} exceeded: need "
            f"{max(p_need, q_need)} levels")
    q_top = q_need + (1 if paranoid and q_need else 0)
    p_top = p_need + (1 if paranoid and p_need else 0)
    x = embed_i(key, p_levels=max(p_top, max(key.hi, 0)),
                q_levels=max(q_top, max(-key.lo, 0)))
    d = normalize_mixed(_levelwise_power(x, k))
    if paranoid:
        for (i, j), r in d.ranks.items():
            if r and (-i > q_need or j > p_need):
                raise RuntimeError(
                    f"normalized part does not vanish at level ({j}, {-i})")
    return trim(tot(d))


def quotient_complex(sub: ChainComplex, total: ChainComplex,
                     incl: Mapping[int, IntMatrix],
                     split: Mapping[int, IntMatrix]) -> ChainComplex:
    """Quotient of a degreewise-split inclusion of complexes, presented
    on the canonical basis of each degree's splitting kernel.  The
    inclusion must be a chain map and split o incl the identity."""
    incl = check_chain_map(sub, total, dict(incl))
    comp = {}
    for n in total.degrees():
        s = split.get(n, IntMatrix.zero(sub.rank(n), total.rank(n)))
        if s * incl[n] != IntMatrix.identity(sub.rank(n)):
            raise ValueError(f"mono is not split in degree {n}")
        ker = kernel_basis(s)
        basis = IntMatrix.from_columns(
            [incl[n].column(j) for j in range(incl[n].cols)]
            + [ker.column(j) for j in range(ker.cols)], total.rank(n))
        if basis.rows != basis.cols or (basis.rows and abs(basis.det()) != 1):
            raise ValueError(
                f"splitting does not decompose degree {n} into a direct sum")
        comp[n] = (ker, basis)
    ranks = {n: comp[n][0].cols for n in total.degrees()}
    diffs = {}
    for n in range(total.lo, total.hi):
        ker, _ = comp[n]
        coeff = solve_columns(comp[n + 1][1], total.diff(n) * ker)
        diffs[n] = IntMatrix(
            [coeff.data[sub.rank(n + 1) + r] for r in range(ranks[n + 1])],
            rows=ranks[n + 1], cols=ranks[n])
    return ChainComplex(total.lo, total.hi, ranks, diffs)


def additivity_check(sub: ChainComplex, total: ChainComplex,
                     incl: Mapping[int, IntMatrix],
                     split: Mapping[int, IntMatrix], m: int,
                     level_budget: int | None = None) -> bool:
    """Euler-characteristic shadow of additivity for a degreewise-split
    subcomplex: chi of the m-th derived power of the total must equal
    the convolution of the sub's and quotient's derived-power chis."""
    quot = quotient_complex(sub, total, incl, split)
    lhs = euler_char(derived_lambda(m, total, level_budget))
    rhs = sum(euler_char(derived_lambda(j, sub, level_budget))
              * euler_char(derived_lambda(m - j, quot, level_budget))
              for j in range(m + 1))
    return lhs == rhs
