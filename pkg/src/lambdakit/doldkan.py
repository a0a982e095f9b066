"""Dold-Kan machinery: simplicial and cosimplicial modules over the
integers, normalization and denormalization in both directions, mixed
two-directional objects, totalization, and the shuffle/front-back-face
pairings.

Normalization N takes the common kernel of the front face maps with the
signed last face as differential; it is computed through the idempotent
projector built from the factors (1 - s_i d_i), whose image is exactly
that kernel, so everything stays in exact integer arithmetic.
Denormalization DN rebuilds level n as a sum over monotone surjections
out of [n].  With the canonical lattice bases used here the composite
N(DN(C)) returns C on the nose, and DN(N(X)) is isomorphic to X through
an explicit level-wise unimodular map.

A MixedObject is cosimplicial in its first index and simplicial in its
second; normalizing both directions yields a second-quadrant double
complex, and tot collapses that to a single complex with the vertical
differential twisted by (-1)^i in column i.  embed_i splits a two-sided
complex at degree zero, denormalizes each half in its own direction,
and satisfies tot(normalize_mixed(embed_i(K))) == K.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Mapping, Sequence

from .complexes import ChainComplex, check_chain_map, tensor_complex, tensor_summands
from .intmat import IntMatrix, hermite_columns, kernel_basis, kronecker, solve_columns


class SimplicialModule:
    """Levels 0..top of free modules with face and degeneracy matrices.

    faces is keyed by (n, i) for the map d_i from level n to level n-1,
    degens by (n, j) for s_j from level n to level n+1.  All simplicial
    identities are checked exactly on construction.
    """

    __slots__ = ("top", "ranks", "faces", "degens")

    def __init__(self, ranks: Sequence[int], faces: Mapping, degens: Mapping):
        if not ranks:
            raise ValueError("a simplicial module needs at least level 0")
        self.top = len(ranks) - 1
        self.ranks = tuple(int(r) for r in ranks)
        if any(r < 0 for r in self.ranks):
            raise ValueError("negative rank")
        self.faces = dict(faces)
        self.degens = dict(degens)
        for n in range(1, self.top + 1):
            for i in range(n + 1):
                m = self.faces.get((n, i))
                if m is None:
                    raise ValueError(f"missing face d_{i} at level {n}")
                if (m.rows, m.cols) != (self.rank(n - 1), self.rank(n)):
                    raise ValueError(
                        f"face d_{i} at level {n} has shape {m.rows}x{m.cols}, "
                        f"expected {self.rank(n - 1)}x{self.rank(n)}")
        for n in range(self.top):
            for j in range(n + 1):
                m = self.degens.get((n, j))
                if m is None:
                    raise ValueError(f"missing degeneracy s_{j} at level {n}")
                if (m.rows, m.cols) != (self.rank(n + 1), self.rank(n)):
                    raise ValueError(
                        f"degeneracy s_{j} at level {n} has shape "
                        f"{m.rows}x{m.cols}, expected "
                        f"{self.rank(n + 1)}x{self.rank(n)}")
        self._check_identities()

    def rank(self, n: int) -> int:
        if 0 <= n <= self.top:
            return self.ranks[n]
        return 0

    def face(self, n: int, i: int) -> IntMatrix:
        return self.faces[(n, i)]

    def degen(self, n: int, j: int) -> IntMatrix:
        return self.degens[(n, j)]

    def _check_identities(self) -> None:
        ident = IntMatrix.identity
        for n in range(2, self.top + 1):
            for j in range(1, n + 1):
                for i in range(j):
                    if (self.face(n - 1, i) * self.face(n, j)
                            != self.face(n - 1, j - 1) * self.face(n, i)):
                        raise ValueError(
                            f"simplicial identity d_{i} d_{j} = "
                            f"d_{j - 1} d_{i} fails at level {n}")
        for n in range(self.top):
            for j in range(n + 1):
                for i in range(n + 2):
                    got = self.face(n + 1, i) * self.degen(n, j)
                    if i < j:
                        want = self.degen(n - 1, j - 1) * self.face(n, i)
                        name = f"d_{i} s_{j} = s_{j - 1} d_{i}"
                    elif i in (j, j + 1):
                        want = ident(self.rank(n))
                        name = f"d_{i} s_{j} = id"
                    else:
                        want = self.degen(n - 1, j) * self.face(n, i - 1)
                        name = f"d_{i} s_{j} = s_{j} d_{i - 1}"
                    if got != want:
                        raise ValueError(
                            f"simplicial identity {name} fails at level {n}")
        for n in range(self.top - 1):
            for j in range(n + 1):
                for i in range(j + 1):
                    if (self.degen(n + 1, i) * self.degen(n, j)
                            != self.degen(n + 1, j + 1) * self.degen(n, i)):
                        raise ValueError(
                            f"simplicial identity s_{i} s_{j} = "
                            f"s_{j + 1} s_{i} fails at level {n}")


class CosimplicialModule:
    """Levels 0..top with coface maps d^i raising the level and
    codegeneracies s^j lowering it; the dual identities are checked
    exactly on construction.

    cofaces is keyed by (n, i) for d^i from level n-1 to level n,
    codegens by (n, j) for s^j from level n+1 to level n.
    """

    __slots__ = ("top", "ranks", "cofaces", "codegens")

    def __init__(self, ranks: Sequence[int], cofaces: Mapping, codegens: Mapping):
        if not ranks:
            raise ValueError("a cosimplicial module needs at least level 0")
        self.top = len(ranks) - 1
        self.ranks = tuple(int(r) for r in ranks)
        if any(r < 0 for r in self.ranks):
            raise ValueError("negative rank")
        self.cofaces = dict(cofaces)
        self.codegens = dict(codegens)
        for n in range(1, self.top + 1):
            for i in range(n + 1):
                m = self.cofaces.get((n, i))
                if m is None:
                    raise ValueError(f"missing coface d^{i} into level {n}")
                if (m.rows, m.cols) != (self.rank(n), self.rank(n - 1)):
                    raise ValueError(
                        f"coface d^{i} into level {n} has shape "
                        f"{m.rows}x{m.cols}, expected "
                        f"{self.rank(n)}x{self.rank(n - 1)}")
        for n in range(self.top):
            for j in range(n + 1):
                m = self.codegens.get((n, j))
                if m is None:
                    raise ValueError(f"missing codegeneracy s^{j} onto level {n}")
                if (m.rows, m.cols) != (self.rank(n), self.rank(n + 1)):
                    raise ValueError(
                        f"codegeneracy s^{j} onto level {n} has shape "
                        f"{m.rows}x{m.cols}, expected "
                        f"{self.rank(n)}x{self.rank(n + 1)}")
        self._check_identities()

    def rank(self, n: int) -> int:
        if 0 <= n <= self.top:
            return self.ranks[n]
        return 0

    def coface(self, n: int, i: int) -> IntMatrix:
        return self.cofaces[(n, i)]

    def codegen(self, n: int, j: int) -> IntMatrix:
        return self.codegens[(n, j)]

    def _check_identities(self) -> None:
        ident = IntMatrix.identity
        for n in range(2, self.top + 1):
            for j in range(1, n + 1):
                for i in range(j):
                    if (self.coface(n, j) * self.coface(n - 1, i)
                            != self.coface(n, i) * self.coface(n - 1, j - 1)):
                        raise ValueError(
                            f"cosimplicial identity d^{j} d^{i} = "
                            f"d^{i} d^{j - 1} fails into level {n}")
        for n in range(self.top):
            for j in range(n + 1):
                for i in range(n + 2):
                    got = self.codegen(n, j) * self.coface(n + 1, i)
                    if i < j:
                        want = self.coface(n, i) * self.codegen(n - 1, j - 1)
                        name = f"s^{j} d^{i} = d^{i} s^{j - 1}"
                    elif i in (j, j + 1):
                        want = ident(self.rank(n))
                        name = f"s^{j} d^{i} = id"
                    else:
                        want = self.coface(n, i - 1) * self.codegen(n - 1, j)
                        name = f"s^{j} d^{i} = d^{i - 1} s^{j}"
                    if got != want:
                        raise ValueError(
                            f"cosimplicial identity {name} fails at level {n}")
        for n in range(self.top - 1):
            for j in range(n + 1):
                for i in range(j + 1):
                    if (self.codegen(n, j) * self.codegen(n + 1, i)
                            != self.codegen(n, i) * self.codegen(n + 1, j + 1)):
                        raise ValueError(
                            f"cosimplicial identity s^{j} s^{i} = "
                            f"s^{i} s^{j + 1} fails at level {n}")


# ---------------------------------------------------------------------------
# normalization


def _normal_inclusion_h(x: SimplicialModule, n: int) -> IntMatrix:
    """Canonical basis, as columns, of the common kernel of d_0..d_{n-1}
    at level n, computed as the image of the projector (1 - s_{n-1}
    d_{n-1}) ... (1 - s_0 d_0)."""
    r = x.rank(n)
    ident = IntMatrix.identity(r)
    p = ident
    for i in range(n):
        p = (ident - x.degen(n - 1, i) * x.face(n, i)) * p
    return hermite_columns(kernel_basis(ident - p))


def normalize_h(x: SimplicialModule) -> ChainComplex:
    """Normalized chain complex, placed in degrees -top..0 with the
    differential (-1)^n d_n in the canonical kernel bases."""
    incl = [_normal_inclusion_h(x, n) for n in range(x.top + 1)]
    ranks = {-n: incl[n].cols for n in range(x.top + 1)}
    diffs = {}
    for n in range(1, x.top + 1):
        coeff = solve_columns(incl[n - 1], x.face(n, n) * incl[n])
        diffs[-n] = -coeff if n % 2 else coeff
    return ChainComplex(-x.top, 0, ranks, diffs)


def _normal_inclusion_v(x: CosimplicialModule, n: int) -> IntMatrix:
    """Canonical basis of the common kernel of s^0..s^{n-1} at level n,
    via the projector (1 - d^0 s^0) ... (1 - d^{n-1} s^{n-1})."""
    r = x.rank(n)
    ident = IntMatrix.identity(r)
    p = ident
    for j in range(n):
        p = p * (ident - x.coface(n, j) * x.codegen(n - 1, j))
    return hermite_columns(kernel_basis(ident - p))


def normalize_v(x: CosimplicialModule) -> ChainComplex:
    """Normalized cochain complex in degrees 0..top with differential
    the alternating coface sum restricted to the codegeneracy kernels."""
    incl = [_normal_inclusion_v(x, n) for n in range(x.top + 1)]
    ranks = {n: incl[n].cols for n in range(x.top + 1)}
    diffs = {}
    for n in range(x.top):
        raw = IntMatrix.zero(x.rank(n + 1), incl[n].cols)
        for i in range(n + 2):
            term = x.coface(n + 1, i) * incl[n]
            raw = raw - term if i % 2 else raw + term
        diffs[n] = solve_columns(incl[n + 1], raw)
    return ChainComplex(0, x.top, ranks, diffs)


# ---------------------------------------------------------------------------
# denormalization


@lru_cache(maxsize=None)
def _surjections(n: int, m: int) -> tuple[tuple[int, ...], ...]:
    """Monotone surjections [n] -> [m] as value tuples of length n+1."""
    out = []
    for steps in itertools.combinations(range(1, n + 1), m):
        alpha, val = [0], 0
        for t in range(1, n + 1):
            if t in steps:
                val += 1
            alpha.append(val)
        out.append(tuple(alpha))
    return tuple(out)


def _dn_layout(ranks_by_m: Sequence[int], n: int):
    """Summands (m, alpha, offset, width) of denormalized level n; the
    identity summand, when present, comes last."""
    out, off = [], 0
    for m in range(min(n, len(ranks_by_m) - 1) + 1):
        w = ranks_by_m[m]
        if w == 0:
            continue
        for alpha in _surjections(n, m):
            out.append((m, alpha, off, w))
            off += w
    return out, off


def _epi_mono(comp: Sequence[int]) -> tuple[tuple[int, ...], list[int]]:
    """Factor a monotone map through its image: (surjective part, image)."""
    image = sorted(set(comp))
    index = {v: r for r, v in enumerate(image)}
    return tuple(index[v] for v in comp), image


def denormalize_h(c: ChainComplex, levels: int | None = None) -> SimplicialModule:
    """Simplicial module with level n the sum of c's terms over monotone
    surjections [n] -> [m]; a mono factor acts by the identity, by the
    signed differential when it omits exactly the top element, and by
    zero otherwise."""
    if c.hi > 0:
        raise ValueError(
            f"denormalization needs support in degrees <= 0, got degrees up to {c.hi}")
    m_top = -c.lo
    if levels is None:
        levels = m_top
    if levels < 0:
        raise ValueError("levels must be >= 0")
    ranks_by_m = [c.rank(-m) for m in range(m_top + 1)]
    layouts = [_dn_layout(ranks_by_m, n) for n in range(levels + 1)]
    level_rank = [total for _, total in layouts]
    faces, degens = {}, {}
    for n in range(1, levels + 1):
        pos = {(m, alpha): off for m, alpha, off, _ in layouts[n - 1][0]}
        for i in range(n + 1):
            data = [[0] * level_rank[n] for _ in range(level_rank[n - 1])]
            for m, alpha, off, w in layouts[n][0]:
                beta, image = _epi_mono(alpha[:i] + alpha[i + 1:])
                if len(image) == m + 1:
                    toff = pos[(m, beta)]
                    for s in range(w):
                        data[toff + s][off + s] = 1
                elif (len(image) == m and image == list(range(m))
                        and (m - 1, beta) in pos):
                    toff = pos[(m - 1, beta)]
                    block = c.diff(-m)
                    sign = -1 if m % 2 else 1
                    for r in range(block.rows):
                        for s in range(w):
                            data[toff + r][off + s] = sign * block[r, s]
            faces[(n, i)] = IntMatrix(data, rows=level_rank[n - 1],
                                      cols=level_rank[n])
    for n in range(levels):
        pos = {(m, alpha): off for m, alpha, off, _ in layouts[n + 1][0]}
        for j in range(n + 1):
            data = [[0] * level_rank[n] for _ in range(level_rank[n + 1])]
            for m, alpha, off, w in layouts[n][0]:
                doubled = alpha[:j + 1] + alpha[j:]
                toff = pos[(m, doubled)]
                for s in range(w):
                    data[toff + s][off + s] = 1
            degens[(n, j)] = IntMatrix(data, rows=level_rank[n + 1],
                                       cols=level_rank[n])
    return SimplicialModule(level_rank, faces, degens)


def denormalize_v(c: ChainComplex, levels: int | None = None) -> CosimplicialModule:
    """Cosimplicial counterpart of denormalize_h for complexes supported
    in degrees >= 0, with the same summand bookkeeping transposed."""
    if c.lo < 0:
        raise ValueError(
            f"denormalization needs support in degrees >= 0, "
            f"got degrees down to {c.lo}")
    m_top = c.hi
    if levels is None:
        levels = m_top
    if levels < 0:
        raise ValueError("levels must be >= 0")
    ranks_by_m = [c.rank(m) for m in range(m_top + 1)]
    layouts = [_dn_layout(ranks_by_m, n) for n in range(levels + 1)]
    level_rank = [total for _, total in layouts]
    cofaces, codegens = {}, {}
    for n in range(1, levels + 1):
        pos = {(m, alpha): off for m, alpha, off, _ in layouts[n - 1][0]}
        for i in range(n + 1):
            data = [[0] * level_rank[n - 1] for _ in range(level_rank[n])]
            for m, alpha, off, w in layouts[n][0]:
                beta, image = _epi_mono(alpha[:i] + alpha[i + 1:])
                if len(image) == m + 1:
                    soff = pos[(m, beta)]
                    for s in range(w):
                        data[off + s][soff + s] = 1
                elif (len(image) == m and image == list(range(m))
                        and (m - 1, beta) in pos):
                    soff = pos[(m - 1, beta)]
                    block = c.diff(m - 1)
                    sign = -1 if m % 2 else 1
                    for r in range(w):
                        for s in range(block.cols):
                            data[off + r][soff + s] = sign * block[r, s]
            cofaces[(n, i)] = IntMatrix(data, rows=level_rank[n],
                                        cols=level_rank[n - 1])
    for n in range(levels):
        pos = {(m, alpha): off for m, alpha, off, _ in layouts[n][0]}
        for j in range(n + 1):
            data = [[0] * level_rank[n + 1] for _ in range(level_rank[n])]
            for m, alpha, off, w in layouts[n + 1][0]:
                if alpha[j] != alpha[j + 1]:
                    continue
                toff = pos[(m, alpha[:j + 1] + alpha[j + 2:])]
                for s in range(w):
                    data[toff + s][off + s] = 1
            codegens[(n, j)] = IntMatrix(data, rows=level_rank[n],
                                         cols=level_rank[n + 1])
    return CosimplicialModule(level_rank, cofaces, codegens)


def _epi_action(x: SimplicialModule, alpha: Sequence[int]) -> IntMatrix:
    """Matrix of the degeneracy composite realizing a monotone
    surjection alpha: [n] -> [m], from level m to level n."""
    n = len(alpha) - 1
    if alpha[-1] == n:
        return IntMatrix.identity(x.rank(n))
    t = next(t for t in range(n) if alpha[t] == alpha[t + 1])
    return x.degen(n - 1, t) * _epi_action(x, alpha[:t + 1] + alpha[t + 2:])


def dold_kan_iso(x: SimplicialModule) -> dict[int, IntMatrix]:
    """Explicit level-wise isomorphism from DN(N(X)) to X: the summand
    of a surjection alpha maps by the corresponding degeneracy composite
    applied to the kernel basis.  Unimodularity and compatibility with
    every structure map are verified; failure raises RuntimeError."""
    c = normalize_h(x)
    dn = denormalize_h(c, levels=x.top)
    incl = [_normal_inclusion_h(x, n) for n in range(x.top + 1)]
    ranks_by_m = [c.rank(-m) for m in range(x.top + 1)]
    iso = {}
    for n in range(x.top + 1):
        layout, total = _dn_layout(ranks_by_m, n)
        cols = []
        for m, alpha, _, w in layout:
            block = _epi_action(x, alpha) * incl[m]
            cols.extend(block.column(j) for j in range(w))
        phi = IntMatrix.from_columns(cols, x.rank(n))
        if phi.rows != phi.cols or (phi.rows and abs(phi.det()) != 1):
            raise RuntimeError(f"comparison at level {n} is not invertible")
        iso[n] = phi
    for n in range(1, x.top + 1):
        for i in range(n + 1):
            if x.face(n, i) * iso[n] != iso[n - 1] * dn.face(n, i):
                raise RuntimeError(
                    f"comparison does not commute with d_{i} at level {n}")
    for n in range(x.top):
        for j in range(n + 1):
            if x.degen(n, j) * iso[n] != iso[n + 1] * dn.degen(n, j):
                raise RuntimeError(
                    f"comparison does not commute with s_{j} at level {n}")
    return iso


def constant_simplicial(rank: int, levels: int) -> SimplicialModule:
    """Constant simplicial module: every level Z^rank, every map the
    identity."""
    return denormalize_h(ChainComplex(0, 0, {0: rank}), levels=levels)


# ---------------------------------------------------------------------------
# double complexes and totalization


class DoubleComplex:
    """Bigraded free modules with a horizontal differential raising i
    and a vertical one raising j; the two must commute on the nose (the
    totalization sign is applied only in tot)."""

    __slots__ = ("ranks", "horiz", "vert")

    def __init__(self, ranks: Mapping, horiz: Mapping | None = None,
                 vert: Mapping | None = None):
        if not ranks:
            raise ValueError("double complex has no levels")
        self.ranks = {k: int(v) for k, v in ranks.items()}
        if any(v < 0 for v in self.ranks.values()):
            raise ValueError("negative rank")
        self.horiz, self.vert = {}, {}
        for store, given, word in ((self.horiz, horiz, "horizontal"),
                                   (self.vert, vert, "vertical")):
            di, dj = (1, 0) if word == "horizontal" else (0, 1)
            for (i, j), m in (given or {}).items():
                want = (self.rank(i + di, j + dj), self.rank(i, j))
                if (m.rows, m.cols) != want:
                    raise ValueError(
                        f"{word} differential at ({i}, {j}) has shape "
                        f"{m.rows}x{m.cols}, expected {want[0]}x{want[1]}")
                if not m.is_zero():
                    store[(i, j)] = m
        for (i, j) in self.horiz:
            if not (self.horizontal(i + 1, j) * self.horizontal(i, j)).is_zero():
                raise ValueError(f"horizontal d.d is nonzero at ({i}, {j})")
        for (i, j) in self.vert:
            if not (self.vertical(i, j + 1) * self.vertical(i, j)).is_zero():
                raise ValueError(f"vertical d.d is nonzero at ({i}, {j})")
        for (i, j) in self.ranks:
            if (self.horizontal(i, j + 1) * self.vertical(i, j)
                    != self.vertical(i + 1, j) * self.horizontal(i, j)):
                raise ValueError(f"square at ({i}, {j}) does not commute")

    def rank(self, i: int, j: int) -> int:
        return self.ranks.get((i, j), 0)

    def horizontal(self, i: int, j: int) -> IntMatrix:
        if (i, j) in self.horiz:
            return self.horiz[(i, j)]
        return IntMatrix.zero(self.rank(i + 1, j), self.rank(i, j))

    def vertical(self, i: int, j: int) -> IntMatrix:
        if (i, j) in self.vert:
            return self.vert[(i, j)]
        return IntMatrix.zero(self.rank(i, j + 1), self.rank(i, j))


def tot_summands(d: DoubleComplex, n: int) -> list[tuple[int, int, int, int]]:
    """Summands (i, j, offset, width) of total degree n, i ascending."""
    spots = sorted((i, j) for (i, j) in d.ranks if i + j == n and d.rank(i, j))
    out, off = [], 0
    for i, j in spots:
        out.append((i, j, off, d.rank(i, j)))
        off += d.rank(i, j)
    return out


def tot(d: DoubleComplex) -> ChainComplex:
    """Totalization: degree n is the sum of the (i, j) terms with
    i + j = n, with the vertical differential twisted by (-1)^i in
    column i so the total differential squares to zero."""
    degrees = [i + j for (i, j) in d.ranks]
    lo, hi = min(degrees), max(degrees)
    ranks = {n: sum(w for *_, w in tot_summands(d, n)) for n in range(lo, hi + 1)}
    diffs = {}
    for n in range(lo, hi):
        tpos = {(i, j): off for i, j, off, _ in tot_summands(d, n + 1)}
        data = [[0] * ranks[n] for _ in range(ranks[n + 1])]
        for i, j, off, w in tot_summands(d, n):
            pieces = [((i + 1, j), d.horizontal(i, j), 1),
                      ((i, j + 1), d.vertical(i, j), -1 if i % 2 else 1)]
            for spot, block, sign in pieces:
                if spot not in tpos:
                    continue
                toff = tpos[spot]
                for r in range(block.rows):
                    for s in range(block.cols):
                        data[toff + r][off + s] = sign * block[r, s]
        diffs[n] = IntMatrix(data, rows=ranks[n + 1], cols=ranks[n])
    try:
        return ChainComplex(lo, hi, ranks, diffs)
    except ValueError as exc:
        raise ValueError(f"totalization sign convention is broken: {exc}")


# ---------------------------------------------------------------------------
# mixed objects


class MixedObject:
    """Levels (p, q), cosimplicial in p and simplicial in q; every row
    and column is validated through the one-directional classes and all
    cross-direction structure maps must commute."""

    __slots__ = ("p_top", "q_top", "ranks", "vfaces", "vdegens",
                 "hfaces", "hdegens")

    def __init__(self, p_top: int, q_top: int, ranks: Mapping,
                 vfaces: Mapping, vdegens: Mapping,
                 hfaces: Mapping, hdegens: Mapping):
        self.p_top = p_top
        self.q_top = q_top
        self.ranks = {(p, q): int(ranks.get((p, q), 0))
                      for p in range(p_top + 1) for q in range(q_top + 1)}
        self.vfaces = dict(vfaces)
        self.vdegens = dict(vdegens)
        self.hfaces = dict(hfaces)
        self.hdegens = dict(hdegens)
        for p in range(p_top + 1):
            try:
                self.row(p)
            except ValueError as exc:
                raise ValueError(f"row p={p}: {exc}")
        for q in range(q_top + 1):
            try:
                self.column(q)
            except ValueError as exc:
                raise ValueError(f"column q={q}: {exc}")
        self._check_commutation()

    def rank(self, p: int, q: int) -> int:
        return self.ranks.get((p, q), 0)

    def vface(self, p: int, q: int, i: int) -> IntMatrix:
        return self.vfaces[(p, q, i)]

    def vdegen(self, p: int, q: int, j: int) -> IntMatrix:
        return self.vdegens[(p, q, j)]

    def hface(self, p: int, q: int, i: int) -> IntMatrix:
        return self.hfaces[(p, q, i)]

    def hdegen(self, p: int, q: int, j: int) -> IntMatrix:
        return self.hdegens[(p, q, j)]

    def row(self, p: int) -> SimplicialModule:
        """The simplicial module at fixed cosimplicial level p."""
        return SimplicialModule(
            [self.rank(p, q) for q in range(self.q_top + 1)],
            {(q, i): self.hfaces[(p, q, i)]
             for q in range(1, self.q_top + 1) for i in range(q + 1)},
            {(q, j): self.hdegens[(p, q, j)]
             for q in range(self.q_top) for j in range(q + 1)})

    def column(self, q: int) -> CosimplicialModule:
        """The cosimplicial module at fixed simplicial level q."""
        return CosimplicialModule(
            [self.rank(p, q) for p in range(self.p_top + 1)],
            {(p, i): self.vfaces[(p, q, i)]
             for p in range(1, self.p_top + 1) for i in range(p + 1)},
            {(p, j): self.vdegens[(p, q, j)]
             for p in range(self.p_top) for j in range(p + 1)})

    def _check_commutation(self) -> None:
        for p in range(1, self.p_top + 1):
            for i in range(p + 1):
                for q in range(1, self.q_top + 1):
                    for a in range(q + 1):
                        if (self.hface(p, q, a) * self.vface(p, q, i)
                                != self.vface(p, q - 1, i) * self.hface(p - 1, q, a)):
                            raise ValueError(
                                f"coface d^{i} and face d_{a} do not "
                                f"commute at level ({p}, {q})")
                for q in range(self.q_top):
                    for a in range(q + 1):
                        if (self.hdegen(p, q, a) * self.vface(p, q, i)
                                != self.vface(p, q + 1, i) * self.hdegen(p - 1, q, a)):
                            raise ValueError(
                                f"coface d^{i} and degeneracy s_{a} do not "
                                f"commute at level ({p}, {q})")
        for p in range(self.p_top):
            for j in range(p + 1):
                for q in range(1, self.q_top + 1):
                    for a in range(q + 1):
                        if (self.hface(p, q, a) * self.vdegen(p, q, j)
                                != self.vdegen(p, q - 1, j) * self.hface(p + 1, q, a)):
                            raise ValueError(
                                f"codegeneracy s^{j} and face d_{a} do not "
                                f"commute at level ({p}, {q})")
                for q in range(self.q_top):
                    for a in range(q + 1):
                        if (self.hdegen(p, q, a) * self.vdegen(p, q, j)
                                != self.vdegen(p, q + 1, j) * self.hdegen(p + 1, q, a)):
                            raise ValueError(
                                f"codegeneracy s^{j} and degeneracy s_{a} do "
                                f"not commute at level ({p}, {q})")


def _mixed_normal(x: MixedObject):
    """Per level: the combined normalization projector and the canonical
    basis of its image (simplicial face kernels meet codegeneracy
    kernels)."""
    incl, proj = {}, {}
    for p in range(x.p_top + 1):
        for q in range(x.q_top + 1):
            r = x.rank(p, q)
            ident = IntMatrix.identity(r)
            ph = ident
            for i in range(q):
                ph = (ident - x.hdegen(p, q - 1, i) * x.hface(p, q, i)) * ph
            pv = ident
            for j in range(p):
                pv = pv * (ident - x.vface(p, q, j) * x.vdegen(p - 1, q, j))
            if ph * pv != pv * ph:
                raise RuntimeError(
                    f"normalization projectors do not commute at ({p}, {q})")
            proj[(p, q)] = ph * pv
            incl[(p, q)] = hermite_columns(kernel_basis(ident - proj[(p, q)]))
    return incl, proj


def normalize_mixed(x: MixedObject) -> DoubleComplex:
    """Normalize both directions: the result sits in columns i = -q and
    rows j = p, with the signed last face horizontally and the
    alternating coface sum vertically."""
    incl, _ = _mixed_normal(x)
    ranks = {(-q, p): incl[(p, q)].cols
             for p in range(x.p_top + 1) for q in range(x.q_top + 1)}
    horiz, vert = {}, {}
    for p in range(x.p_top + 1):
        for q in range(1, x.q_top + 1):
            raw = x.hface(p, q, q) * incl[(p, q)]
            coeff = solve_columns(incl[(p, q - 1)], raw)
            horiz[(-q, p)] = -coeff if q % 2 else coeff
        for q in range(x.q_top + 1):
            if p == x.p_top:
                continue
            raw = IntMatrix.zero(x.rank(p + 1, q), incl[(p, q)].cols)
            for i in range(p + 2):
                term = x.vface(p + 1, q, i) * incl[(p, q)]
                raw = raw - term if i % 2 else raw + term
            vert[(-q, p)] = solve_columns(incl[(p + 1, q)], raw)
    return DoubleComplex(ranks, horiz, vert)


def embed_i(k: ChainComplex, p_levels: int | None = None,
            q_levels: int | None = None) -> MixedObject:
    """Split a two-sided complex at degree zero and denormalize the
    halves: simplicially in q for the non-positive part, cosimplicially
    in p for the non-negative part, sharing degree 0 at level (0, 0).
    tot(normalize_mixed(embed_i(k))) == k."""
    q_top = max(-k.lo, 0) if q_levels is None else q_levels
    p_top = max(k.hi, 0) if p_levels is None else p_levels
    if q_top < -k.lo or p_top < k.hi:
        raise ValueError(
            f"truncation ({p_top}, {q_top}) too small for degrees "
            f"{k.lo}..{k.hi}")
    neg = ChainComplex(min(k.lo, 0), 0,
                       {n: k.rank(n) for n in range(min(k.lo, 0), 1)},
                       {n: k.diff(n) for n in range(min(k.lo, 0), 0)})
    s = denormalize_h(neg, levels=q_top)
    r0 = k.rank(0)

    def vertical_complex(q: int) -> ChainComplex:
        ranks = {0: s.rank(q)}
        diffs = {}
        for j in range(1, p_top + 1):
            ranks[j] = k.rank(j)
        if p_top >= 1:
            proj = IntMatrix([[1 if c == r else 0 for c in range(s.rank(q))]
                              for r in range(r0)], rows=r0, cols=s.rank(q))
            diffs[0] = k.diff(0) * proj
            for j in range(1, p_top):
                diffs[j] = k.diff(j)
        return ChainComplex(0, p_top, ranks, diffs)

    columns = [denormalize_v(vertical_complex(q), levels=p_top)
               for q in range(q_top + 1)]
    ranks = {(p, q): columns[q].rank(p)
             for p in range(p_top + 1) for q in range(q_top + 1)}
    vfaces = {(p, q, i): columns[q].coface(p, i)
              for q in range(q_top + 1)
              for p in range(1, p_top + 1) for i in range(p + 1)}
    vdegens = {(p, q, j): columns[q].codegen(p, j)
               for q in range(q_top + 1)
               for p in range(p_top) for j in range(p + 1)}

    def lift(p: int, comp0: IntMatrix, src_q: int, dst_q: int) -> IntMatrix:
        """Apply a map of vertical complexes (comp0 in degree 0, the
        identity above) summand-wise at cosimplicial level p."""
        src_ranks = [s.rank(src_q)] + [k.rank(j) for j in range(1, p_top + 1)]
        dst_ranks = [s.rank(dst_q)] + [k.rank(j) for j in range(1, p_top + 1)]
        src_layout, src_total = _dn_layout(src_ranks, p)
        dst_pos = {(m, alpha): off
                   for m, alpha, off, _ in _dn_layout(dst_ranks, p)[0]}
        dst_total = _dn_layout(dst_ranks, p)[1]
        data = [[0] * src_total for _ in range(dst_total)]
        for m, alpha, off, w in src_layout:
            if (m, alpha) not in dst_pos:
                continue
            toff = dst_pos[(m, alpha)]
            if m == 0:
                for r in range(comp0.rows):
                    for c in range(comp0.cols):
                        data[toff + r][off + c] = comp0[r, c]
            else:
                for r in range(w):
                    data[toff + r][off + r] = 1
        return IntMatrix(data, rows=dst_total, cols=src_total)

    hfaces = {(p, q, i): lift(p, s.face(q, i), q, q - 1)
              for q in range(1, q_top + 1)
              for p in range(p_top + 1) for i in range(q + 1)}
    hdegens = {(p, q, j): lift(p, s.degen(q, j), q, q + 1)
               for q in range(q_top)
               for p in range(p_top + 1) for j in range(q + 1)}
    return MixedObject(p_top, q_top, ranks, vfaces, vdegens, hfaces, hdegens)


def constant_mixed(rank: int, p_top: int, q_top: int) -> MixedObject:
    """Constant mixed object: Z^rank at every level, identity maps."""
    return embed_i(ChainComplex(0, 0, {0: rank}),
                   p_levels=p_top, q_levels=q_top)


def tensor_mixed(a: MixedObject, b: MixedObject) -> MixedObject:
    """Level-wise tensor product with Kronecker structure maps."""
    if (a.p_top, a.q_top) != (b.p_top, b.q_top):
        raise ValueError(
            f"truncations differ: ({a.p_top}, {a.q_top}) vs "
            f"({b.p_top}, {b.q_top})")
    ranks = {pq: a.ranks[pq] * b.ranks[pq] for pq in a.ranks}
    pair = lambda d1, d2: {key: kronecker(d1[key], d2[key]) for key in d1}
    return MixedObject(a.p_top, a.q_top, ranks,
                       pair(a.vfaces, b.vfaces), pair(a.vdegens, b.vdegens),
                       pair(a.hfaces, b.hfaces), pair(a.hdegens, b.hdegens))


# ---------------------------------------------------------------------------
# shuffle and front-back-face pairings


def _shuffles(a: int, b: int):
    """(a, b)-shuffles as (first block, second block, sign)."""
    out = []
    for mu in itertools.combinations(range(a + b), a):
        nu = tuple(t for t in range(a + b) if t not in mu)
        inversions = sum(1 for s in mu for t in nu if t < s)
        out.append((mu, nu, -1 if inversions % 2 else 1))
    return out


def _h_degen_composite(x: MixedObject, p: int, q_from: int,
                       indices: Sequence[int]) -> IntMatrix:
    m = IntMatrix.identity(x.rank(p, q_from))
    level = q_from
    for idx in indices:
        m = x.hdegen(p, level, idx) * m
        level += 1
    return m


def _h_face_front(x: MixedObject, p: int, q_from: int, q_to: int) -> IntMatrix:
    m = IntMatrix.identity(x.rank(p, q_from))
    for level in range(q_from, q_to, -1):
        m = x.hface(p, level, level) * m
    return m


def _h_face_back(x: MixedObject, p: int, q_from: int, count: int) -> IntMatrix:
    m = IntMatrix.identity(x.rank(p, q_from))
    for step in range(count):
        m = x.hface(p, q_from - step, 0) * m
    return m


def _v_coface_top(x: MixedObject, q: int, p_from: int, p_to: int) -> IntMatrix:
    m = IntMatrix.identity(x.rank(p_from, q))
    for level in range(p_from + 1, p_to + 1):
        m = x.vface(level, q, level) * m
    return m


def _v_coface_bottom(x: MixedObject, q: int, p_from: int, count: int) -> IntMatrix:
    m = IntMatrix.identity(x.rank(p_from, q))
    for step in range(count):
        m = x.vface(p_from + step + 1, q, 0) * m
    return m


def _v_codegen_composite(x: MixedObject, q: int, p_from: int,
                         indices: Sequence[int]) -> IntMatrix:
    m = IntMatrix.identity(x.rank(p_from, q))
    level = p_from
    for idx in reversed(indices):
        m = x.vdegen(level - 1, q, idx) * m
        level -= 1
    return m


def _interchange_sign(j1: int, i2: int) -> int:
    # moving the vertical part of the first factor past the horizontal
    # part of the second
    return -1 if (j1 * i2) % 2 else 1


def _pairing_setup(a: MixedObject, b: MixedObject):
    r = tensor_mixed(a, b)
    incl_a, proj_a = _mixed_normal(a)
    incl_b, proj_b = _mixed_normal(b)
    incl_r, proj_r = _mixed_normal(r)
    da, db, dr = normalize_mixed(a), normalize_mixed(b), normalize_mixed(r)
    return r, (incl_a, proj_a, da), (incl_b, proj_b, db), (incl_r, proj_r, dr)


def ez_map(a: MixedObject, b: MixedObject):
    """Shuffle pairing from Tot(N(a)) (x) Tot(N(b)) to Tot(N(a (x) b)):
    degeneracy shuffles in the simplicial direction, top cofaces on the
    first factor and bottom cofaces on the second in the cosimplicial
    direction.  Returns (source, target, per-degree matrices); the chain
    map property is checked exactly."""
    r, (incl_a, _, da), (incl_b, _, db), (incl_r, proj_r, dr) = _pairing_setup(a, b)
    ta, tb, tr = tot(da), tot(db), tot(dr)
    src = tensor_complex(ta, tb)
    mats = {}
    for n in src.degrees():
        data = [[0] * src.rank(n) for _ in range(tr.rank(n))]
        tpos = {(i, j): off for i, j, off, _ in tot_summands(dr, n)}
        for na, nb, pair_off in tensor_summands(ta, tb, n):
            for i1, j1, offa, wa in tot_summands(da, na):
                for i2, j2, offb, wb in tot_summands(db, nb):
                    q1, p1 = -i1, j1
                    q2, p2 = -i2, j2
                    qq, pp = q1 + q2, p1 + p2
                    if qq > r.q_top or pp > r.p_top:
                        raise ValueError(
                            f"truncation too small for total degree {n}: "
                            f"needs level ({pp}, {qq})")
                    width = wa * wb
                    block = IntMatrix.zero(r.rank(pp, qq), width)
                    for mu, nu, sgn in _shuffles(q1, q2):
                        u = (_v_coface_top(a, qq, p1, pp)
                             * _h_degen_composite(a, p1, q1, nu)
                             * incl_a[(p1, q1)])
                        v = (_v_coface_bottom(b, qq, p2, p1)
                             * _h_degen_composite(b, p2, q2, mu)
                             * incl_b[(p2, q2)])
                        piece = kronecker(u, v)
                        block = block - piece if sgn < 0 else block + piece
                    if _interchange_sign(j1, i2) < 0:
                        block = -block
                    coords = solve_columns(incl_r[(pp, qq)],
                                           proj_r[(pp, qq)] * block)
                    toff = tpos.get((i1 + i2, j1 + j2))
                    if toff is None:
                        if not coords.is_zero():
                            raise RuntimeError(
                                f"pairing block escapes the target at degree {n}")
                        continue
                    rb = tb.rank(nb)
                    for s in range(wa):
                        for t in range(wb):
                            col = pair_off + (offa + s) * rb + offb + t
                            for rr in range(coords.rows):
                                data[toff + rr][col] = coords[rr, s * wb + t]
        mats[n] = IntMatrix(data, rows=tr.rank(n), cols=src.rank(n))
    check_chain_map(src, tr, mats)
    return src, tr, mats


def aw_map(a: MixedObject, b: MixedObject):
    """Front-face/back-face pairing from Tot(N(a (x) b)) to
    Tot(N(a)) (x) Tot(N(b)): front and back faces in the simplicial
    direction, codegeneracy shuffles in the cosimplicial direction.
    Returns (source, target, per-degree matrices); the chain map
    property is checked exactly."""
    r, (incl_a, proj_a, da), (incl_b, proj_b, db), (incl_r, _, dr) = _pairing_setup(a, b)
    ta, tb, tr = tot(da), tot(db), tot(dr)
    dst = tensor_complex(ta, tb)
    mats = {}
    for n in tr.degrees():
        data = [[0] * tr.rank(n) for _ in range(dst.rank(n))]
        pair_pos = {(u, v): off for u, v, off in tensor_summands(ta, tb, n)}
        for i, j, toff, wt in tot_summands(dr, n):
            pp, qq = j, -i
            for i1, j1, offa, wa in [t for na in ta.degrees()
                                     for t in tot_summands(da, na)]:
                i2, j2 = i - i1, j - j1
                hit = [t for t in tot_summands(db, i2 + j2)
                       if (t[0], t[1]) == (i2, j2)]
                if not hit:
                    continue
                _, _, offb, wb = hit[0]
                q1, p1 = -i1, j1
                q2, p2 = -i2, j2
                if (i1 + j1, i2 + j2) not in pair_pos:
                    continue
                pair_off = pair_pos[(i1 + j1, i2 + j2)]
                block = IntMatrix.zero(a.rank(p1, q1) * b.rank(p2, q2),
                                       r.rank(pp, qq))
                for mu, nu, sgn in _shuffles(p1, p2):
                    u = (_v_codegen_composite(a, q1, pp, nu)
                         * _h_face_front(a, pp, qq, q1))
                    v = (_v_codegen_composite(b, q2, pp, mu)
                         * _h_face_back(b, pp, qq, q1))
                    piece = kronecker(u, v)
                    block = block - piece if sgn < 0 else block + piece
                if _interchange_sign(j1, i2) < 0:
                    block = -block
                raw = kronecker(proj_a[(p1, q1)], proj_b[(p2, q2)]) \
                    * block * incl_r[(pp, qq)]
                coords = solve_columns(
                    kronecker(incl_a[(p1, q1)], incl_b[(p2, q2)]), raw)
                rb = tb.rank(i2 + j2)
                for s in range(wa):
                    for t in range(wb):
                        row = pair_off + (offa + s) * rb + offb + t
                        for cc in range(wt):
                            data[row][toff + cc] = coords[s * wb + t, cc]
        mats[n] = IntMatrix(data, rows=dst.rank(n), cols=tr.rank(n))
    check_chain_map(tr, dst, mats)
    return tr, dst, mats
