"""Bounded complexes of finitely generated free modules over the integers.

Complexes are cochain-oriented throughout: the differential in degree n
maps degree n to degree n+1, and chain-style data lives in negative
degrees.  Homology is computed by Smith normal form, torsion included.
Quasi-isomorphisms are detected by matching homology shapes and then
checking that the mapping cone is acyclic, which tests the induced maps
integrally.

A plain text file format round-trips complexes: a header line
``degrees lo..hi``, one ``rank n`` line per degree, then per
differential a ``d n`` header followed by its row-major integer matrix
block (omitted when either side has rank zero).
"""

from __future__ import annotations

import random
from typing import Mapping, Sequence

from .intmat import IntMatrix, kronecker, smith_normal_form


class ChainComplex:
    """Bounded complex with integer differentials raising degree."""

    __slots__ = ("lo", "hi", "ranks", "diffs")

    def __init__(self, lo: int, hi: int, ranks: Mapping[int, int],
                 diffs: Mapping[int, IntMatrix] | None = None):
        if lo > hi:
            raise ValueError(f"empty degree range {lo}..{hi}")
        self.lo = lo
        self.hi = hi
        self.ranks = {n: int(ranks.get(n, 0)) for n in range(lo, hi + 1)}
        for n, r in self.ranks.items():
            if r < 0:
                raise ValueError(f"negative rank {r} in degree {n}")
        self.diffs = {}
        for n, m in (diffs or {}).items():
            if not (lo <= n < hi):
                raise ValueError(f"differential at degree {n} outside {lo}..{hi - 1}")
            want = (self.rank(n + 1), self.rank(n))
            if (m.rows, m.cols) != want:
                raise ValueError(
                    f"differential at degree {n} has shape {m.rows}x{m.cols}, "
                    f"expected {want[0]}x{want[1]}")
            if not m.is_zero():
                self.diffs[n] = m
        for n in range(lo, hi - 1):
            if not (self.diff(n + 1) * self.diff(n)).is_zero():
                raise ValueError(f"d.d is nonzero at degree {n}")

    def rank(self, n: int) -> int:
        return self.ranks.get(n, 0)

    def diff(self, n: int) -> IntMatrix:
        if n in self.diffs:
            return self.diffs[n]
        return IntMatrix.zero(self.rank(n + 1), self.rank(n))

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def total_rank(self) -> int:
        return sum(self.ranks.values())

    def shift(self, s: int) -> "ChainComplex":
        """Degree shift: the result in degree n is the input in degree
        n + s; differentials pick up the sign (-1)^s."""
        sign = -1 if s % 2 else 1
        ranks = {n - s: self.rank(n) for n in self.degrees()}
        diffs = {n - s: self.diff(n).scale(sign)
                 for n in range(self.lo, self.hi)}
        return ChainComplex(self.lo - s, self.hi - s, ranks, diffs)

    def direct_sum(self, other: "ChainComplex") -> "ChainComplex":
        lo, hi = min(self.lo, other.lo), max(self.hi, other.hi)
        ranks = {n: self.rank(n) + other.rank(n) for n in range(lo, hi + 1)}
        diffs = {}
        for n in range(lo, hi):
            diffs[n] = _block_diag(self.diff(n), other.diff(n))
        return ChainComplex(lo, hi, ranks, diffs)

    def __eq__(self, other):
        if not isinstance(other, ChainComplex):
            return NotImplemented
        if (self.lo, self.hi) != (other.lo, other.hi):
            return False
        return (self.ranks == other.ranks
                and all(self.diff(n) == other.diff(n)
                        for n in range(self.lo, self.hi)))

    def __hash__(self):
        return hash((self.lo, self.hi, tuple(sorted(self.ranks.items()))))

    def __repr__(self):
        shape = " ".join(str(self.rank(n)) for n in self.degrees())
        return f"ChainComplex({self.lo}..{self.hi}: {shape})"


def _block_diag(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    rows = a.rows + b.rows
    cols = a.cols + b.cols
    data = [[0] * cols for _ in range(rows)]
    for i in range(a.rows):
        for j in range(a.cols):
            data[i][j] = a[i, j]
    for i in range(b.rows):
        for j in range(b.cols):
            data[a.rows + i][a.cols + j] = b[i, j]
    return IntMatrix(data, rows=rows, cols=cols)


def point_complex(rank: int, degree: int = 0) -> ChainComplex:
    return ChainComplex(degree, degree, {degree: rank})


def disc_complex(degree: int, twist: int = 1) -> ChainComplex:
    """Two-term complex Z -> Z concentrated in degrees degree and
    degree+1, with the differential given by the twist."""
    return ChainComplex(degree, degree + 1, {degree: 1, degree + 1: 1},
                        {degree: IntMatrix([[twist]])})


def euler_char(k: ChainComplex) -> int:
    return sum((-1) ** (n % 2) * k.rank(n) for n in k.degrees())


def trim(k: ChainComplex) -> ChainComplex:
    """Drop zero-rank degrees from both ends of the support; a complex
    that is zero everywhere collapses to rank 0 in degree 0."""
    lo, hi = k.lo, k.hi
    while lo < hi and k.rank(lo) == 0:
        lo += 1
    while hi > lo and k.rank(hi) == 0:
        hi -= 1
    if k.rank(lo) == 0:
        return ChainComplex(0, 0, {0: 0})
    return ChainComplex(lo, hi, {n: k.rank(n) for n in range(lo, hi + 1)},
                        {n: k.diff(n) for n in range(lo, hi)})


def homology(k: ChainComplex) -> dict[int, tuple[int, tuple[int, ...]]]:
    """Per degree: (free rank, invariant factors of the torsion part)."""
    out = {}
    for n in k.degrees():
        out_rank = k.diff(n).rank() if n < k.hi else 0
        in_map = k.diff(n - 1) if n > k.lo else IntMatrix.zero(k.rank(n), 0)
        in_rank = in_map.rank()
        free = k.rank(n) - out_rank - in_rank
        _, d, _ = smith_normal_form(in_map)
        torsion = tuple(abs(d[i, i]) for i in range(min(d.rows, d.cols))
                        if abs(d[i, i]) > 1)
        out[n] = (free, torsion)
    return out


def homology_report(k: ChainComplex) -> str:
    lines = []
    for n, (free, torsion) in sorted(homology(k).items()):
        parts = []
        if free == 1:
            parts.append("Z")
        elif free > 1:
            parts.append(f"Z^{free}")
        parts.extend(f"Z/{t}" for t in torsion)
        lines.append(f"H_{n} = " + (" + ".join(parts) if parts else "0"))
    return "\n".join(lines)


def is_acyclic(k: ChainComplex) -> bool:
    return all(free == 0 and not torsion
               for free, torsion in homology(k).values())


def check_chain_map(src: ChainComplex, dst: ChainComplex,
                    mats: Mapping[int, IntMatrix]) -> dict[int, IntMatrix]:
    """Validate degreewise matrices as a chain map; missing degrees are
    zero.  Returns the completed per-degree map."""
    lo, hi = min(src.lo, dst.lo), max(src.hi, dst.hi)
    full = {}
    for n in range(lo, hi + 1):
        m = mats.get(n, IntMatrix.zero(dst.rank(n), src.rank(n)))
        if (m.rows, m.cols) != (dst.rank(n), src.rank(n)):
            raise ValueError(
                f"map at degree {n} has shape {m.rows}x{m.cols}, expected "
                f"{dst.rank(n)}x{src.rank(n)}")
        full[n] = m
    for n in range(lo, hi):
        if full[n + 1] * src.diff(n) != dst.diff(n) * full[n]:
            raise ValueError(f"square at degree {n} does not commute")
    return full


def mapping_cone(src: ChainComplex, dst: ChainComplex,
                 mats: Mapping[int, IntMatrix]) -> ChainComplex:
    """Cone of a chain map: degree n is src^{n+1} (+) dst^n."""
    full = check_chain_map(src, dst, mats)
    lo = min(src.lo - 1, dst.lo)
    hi = max(src.hi - 1, dst.hi)
    ranks = {n: src.rank(n + 1) + dst.rank(n) for n in range(lo, hi + 1)}
    diffs = {}
    for n in range(lo, hi):
        top = src.rank(n + 2)
        bot = dst.rank(n + 1)
        left = src.rank(n + 1)
        right = dst.rank(n)
        data = [[0] * (left + right) for _ in range(top + bot)]
        dk = src.diff(n + 1)
        for i in range(top):
            for j in range(left):
                data[i][j] = -dk[i, j]
        f = full.get(n + 1, IntMatrix.zero(bot, left))
        for i in range(bot):
            for j in range(left):
                data[top + i][j] = f[i, j]
        dl = dst.diff(n)
        for i in range(bot):
            for j in range(right):
                data[top + i][left + j] = dl[i, j]
        diffs[n] = IntMatrix(data, rows=top + bot, cols=left + right)
    return ChainComplex(lo, hi, ranks, diffs)


def quasi_iso_check(src: ChainComplex, dst: ChainComplex,
                    mats: Mapping[int, IntMatrix]) -> bool:
    """True when the map induces isomorphisms on all homology.

    Shapes are compared first (free ranks and torsion factors per
    degree); the induced maps are then tested integrally through
    acyclicity of the mapping cone.
    """
    full = check_chain_map(src, dst, mats)
    hs, hd = homology(src), homology(dst)
    lo = min(src.lo, dst.lo)
    hi = max(src.hi, dst.hi)
    for n in range(lo, hi + 1):
        if hs.get(n, (0, ())) != hd.get(n, (0, ())):
            return False
    return is_acyclic(mapping_cone(src, dst, full))


def tensor_summands(a: ChainComplex, b: ChainComplex,
                    n: int) -> list[tuple[int, int, int]]:
    """Summands of degree n of the tensor product, as (degree in a,
    degree in b, offset); zero-width pairs are skipped.  Basis order
    within a summand is Kronecker: the b index runs fastest."""
    out, off = [], 0
    for u in a.degrees():
        w = a.rank(u) * b.rank(n - u)
        if w:
            out.append((u, n - u, off))
            off += w
    return out


def tensor_complex(a: ChainComplex, b: ChainComplex) -> ChainComplex:
    """Tensor product over the integers, d(x@y) = dx@y + (-1)^u x@dy for
    x in degree u."""
    lo, hi = a.lo + b.lo, a.hi + b.hi
    ranks = {n: sum(a.rank(u) * b.rank(n - u) for u in a.degrees())
             for n in range(lo, hi + 1)}
    diffs = {}
    for n in range(lo, hi):
        tpos = {(u, v): off for u, v, off in tensor_summands(a, b, n + 1)}
        data = [[0] * ranks[n] for _ in range(ranks[n + 1])]
        for u, v, off in tensor_summands(a, b, n):
            pieces = [(u + 1, v, kronecker(a.diff(u), IntMatrix.identity(b.rank(v)))),
                      (u, v + 1, kronecker(IntMatrix.identity(a.rank(u)),
                                           b.diff(v)).scale(-1 if u % 2 else 1))]
            for tu, tv, block in pieces:
                if (tu, tv) not in tpos or block.rows == 0:
                    continue
                toff = tpos[(tu, tv)]
                for i in range(block.rows):
                    for j in range(block.cols):
                        data[toff + i][off + j] = block[i, j]
        diffs[n] = IntMatrix(data, rows=ranks[n + 1], cols=ranks[n])
    return ChainComplex(lo, hi, ranks, diffs)


# ---------------------------------------------------------------------------
# text format


def format_complex(k: ChainComplex) -> str:
    lines = [f"degrees {k.lo}..{k.hi}"]
    for n in k.degrees():
        lines.append(f"rank {k.rank(n)}")
    for n in range(k.lo, k.hi):
        lines.append(f"d {n}")
        m = k.diff(n)
        if m.rows and m.cols:
            for i in range(m.rows):
                lines.append(" ".join(str(m[i, j]) for j in range(m.cols)))
    return "\n".join(lines) + "\n"


def parse_complex(text: str) -> ChainComplex:
    lines = text.splitlines()
    pos = 0

    def fail(msg):
        raise ValueError(f"line {pos + 1}: {msg}")

    def next_line():
        nonlocal pos
        while pos < len(lines) and not lines[pos].strip():
            pos += 1
        if pos >= len(lines):
            raise ValueError(f"line {len(lines) + 1}: unexpected end of input")
        out = lines[pos].strip()
        pos += 1
        return out

    header = next_line()
    if not header.startswith("degrees ") or ".." not in header:
        pos -= 1
        fail("expected 'degrees lo..hi'")
    try:
        lo_s, hi_s = header[len("degrees "):].split("..", 1)
        lo, hi = int(lo_s), int(hi_s)
    except ValueError:
        pos -= 1
        fail("expected 'degrees lo..hi'")

    ranks = {}
    for n in range(lo, hi + 1):
        line = next_line()
        if not line.startswith("rank "):
            pos -= 1
            fail(f"expected 'rank <n>' for degree {n}")
        try:
            ranks[n] = int(line[len("rank "):])
        except ValueError:
            pos -= 1
            fail(f"expected 'rank <n>' for degree {n}")

    diffs = {}
    for n in range(lo, hi):
        line = next_line()
        if line != f"d {n}":
            pos -= 1
            fail(f"expected 'd {n}'")
        rows, cols = ranks[n + 1], ranks[n]
        if rows == 0 or cols == 0:
            continue
        data = []
        for _ in range(rows):
            row_line = next_line()
            try:
                row = [int(x) for x in row_line.split()]
            except ValueError:
                pos -= 1
                fail("expected an integer matrix row")
            if len(row) != cols:
                pos -= 1
                fail(f"expected {cols} entries, got {len(row)}")
            data.append(row)
        diffs[n] = IntMatrix(data, rows=rows, cols=cols)
    return ChainComplex(lo, hi, ranks, diffs)


# ---------------------------------------------------------------------------
# randomized constructions with exact differentials


def random_unimodular(rng: random.Random, n: int,
                      steps: int = 6) -> tuple[IntMatrix, IntMatrix]:
    """A change of basis and its inverse, built from elementary moves."""
    fwd = IntMatrix.identity(n)
    inv = IntMatrix.identity(n)
    if n < 2:
        return fwd, inv
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-2, -1, 1, 2])
        shear = IntMatrix([[1 if a == b else (c if (a, b) == (i, j) else 0)
                            for b in range(n)] for a in range(n)])
        unshear = IntMatrix([[1 if a == b else (-c if (a, b) == (i, j) else 0)
                              for b in range(n)] for a in range(n)])
        fwd = shear * fwd
        inv = inv * unshear
    return fwd, inv


def conjugate(k: ChainComplex,
              bases: Mapping[int, tuple[IntMatrix, IntMatrix]]) -> ChainComplex:
    """Isomorphic copy of the complex through per-degree changes of
    basis given as (matrix, inverse) pairs."""
    diffs = {}
    for n in range(k.lo, k.hi):
        fwd_next = bases.get(n + 1, (IntMatrix.identity(k.rank(n + 1)),) * 2)[0]
        inv_here = bases.get(n, (IntMatrix.identity(k.rank(n)),) * 2)[1]
        diffs[n] = fwd_next * k.diff(n) * inv_here
    return ChainComplex(k.lo, k.hi, dict(k.ranks), diffs)


def random_complex(rng: random.Random, lo: int, hi: int,
                   max_summands: int = 3) -> ChainComplex:
    """Direct sum of spheres and twisted discs in the given degree
    window, conjugated by random changes of basis."""
    acc = ChainComplex(lo, hi, {})
    for _ in range(rng.randint(1, max_summands)):
        if rng.random() < 0.5 or lo == hi:
            acc = acc.direct_sum(point_complex(1, rng.randint(lo, hi)))
        else:
            deg = rng.randint(lo, hi - 1)
            acc = acc.direct_sum(disc_complex(deg, rng.choice([1, 1, 2, -1])))
    bases = {n: random_unimodular(rng, acc.rank(n)) for n in acc.degrees()}
    return conjugate(acc, bases)
