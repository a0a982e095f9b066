"""Exact integer matrices, Smith normal form, and rational elimination.

Matrices are stored dense as tuples of row tuples of Python ints, so there
is no overflow at any size.  smith_normal_form returns (U, D, V) with
U * A * V = D, U and V unimodular and the diagonal entries non-negative
with each dividing the next.  A handful of Fraction-based helpers (rref,
solve) support the subspace computations elsewhere in the package; they
never round.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


class IntMatrix:
    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Iterable[Iterable[int]], rows: int | None = None,
                 cols: int | None = None):
        rs = tuple(tuple(int(x) for x in row) for row in data)
        if rs:
            width = len(rs[0])
            if any(len(r) != width for r in rs):
                raise ValueError("ragged rows in matrix data")
        else:
            width = 0 if cols is None else cols
        self.rows = len(rs) if rows is None else rows
        self.cols = width
        if rows is not None and rows != len(rs):
            raise ValueError(f"declared {rows} rows, got {len(rs)}")
        self.data = rs

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)], rows=rows, cols=cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        return cls(
            [[col[i] for col in columns] for i in range(rows)],
            rows=rows, cols=len(columns),
        )

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def column(self, j: int) -> tuple:
        return tuple(self.data[i][j] for i in range(self.rows))

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
            rows=self.cols, cols=self.rows,
        )

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._shape_check(other, same=True)
        return IntMatrix(
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.data, other.data)
            ],
            rows=self.rows, cols=self.cols,
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._shape_check(other, same=True)
        return IntMatrix(
            [
                [a - b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.data, other.data)
            ],
            rows=self.rows, cols=self.cols,
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([[-a for a in r] for r in self.data], rows=self.rows, cols=self.cols)

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix([[c * a for a in r] for r in self.data], rows=self.rows, cols=self.cols)

    def _shape_check(self, other: "IntMatrix", same: bool = False) -> None:
        if same:
            if (self.rows, self.cols) != (other.rows, other.cols):
                raise ValueError(
                    f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
                )
        elif self.cols != other.rows:
            raise ValueError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        self._shape_check(other)
        # accumulate rows of other, skipping zero entries; structure maps
        # in this package are sparse and dense dot products dominate
        # profiles otherwise
        out = [[0] * other.cols for _ in range(self.rows)]
        odata = other.data
        for i, row in enumerate(self.data):
            acc = out[i]
            for k, a in enumerate(row):
                if a:
                    orow = odata[k]
                    if a == 1:
                        for j, b in enumerate(orow):
                            if b:
                                acc[j] += b
                    else:
                        for j, b in enumerate(orow):
                            if b:
                                acc[j] += a * b
        return IntMatrix(out, rows=self.rows, cols=other.cols)

    def apply(self, vec: Sequence[int]) -> tuple:
        if len(vec) != self.cols:
            raise ValueError(f"vector length {len(vec)} != {self.cols} columns")
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self.data)

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.data) == (other.rows, other.cols, other.data)

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def is_zero(self) -> bool:
        return all(all(a == 0 for a in r) for r in self.data)

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.data]!r})"

    def det(self) -> int:
        """Determinant by fraction-free Bareiss elimination."""
        if self.rows != self.cols:
            raise ValueError(f"determinant of non-square {self.rows}x{self.cols} matrix")
        n = self.rows
        if n == 0:
            return 1
        m = [list(r) for r in self.data]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def rank(self) -> int:
        return len(rref([[Fraction(x) for x in row] for row in self.data])[0])


def smith_normal_form(a: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, D, V) with U*a*V = D in Smith normal form."""
    m, n = a.rows, a.cols
    d = [list(r) for r in a.data]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, c):
        # row dst += c * row src
        d[dst] = [x + c * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, c):
        for r in d:
            r[dst] += c * r[src]
        for r in v:
            r[dst] += c * r[src]

    def negate_row(i):
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(m, n):
        # locate a pivot of minimal absolute value in the remaining block
        pivot = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = d[i][j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        # clear row and column t; restart if a remainder shrinks the pivot
        while True:
            again = False
            for i in range(t + 1, m):
                if d[i][t]:
                    q = d[i][t] // d[t][t]
                    add_row(t, i, -q)
                    if d[i][t]:
                        swap_rows(t, i)
                        again = True
            for j in range(t + 1, n):
                if d[t][j]:
                    q = d[t][j] // d[t][t]
                    add_col(t, j, -q)
                    if d[t][j]:
                        swap_cols(t, j)
                        again = True
            if not again:
                break
        # divisibility fix-up: fold any non-divisible entry into the pivot
        p = d[t][t]
        fixed = True
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if d[i][j] % p != 0:
                    add_row(i, t, 1)
                    fixed = False
                    break
            if not fixed:
                break
        if fixed:
            if d[t][t] < 0:
                negate_row(t)
            t += 1

    return (
        IntMatrix(u, rows=m, cols=m),
        IntMatrix(d, rows=m, cols=n),
        IntMatrix(v, rows=n, cols=n),
    )


def kernel_basis(a: IntMatrix) -> IntMatrix:
    """Columns form a basis of the saturated integer kernel lattice of a."""
    u, d, v = smith_normal_form(a)
    r = 0
    for i in range(min(a.rows, a.cols)):
        if d[i, i] != 0:
            r += 1
    cols = [v.column(j) for j in range(r, a.cols)]
    return IntMatrix.from_columns(cols, a.cols)


def column_space_rank(a: IntMatrix) -> int:
    return a.rank()


def solve_int(a: IntMatrix, b: Sequence[int]) -> tuple | None:
    """One integer solution of a x = b, or None if none exists."""
    u, d, v = smith_normal_form(a)
    c = u.apply(b)
    y = [0] * a.cols
    for i in range(a.rows):
        di = d[i, i] if i < min(a.rows, a.cols) else 0
        if di:
            if c[i] % di:
                return None
            y[i] = c[i] // di
        elif c[i] != 0:
            return None
    return v.apply(y)


def solve_columns(basis: IntMatrix, target: IntMatrix) -> IntMatrix:
    """Solve basis * X = target column by column; raises if any column
    fails, which signals a broken invariant at the call site."""
    cols = []
    for j in range(target.cols):
        x = solve_int(basis, target.column(j))
        if x is None:
            raise ValueError(
                f"column {j} of the target is not in the integer span of the basis"
            )
        cols.append(x)
    return IntMatrix.from_columns(cols, basis.cols)


def kronecker(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """Kronecker product; entry ((i,k),(j,l)) is a[i,j] * b[k,l] with the
    second factor's indices running fastest."""
    data = [[0] * (a.cols * b.cols) for _ in range(a.rows * b.rows)]
    for i in range(a.rows):
        for j in range(a.cols):
            v = a[i, j]
            if v == 0:
                continue
            for k in range(b.rows):
                for l in range(b.cols):
                    data[i * b.rows + k][j * b.cols + l] = v * b[k, l]
    return IntMatrix(data, rows=a.rows * b.rows, cols=a.cols * b.cols)


def hermite_columns(a: IntMatrix) -> IntMatrix:
    """Canonical basis of the column lattice of a, as the columns of the
    result: echelon by pivot row, pivots positive, entries before each
    pivot reduced.  Two matrices span the same lattice iff they agree."""
    rows = [list(a.column(j)) for j in range(a.cols)]
    width = a.rows
    r = 0
    for c in range(width):
        while True:
            live = [i for i in range(r, len(rows)) if rows[i][c] != 0]
            if not live:
                break
            i0 = min(live, key=lambda i: abs(rows[i][c]))
            rows[r], rows[i0] = rows[i0], rows[r]
            rest = [i for i in range(r + 1, len(rows)) if rows[i][c] != 0]
            if not rest:
                if rows[r][c] < 0:
                    rows[r] = [-x for x in rows[r]]
                for i in range(r):
                    q = rows[i][c] // rows[r][c]
                    if q:
                        rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
                r += 1
                break
            for i in rest:
                q = rows[i][c] // rows[r][c]
                rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
    return IntMatrix.from_columns(rows[:r], width)


# -- Fraction elimination helpers ------------------------------------


def rref(rows: list[list[Fraction]]) -> tuple[list[int], list[list[Fraction]]]:
    """Reduced row echelon form.  Returns (pivot column indices, rows),
    zero rows dropped, leading entries 1.  Canonical for a given row space."""
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    out: list[list[Fraction]] = []
    width = len(mat[0]) if mat else 0
    r = 0
    for col in range(width):
        piv = None
        for i in range(r, len(mat)):
            if mat[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = Fraction(1) / mat[r][col]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    out = mat[:r]
    return pivots, out


def span_basis(vectors: list[Sequence[Fraction]]) -> list[tuple[Fraction, ...]]:
    """Canonical (rref) basis of the rational span of the given vectors."""
    rows = [[Fraction(x) for x in v] for v in vectors if any(x != 0 for x in v)]
    if not rows:
        return []
    _, red = rref(rows)
    return [tuple(r) for r in red]


def in_span(vector: Sequence[Fraction], basis: list[tuple[Fraction, ...]]) -> bool:
    if not basis:
        return all(x == 0 for x in vector)
    test = span_basis(list(basis) + [tuple(vector)])
    return len(test) == len(basis)


def spans_equal(a: list[Sequence[Fraction]], b: list[Sequence[Fraction]]) -> bool:
    return span_basis(list(a)) == span_basis(list(b))
