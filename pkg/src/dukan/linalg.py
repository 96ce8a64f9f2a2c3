"""Exact integer linear algebra over Z.

Everything here works with Python ints, so there is no overflow at any size.
Matrices act on column vectors: an ``r x c`` matrix is a homomorphism
``Z^c -> Z^r``.  Empty matrices (zero rows or zero columns) are ordinary
values and every routine accepts them.

Subgroups of ``Z^n`` are stored by a basis in column Hermite normal form,
which makes subgroup equality a plain matrix comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence


class NoSolution(ValueError):
    """Raised by :func:`solve` when the right-hand side is not in the column span."""


class IntMatrix:
    """Immutable dense integer matrix."""

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, data: Iterable[Iterable[int]] = (), shape: tuple[int, int] | None = None):
        rows = tuple(tuple(int(x) for x in row) for row in data)
        if shape is None:
            if not rows:
                raise ValueError("shape is required for a matrix with no rows")
            shape = (len(rows), len(rows[0]))
        r, c = shape
        if r < 0 or c < 0:
            raise ValueError(f"negative shape {shape}")
        if r == 0:
            if rows:
                raise ValueError(f"data does not match shape {shape}")
        elif len(rows) != r or any(len(row) != c for row in rows):
            raise ValueError(f"data does not match shape {shape}")
        self.rows = r
        self.cols = c
        self._data = rows
        self._hash = None

    # construction helpers

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls([[0] * cols for _ in range(rows)], shape=(rows, cols))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], shape=(n, n))

    @classmethod
    def scalar(cls, n: int, value: int) -> IntMatrix:
        return cls([[value if i == j else 0 for j in range(n)] for i in range(n)], shape=(n, n))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], nrows: int) -> IntMatrix:
        return cls([[col[i] for col in columns] for i in range(nrows)], shape=(nrows, len(columns)))

    @classmethod
    def column(cls, values: Sequence[int]) -> IntMatrix:
        return cls([[v] for v in values], shape=(len(values), 1))

    @classmethod
    def hstack(cls, blocks: Sequence[IntMatrix], nrows: int | None = None) -> IntMatrix:
        if not blocks:
            if nrows is None:
                raise ValueError("hstack of nothing needs nrows")
            return cls.zeros(nrows, 0)
        r = blocks[0].rows
        if any(b.rows != r for b in blocks):
            raise ValueError("hstack: row counts differ")
        data = [sum((b._data[i] for b in blocks), ()) for i in range(r)]
        return cls(data, shape=(r, sum(b.cols for b in blocks)))

    @classmethod
    def vstack(cls, blocks: Sequence[IntMatrix], ncols: int | None = None) -> IntMatrix:
        if not blocks:
            if ncols is None:
                raise ValueError("vstack of nothing needs ncols")
            return cls.zeros(0, ncols)
        c = blocks[0].cols
        if any(b.cols != c for b in blocks):
            raise ValueError("vstack: column counts differ")
        data = [row for b in blocks for row in b._data]
        return cls(data, shape=(sum(b.rows for b in blocks), c))

    @classmethod
    def block_diag(cls, blocks: Sequence[IntMatrix]) -> IntMatrix:
        r = sum(b.rows for b in blocks)
        c = sum(b.cols for b in blocks)
        data = [[0] * c for _ in range(r)]
        i0 = j0 = 0
        for b in blocks:
            for i, row in enumerate(b._data):
                data[i0 + i][j0:j0 + b.cols] = row
            i0 += b.rows
            j0 += b.cols
        return cls(data, shape=(r, c))

    # access

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        return self._data[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self._data[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self._data)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.col(j) for j in range(self.cols)]

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self._data]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> IntMatrix:
        return IntMatrix([[self._data[i][j] for j in cols] for i in rows], shape=(len(rows), len(cols)))

    def row_block(self, start: int, stop: int) -> IntMatrix:
        return IntMatrix(self._data[start:stop], shape=(stop - start, self.cols))

    def col_block(self, start: int, stop: int) -> IntMatrix:
        return IntMatrix([row[start:stop] for row in self._data], shape=(self.rows, stop - start))

    def entries(self) -> Iterable[int]:
        for row in self._data:
            yield from row

    def max_bits(self) -> int:
        return max((abs(x).bit_length() for x in self.entries()), default=0)

    def is_zero(self) -> bool:
        return not any(any(row) for row in self._data)

    def is_square(self) -> bool:
        return self.rows == self.cols

    # arithmetic

    @property
    def T(self) -> IntMatrix:
        return IntMatrix(zip(*self._data), shape=(self.cols, self.rows)) if self.rows else IntMatrix.zeros(self.cols, 0)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        other_cols = list(zip(*other._data)) if other.rows else [()] * other.cols
        data = [
            [sum(a * b for a, b in zip(row, col) if a) for col in other_cols]
            for row in self._data
        ]
        return IntMatrix(data, shape=(self.rows, other.cols))

    def __add__(self, other: IntMatrix) -> IntMatrix:
        self._check_same_shape(other)
        return IntMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self._data, other._data)], shape=self.shape
        )

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        self._check_same_shape(other)
        return IntMatrix(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self._data, other._data)], shape=self.shape
        )

    def __neg__(self) -> IntMatrix:
        return IntMatrix([[-a for a in row] for row in self._data], shape=self.shape)

    def __mul__(self, k: int) -> IntMatrix:
        return IntMatrix([[k * a for a in row] for row in self._data], shape=self.shape)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> IntMatrix:
        if not self.is_square():
            raise ValueError("power of a non-square matrix")
        if k < 0:
            raise ValueError("negative matrix power")
        result = IntMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def _check_same_shape(self, other: IntMatrix) -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.shape, self._data))
        return self._hash

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r}, shape={self.shape})"


def identity(n: int) -> IntMatrix:
    return IntMatrix.identity(n)


def zero(rows: int, cols: int) -> IntMatrix:
    return IntMatrix.zeros(rows, cols)


# ---------------------------------------------------------------------------
# Row-style echelon machinery.  Column-style results are obtained by
# transposition, so only one elimination loop has to be right.


def _row_hnf(rows: list[list[int]], ncols: int, track: bool) -> tuple[list[list[int]], list[list[int]] | None, list[int]]:
    """Row Hermite normal form in place.

    Returns ``(H, U, pivots)`` with ``U @ M == H`` (when tracked).  The first
    ``len(pivots)`` rows of ``H`` are nonzero with strictly increasing pivot
    columns, positive pivots and entries above each pivot in ``[0, pivot)``.
    """
    m = len(rows)
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)] if track else None
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if rows[i][col]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(rows[i][col]))
            if p != r:
                rows[p], rows[r] = rows[r], rows[p]
                if track:
                    U[p], U[r] = U[r], U[p]
            piv = rows[r][col]
            clean = True
            prow = rows[r]
            for i in range(r + 1, m):
                a = rows[i][col]
                if not a:
                    continue
                q = a // piv
                if q:
                    row_i = rows[i]
                    for j in range(col, ncols):
                        if prow[j]:
                            row_i[j] -= q * prow[j]
                    if track:
                        ui, ur = U[i], U[r]
                        for j in range(m):
                            if ur[j]:
                                ui[j] -= q * ur[j]
                if rows[i][col]:
                    clean = False
            if clean:
                break
        if not rows[r][col]:
            continue
        if rows[r][col] < 0:
            rows[r] = [-x for x in rows[r]]
            if track:
                U[r] = [-x for x in U[r]]
        piv = rows[r][col]
        prow = rows[r]
        for i in range(r):
            q = rows[i][col] // piv
            if q:
                row_i = rows[i]
                for j in range(col, ncols):
                    if prow[j]:
                        row_i[j] -= q * prow[j]
                if track:
                    ui, ur = U[i], U[r]
                    for j in range(m):
                        if ur[j]:
                            ui[j] -= q * ur[j]
        pivots.append(col)
        r += 1
    return rows, U, pivots


def hnf(A: IntMatrix) -> IntMatrix:
    """Column Hermite normal form of ``A``.

    The result ``H = A @ U`` (``U`` unimodular) has its nonzero columns first;
    column ``j`` has a positive pivot in row ``p_j`` with ``p_0 < p_1 < ...``,
    zeros above the pivot, and every entry left of a pivot in the pivot's row
    lies in ``[0, pivot)``.  Trailing columns are zero, so the shape of ``A``
    is kept.
    """
    return hnf_with_transform(A)[0]


def hnf_with_transform(A: IntMatrix) -> tuple[IntMatrix, IntMatrix, list[int]]:
    """Return ``(H, U, pivot_rows)`` with ``A @ U == H`` in column HNF."""
    rows = [list(c) for c in A.columns()]
    H_rows, U_rows, pivots = _row_hnf(rows, A.rows, track=True)
    H = IntMatrix(H_rows, shape=(A.cols, A.rows)).T
    U = IntMatrix(U_rows, shape=(A.cols, A.cols)).T
    return H, U, pivots


def rank(A: IntMatrix) -> int:
    rows = [list(r) for r in A.tolist()]
    return len(_row_hnf(rows, A.cols, track=False)[2])


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == S`` with ``U``, ``V`` unimodular and ``S`` in Smith form."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    invariant_factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def snf(A: IntMatrix) -> SmithDecomposition:
    """Smith normal form with transforms, by min-absolute-value pivoting."""
    r, c = A.shape
    S = A.tolist()
    U = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    V = [[1 if i == j else 0 for j in range(c)] for i in range(c)]

    def row_op(dst: int, src: int, q: int) -> None:  # row dst -= q * row src
        S[dst] = [a - q * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def col_op(dst: int, src: int, q: int) -> None:  # col dst -= q * col src
        for row in S:
            row[dst] -= q * row[src]
        for row in V:
            row[dst] -= q * row[src]

    def swap_rows(i: int, j: int) -> None:
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i: int, j: int) -> None:
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    for t in range(min(r, c)):
        best = None
        for i in range(t, r):
            for j in range(t, c):
                if S[i][j] and (best is None or abs(S[i][j]) < abs(S[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            piv = S[t][t]
            for i in range(t + 1, r):
                if S[i][t]:
                    row_op(i, t, S[i][t] // piv)
            for j in range(t + 1, c):
                if S[t][j]:
                    col_op(j, t, S[t][j] // piv)
            rest = [(i, t) for i in range(t + 1, r) if S[i][t]] + [(t, j) for j in range(t + 1, c) if S[t][j]]
            if rest:
                i, j = min(rest, key=lambda ij: abs(S[ij[0]][ij[1]]))
                if i != t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, r) for j in range(t + 1, c) if S[i][j] % piv),
                None,
            )
            if bad is None:
                break
            row_op(t, bad, -1)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]

    factors = tuple(S[i][i] for i in range(min(r, c)) if S[i][i])
    return SmithDecomposition(
        U=IntMatrix(U, shape=(r, r)),
        S=IntMatrix(S, shape=(r, c)),
        V=IntMatrix(V, shape=(c, c)),
        invariant_factors=factors,
    )


def invariant_factors(A: IntMatrix) -> tuple[int, ...]:
    return snf(A).invariant_factors


def det(A: IntMatrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    if not A.is_square():
        raise ValueError("determinant of a non-square matrix")
    n = A.rows
    M = A.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1] if n else 1


def is_unimodular(A: IntMatrix) -> bool:
    """True iff ``A`` is square with determinant +-1 (an automorphism of Z^n)."""
    return A.is_square() and abs(det(A)) == 1


# ---------------------------------------------------------------------------
# Subgroups, kernels, solving


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of ``Z^ambient_rank`` given by a basis in column HNF."""

    ambient_rank: int
    basis: IntMatrix

    @classmethod
    def span(cls, generators: IntMatrix) -> Subgroup:
        H, _, pivots = hnf_with_transform(generators)
        return cls(generators.rows, H.col_block(0, len(pivots)))

    @property
    def rank(self) -> int:
        return self.basis.cols

    def contains(self, v: Sequence[int]) -> bool:
        try:
            solve(self.basis, IntMatrix.column(v))
        except NoSolution:
            return False
        return True

    def contains_all(self, M: IntMatrix) -> bool:
        return all(self.contains(c) for c in M.columns())


def kernel_basis(A: IntMatrix) -> Subgroup:
    """Z-basis of ``{v : A v = 0}`` in column HNF."""
    H, U, pivots = hnf_with_transform(A)
    kernel = U.col_block(len(pivots), A.cols)
    return Subgroup.span(kernel)


def solve_matrix(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    """Integer ``X`` with ``A @ X == B``; raises :class:`NoSolution`."""
    if A.rows != B.rows:
        raise ValueError(f"solve: {A.shape} against right-hand side {B.shape}")
    H, U, pivots = hnf_with_transform(A)
    k = len(pivots)
    Hc = H.columns()
    ys = []
    for j in range(B.cols):
        res = list(B.col(j))
        y = [0] * A.cols
        for t, p in enumerate(pivots):
            q, rem = divmod(res[p], Hc[t][p])
            if rem:
                raise NoSolution(f"column {j} is not in the integer column span")
            if q:
                y[t] = q
                col = Hc[t]
                for i in range(p, A.rows):
                    if col[i]:
                        res[i] -= q * col[i]
        if any(res):
            raise NoSolution(f"column {j} is not in the rational column span")
        ys.append(y[:k] + [0] * (A.cols - k))
    Y = IntMatrix.from_columns(ys, A.cols)
    return U @ Y


def solve(A: IntMatrix, b: IntMatrix | Sequence[int]) -> IntMatrix:
    """Integer solution ``x`` of ``A x = b`` as a column; raises :class:`NoSolution`."""
    if not isinstance(b, IntMatrix):
        b = IntMatrix.column(b)
    return solve_matrix(A, b)


def quotient_presentation(ambient_rank: int, sub: Subgroup) -> list[int]:
    """Invariant factors of ``Z^ambient_rank / sub``; ``0`` marks a free summand.

    Factors equal to 1 are dropped; torsion factors come first in divisibility
    order, then one ``0`` per free summand.
    """
    if sub.ambient_rank != ambient_rank:
        raise ValueError("subgroup lives in a different ambient group")
    factors = [f for f in snf(sub.basis).invariant_factors if f != 1]
    return factors + [0] * (ambient_rank - sub.rank)


def homology(d_low: IntMatrix, d_high: IntMatrix) -> list[int]:
    """Invariant factors of ``ker d_low / im d_high``."""
    if d_low.cols != d_high.rows:
        raise ValueError(f"homology: {d_low.shape} and {d_high.shape} do not compose")
    if not (d_low @ d_high).is_zero():
        raise ValueError("homology: d_low @ d_high != 0")
    K = kernel_basis(d_low)
    coords = solve_matrix(K.basis, d_high)
    return quotient_presentation(K.rank, Subgroup.span(coords))


def content(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
