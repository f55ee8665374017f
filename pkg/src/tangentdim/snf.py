"""Exact integer matrices and the Smith normal form.

The normal form is computed by elementary row and column operations while
tracking both transforms and their inverses, so callers can solve integer
systems and read off kernel and image lattices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence


class IntMatrix:
    """A dense integer matrix with an explicit shape (either side may be 0)."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, rows: Iterable[Sequence[int]], nrows: Optional[int] = None, ncols: Optional[int] = None):
        rows = [list(map(int, r)) for r in rows]
        if nrows is None:
            nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if len(rows) != nrows or any(len(r) != ncols for r in rows):
            raise ValueError("ragged or mis-shaped matrix")
        self.nrows, self.ncols, self.rows = nrows, ncols, rows

    @staticmethod
    def zeros(m: int, n: int) -> "IntMatrix":
        return IntMatrix([[0] * n for _ in range(m)], m, n)

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix([[int(i == j) for j in range(n)] for i in range(n)], n, n)

    @staticmethod
    def from_columns(cols: Sequence[Sequence[int]], nrows: int) -> "IntMatrix":
        return IntMatrix([[c[i] for c in cols] for i in range(nrows)], nrows, len(cols))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def copy(self) -> "IntMatrix":
        return IntMatrix([r[:] for r in self.rows], self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def col(self, j: int) -> List[int]:
        return [r[j] for r in self.rows]

    def columns(self) -> List[List[int]]:
        return [self.col(j) for j in range(self.ncols)]

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix([[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)], self.ncols, self.nrows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.T.rows
        return IntMatrix(
            [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows], self.nrows, other.ncols
        )

    def apply(self, v: Sequence[int]) -> List[int]:
        return [sum(a * b for a, b in zip(r, v)) for r in self.rows]

    def __add__(self, other):
        self._same_shape(other)
        return IntMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], *self.shape)

    def __sub__(self, other):
        self._same_shape(other)
        return IntMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], *self.shape)

    def __neg__(self):
        return IntMatrix([[-a for a in r] for r in self.rows], *self.shape)

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix([[k * a for a in r] for r in self.rows], *self.shape)

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, tuple(map(tuple, self.rows))))

    def key(self):
        return (self.shape, tuple(map(tuple, self.rows)))

    def tolist(self):
        return [r[:] for r in self.rows]

    def row_slice(self, start: int, stop: int) -> "IntMatrix":
        return IntMatrix(self.rows[start:stop], stop - start, self.ncols)

    def col_slice(self, start: int, stop: int) -> "IntMatrix":
        return IntMatrix([r[start:stop] for r in self.rows], self.nrows, stop - start)

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.rows for a in r)

    def __repr__(self):
        return f"IntMatrix({self.rows!r}, shape={self.shape})"


def hstack(*ms: IntMatrix) -> IntMatrix:
    m = ms[0].nrows
    if any(x.nrows != m for x in ms):
        raise ValueError("hstack needs equal row counts")
    return IntMatrix([sum((x.rows[i] for x in ms), []) for i in range(m)], m, sum(x.ncols for x in ms))


def vstack(*ms: IntMatrix) -> IntMatrix:
    n = ms[0].ncols
    if any(x.ncols != n for x in ms):
        raise ValueError("vstack needs equal column counts")
    return IntMatrix([r[:] for x in ms for r in x.rows], sum(x.nrows for x in ms), n)


def block_diag(*ms: IntMatrix) -> IntMatrix:
    out = IntMatrix.zeros(sum(x.nrows for x in ms), sum(x.ncols for x in ms))
    i0 = j0 = 0
    for x in ms:
        for i in range(x.nrows):
            out.rows[i0 + i][j0 : j0 + x.ncols] = x.rows[i]
        i0 += x.nrows
        j0 += x.ncols
    return out


@dataclass
class SNFResult:
    """``L @ M @ R == D`` with ``D`` diagonal and ``L``, ``R`` unimodular.

    ``invariant_factors`` lists the ``min(m, n)`` diagonal entries: the
    nonzero ones first, non-negative, each dividing the next.
    """

    D: IntMatrix
    L: IntMatrix
    R: IntMatrix
    L_inv: IntMatrix
    R_inv: IntMatrix
    invariant_factors: List[int]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d != 0)


def smith_normal_form(M: IntMatrix) -> SNFResult:
    """Smith normal form with transforms.

    Pivot policy: the nonzero entry of smallest absolute value in the
    remaining block, ties broken by (row, column).
    """
    A = [r[:] for r in M.rows]
    m, n = M.nrows, M.ncols
    L = IntMatrix.identity(m).rows
    Li = IntMatrix.identity(m).rows
    R = IntMatrix.identity(n).rows
    Ri = IntMatrix.identity(n).rows

    def swap_rows(i, k):
        if i == k:
            return
        A[i], A[k] = A[k], A[i]
        L[i], L[k] = L[k], L[i]
        for row in Li:
            row[i], row[k] = row[k], row[i]

    def swap_cols(j, k):
        if j == k:
            return
        for row in A:
            row[j], row[k] = row[k], row[j]
        for row in R:
            row[j], row[k] = row[k], row[j]
        Ri[j], Ri[k] = Ri[k], Ri[j]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        L[dst] = [a + q * b for a, b in zip(L[dst], L[src])]
        for row in Li:
            row[src] -= q * row[dst]

    def add_col(dst, src, q):
        # col_dst += q * col_src
        for row in A:
            row[dst] += q * row[src]
        for row in R:
            row[dst] += q * row[src]
        Ri[src] = [a - q * b for a, b in zip(Ri[src], Ri[dst])]

    def negate_row(i):
        A[i] = [-a for a in A[i]]
        L[i] = [-a for a in L[i]]
        for row in Li:
            row[i] = -row[i]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = A[i][j]
                if v and (best is None or (abs(v), i, j) < best):
                    best = (abs(v), i, j)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            piv = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // piv))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // piv))
            rest = [(abs(A[i][t]), 0, i) for i in range(t + 1, m) if A[i][t]]
            rest += [(abs(A[t][j]), 1, j) for j in range(t + 1, n) if A[t][j]]
            if rest:
                _, kind, k = min(rest)
                if kind == 0:
                    swap_rows(t, k)
                else:
                    swap_cols(t, k)
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % piv),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            negate_row(t)
        t += 1
    D = IntMatrix(A, m, n)
    factors = [A[i][i] for i in range(min(m, n))]
    return SNFResult(D, IntMatrix(L, m, m), IntMatrix(R, n, n), IntMatrix(Li, m, m), IntMatrix(Ri, n, n), factors)


class IntegerSolver:
    """Solve ``A x = b`` over the integers for many right-hand sides."""

    def __init__(self, A: IntMatrix):
        self.A = A
        self.snf = smith_normal_form(A)

    def solve(self, b: Sequence[int]) -> Optional[List[int]]:
        s = self.snf
        c = s.L.apply(b)
        m, n = self.A.shape
        y = [0] * n
        for i in range(m):
            d = s.invariant_factors[i] if i < min(m, n) else 0
            if d == 0:
                if c[i] != 0:
                    return None
            else:
                if c[i] % d:
                    return None
                y[i] = c[i] // d
        return s.R.apply(y)

    def solve_columns(self, B: IntMatrix) -> Optional[IntMatrix]:
        cols = []
        for b in B.columns():
            x = self.solve(b)
            if x is None:
                return None
            cols.append(x)
        return IntMatrix.from_columns(cols, self.A.ncols)

    def kernel(self) -> IntMatrix:
        """A basis of ``{x : A x = 0}`` as columns."""
        R, r = self.snf.R, self.snf.rank
        return R.col_slice(r, self.A.ncols)

    def image_basis(self) -> IntMatrix:
        """A basis of the column lattice of ``A`` as columns."""
        s = self.snf
        cols = [[s.invariant_factors[i] * v for v in s.L_inv.col(i)] for i in range(s.rank)]
        return IntMatrix.from_columns(cols, self.A.nrows)


def solve_integer(A: IntMatrix, b: Sequence[int]) -> Optional[List[int]]:
    return IntegerSolver(A).solve(b)


def in_column_lattice(A: IntMatrix, b: Sequence[int]) -> bool:
    return solve_integer(A, b) is not None


def bareiss_det(M: Sequence[Sequence[int]]) -> int:
    """Fraction-free determinant."""
    a = [list(r) for r in M]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]
