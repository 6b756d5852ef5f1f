"""Exact integer matrices and Smith normal form.

Entries are Python ints, so nothing overflows; matrices here are small
(boundary operators of clique complexes on a handful of points).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import ParameterError

__all__ = ["IntegerMatrix", "smith_normal_form", "SmithDecomposition", "smith_decomposition"]


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ParameterError("entries do not match the stated shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntegerMatrix":
        rows = [tuple(int(v) for v in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(rows))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> list[int]:
        return [r[j] for r in self.entries]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else
                             tuple(() for _ in range(self.cols)))

    def is_zero(self) -> bool:
        return all(v == 0 for r in self.entries for v in r)

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ParameterError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.entries)) if other.rows else [()] * other.cols
        out = tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.entries)
        return IntegerMatrix(self.rows, other.cols, out)

    def apply(self, vec: Sequence[int]) -> list[int]:
        if len(vec) != self.cols:
            raise ParameterError("vector length does not match column count")
        return [sum(a * b for a, b in zip(r, vec)) for r in self.entries]

    def _zip(self, other: "IntegerMatrix", op) -> "IntegerMatrix":
        if self.shape != other.shape:
            raise ParameterError(f"shape mismatch {self.shape} vs {other.shape}")
        return IntegerMatrix(self.rows, self.cols, tuple(
            tuple(op(a, b) for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self):
        return IntegerMatrix(self.rows, self.cols, tuple(tuple(-v for v in r) for r in self.entries))

    def determinant(self) -> int:
        """Exact determinant (Bareiss elimination)."""
        if self.rows != self.cols:
            raise ParameterError("determinant of a non-square matrix")
        n = self.rows
        a = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ M @ V == D`` with inverses of both unimodular factors."""

    U: IntegerMatrix
    U_inv: IntegerMatrix
    D: IntegerMatrix
    V: IntegerMatrix
    V_inv: IntegerMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i, i] for i in range(min(self.D.rows, self.D.cols))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def smith_decomposition(M: IntegerMatrix) -> SmithDecomposition:
    m, n = M.rows, M.cols
    A = M.tolist()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    Ui = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Vi = [[int(i == j) for j in range(n)] for i in range(n)]

    # Row op "row_i += c * row_j" on A and U; its inverse acts on the columns
    # of U_inv as "col_j -= c * col_i".  Column ops mirror this for V, V_inv.
    def row_add(i, j, c):
        A[i] = [a + c * b for a, b in zip(A[i], A[j])]
        U[i] = [a + c * b for a, b in zip(U[i], U[j])]
        for r in Ui:
            r[j] -= c * r[i]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        for r in Ui:
            r[i], r[j] = r[j], r[i]

    def row_neg(i):
        A[i] = [-a for a in A[i]]
        U[i] = [-a for a in U[i]]
        for r in Ui:
            r[i] = -r[i]

    def col_add(i, j, c):
        for r in A:
            r[i] += c * r[j]
        for r in V:
            r[i] += c * r[j]
        Vi[j] = [a - c * b for a, b in zip(Vi[j], Vi[i])]

    def col_swap(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        row_swap(t, best[0])
        col_swap(t, best[1])
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    row_add(i, t, -(A[i][t] // p))
                    dirty |= A[i][t] != 0
            for j in range(t + 1, n):
                if A[t][j]:
                    col_add(j, t, -(A[t][j] // p))
                    dirty |= A[t][j] != 0
            if dirty:
                # a smaller remainder sits in row or column t: make it the pivot
                cands = [(abs(A[i][t]), i, None) for i in range(t + 1, m) if A[i][t]]
                cands += [(abs(A[t][j]), None, j) for j in range(t + 1, n) if A[t][j]]
                _, i, j = min(cands, key=lambda c: c[0])
                if i is not None:
                    row_swap(t, i)
                else:
                    col_swap(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % p), None)
            if bad is None:
                break
            row_add(t, bad[0], 1)
        if A[t][t] < 0:
            row_neg(t)

    return SmithDecomposition(
        IntegerMatrix.from_rows(U, m), IntegerMatrix.from_rows(Ui, m),
        IntegerMatrix.from_rows(A, n), IntegerMatrix.from_rows(V, n),
        IntegerMatrix.from_rows(Vi, n))


def smith_normal_form(M: IntegerMatrix) -> tuple[IntegerMatrix, IntegerMatrix, IntegerMatrix]:
    """Return ``(U, D, V)`` with ``U @ M @ V == D``, U and V unimodular and
    the diagonal of D nonnegative with each entry dividing the next."""
    dec = smith_decomposition(M)
    return dec.U, dec.D, dec.V
