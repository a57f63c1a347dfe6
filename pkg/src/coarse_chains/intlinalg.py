"""Exact integer linear algebra: Smith normal form, kernels, solving.

Dense routines carry the unimodular transforms and are used where the
coordinates matter (class identification).  The sparse reduction handles
the large boundary matrices of quotient complexes: it peels off unit
pivots with Markowitz-style pivoting (unimodular operations only) and
hands the small leftover core to the dense routine, so ranks and
invariant factors stay exact.
"""

from __future__ import annotations

import heapq
from typing import Iterable, Sequence

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if not a or not b:
        return []
    n, k, m = len(a), len(b), len(b[0])
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        row = a[i]
        acc = out[i]
        for t in range(k):
            x = row[t]
            if x:
                brow = b[t]
                for j in range(m):
                    if brow[j]:
                        acc[j] += x * brow[j]
    return out


def mat_vec(a: Matrix, x: Sequence[int]) -> list[int]:
    return [sum(r * v for r, v in zip(row, x) if v) for row in a]


def transpose(a: Matrix) -> Matrix:
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def snf_with_transforms(a: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form D = U * A * V with U, V unimodular.

    D is diagonal with non-negative entries d_1 | d_2 | ... ; U and V are
    square integer matrices of determinant +-1.
    """
    d = [row[:] for row in a]
    m = len(d)
    n = len(d[0]) if m else 0
    u = identity(m)
    v = identity(n)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, factor):
        d[dst] = [x + factor * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + factor * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, factor):
        for row in d:
            row[dst] += factor * row[src]
        for row in v:
            row[dst] += factor * row[src]

    t = 0
    while t < min(m, n):
        # Smallest-magnitude nonzero pivot in the trailing block.
        pivot = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = abs(d[i][j])
                if x and (best is None or x < best):
                    best, pivot = x, (i, j)
                    if x == 1:
                        break
            if best == 1:
                break
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])

        while True:
            # Reduce the pivot column, bringing smaller remainders up.
            restart = False
            for i in range(t + 1, m):
                if d[i][t]:
                    qf = d[i][t] // d[t][t]
                    add_row(t, i, -qf)
                    if d[i][t]:
                        swap_rows(t, i)
                        restart = True
            if restart:
                continue
            for j in range(t + 1, n):
                if d[t][j]:
                    qf = d[t][j] // d[t][t]
                    add_col(t, j, -qf)
                    if d[t][j]:
                        swap_cols(t, j)
                        restart = True
            if restart:
                continue
            break

        # Divisibility: fold any non-divisible entry into the pivot row.
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if d[i][j] % d[t][t]:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(offender, t, 1)
            continue

        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return d, u, v


def diagonal(d: Matrix) -> list[int]:
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def invariant_factors(a: Matrix) -> list[int]:
    """Nonzero diagonal entries of the Smith form, in divisibility order."""
    d, _, _ = snf_with_transforms(a)
    return [x for x in diagonal(d) if x]


def rank(a: Matrix) -> int:
    return len(invariant_factors(a))


def kernel_basis(a: Matrix) -> list[list[int]]:
    """Columns spanning ker(A) over Z (an integral basis)."""
    d, _, v = snf_with_transforms(a)
    r = len([x for x in diagonal(d) if x])
    n = len(v)
    return [[v[i][j] for i in range(n)] for j in range(r, n)]


def solve_int(a: Matrix, b: Sequence[int]) -> list[int] | None:
    """One integral solution of A x = b, or None if there is none."""
    d, u, v = snf_with_transforms(a)
    m = len(a)
    n = len(a[0]) if m else 0
    ub = mat_vec(u, list(b))
    y = [0] * n
    diag = diagonal(d)
    for i in range(m):
        di = diag[i] if i < len(diag) else 0
        if di:
            if ub[i] % di:
                return None
            y[i] = ub[i] // di
        elif ub[i]:
            return None
    return mat_vec(v, y)


# -- sparse reduction ------------------------------------------------------

class SparseIntMatrix:
    """Row-major sparse integer matrix for exact rank/factor extraction."""

    def __init__(self, nrows: int, ncols: int,
                 entries: Iterable[tuple[int, int, int]] = ()) -> None:
        self.nrows = nrows
        self.ncols = ncols
        self.rows: dict[int, dict[int, int]] = {}
        self.cols: dict[int, set[int]] = {}
        for r, c, v in entries:
            if v:
                self._set(r, c, self.rows.get(r, {}).get(c, 0) + v)

    def _set(self, r: int, c: int, v: int) -> None:
        row = self.rows.setdefault(r, {})
        if v:
            row[c] = v
            self.cols.setdefault(c, set()).add(r)
        else:
            if c in row:
                del row[c]
                self.cols[c].discard(r)
                if not self.cols[c]:
                    del self.cols[c]
            if not row:
                del self.rows[r]

    def entry(self, r: int, c: int) -> int:
        return self.rows.get(r, {}).get(c, 0)

    def nnz(self) -> int:
        return sum(len(row) for row in self.rows.values())

    def clone(self) -> "SparseIntMatrix":
        out = SparseIntMatrix(self.nrows, self.ncols)
        for r, row in self.rows.items():
            out.rows[r] = dict(row)
            for c in row:
                out.cols.setdefault(c, set()).add(r)
        return out

    def to_dense(self) -> Matrix:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for r, row in self.rows.items():
            for c, v in row.items():
                out[r][c] = v
        return out

    def multiply(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in sparse multiply")
        out = SparseIntMatrix(self.nrows, other.ncols)
        acc: dict[int, dict[int, int]] = {}
        for r, row in self.rows.items():
            target = acc.setdefault(r, {})
            for k, v in row.items():
                orow = other.rows.get(k)
                if orow:
                    for c, w in orow.items():
                        target[c] = target.get(c, 0) + v * w
        for r, row in acc.items():
            for c, v in row.items():
                if v:
                    out._set(r, c, v)
        return out

    def is_zero(self) -> bool:
        return not self.rows

    def rank_and_factors(self) -> tuple[int, list[int]]:
        """Exact rank and invariant factors, destructively.

        Unit pivots are eliminated sparsely; whatever survives without a
        +-1 entry is handed to the dense Smith routine.
        """
        work = self.clone()
        unit_rank = 0
        heap: list[tuple[int, int, int]] = []
        for r, row in work.rows.items():
            for c, v in row.items():
                if v in (1, -1):
                    score = (len(row) - 1) * (len(work.cols[c]) - 1)
                    heapq.heappush(heap, (score, r, c))
        while heap:
            score, r, c = heapq.heappop(heap)
            row = work.rows.get(r)
            if row is None or c not in row or abs(row[c]) != 1:
                continue
            current = (len(row) - 1) * (len(work.cols[c]) - 1)
            if current > score:
                heapq.heappush(heap, (current, r, c))
                continue
            pivot = row[c]
            prow = dict(row)
            for r2 in list(work.cols[c]):
                if r2 == r:
                    continue
                factor = work.rows[r2][c] * pivot
                row2 = work.rows[r2]
                for cc, v in prow.items():
                    new = row2.get(cc, 0) - factor * v
                    work._set(r2, cc, new)
                    if new in (1, -1):
                        heapq.heappush(
                            heap,
                            ((len(work.rows[r2]) - 1) * (len(work.cols[cc]) - 1), r2, cc),
                        )
            for cc in list(prow):
                work._set(r, cc, 0)
            unit_rank += 1
        factors = [1] * unit_rank
        if work.rows:
            live_rows = sorted(work.rows)
            live_cols = sorted({c for row in work.rows.values() for c in row})
            rmap = {r: i for i, r in enumerate(live_rows)}
            cmap = {c: i for i, c in enumerate(live_cols)}
            dense = [[0] * len(live_cols) for _ in live_rows]
            for r, row in work.rows.items():
                for c, v in row.items():
                    dense[rmap[r]][cmap[c]] = v
            factors.extend(invariant_factors(dense))
        return len(factors), factors
