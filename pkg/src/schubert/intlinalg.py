"""Exact integer matrix algebra: Smith normal form with unimodular transforms.

Matrices are dense lists of lists of Python ints. Everything here is exact;
the Smith normal form drives kernel bases (saturated lattices), integer linear
solves, ranks, unit counts and cokernel invariant factors.

Pivot selection is deterministic: smallest nonzero absolute value, ties broken
by lowest (row, column) index. Diagonal entries are normalized nonnegative and
satisfy the divisibility chain d_1 | d_2 | ...
"""

from __future__ import annotations

from dataclasses import dataclass


Matrix = list


class LinAlgError(ValueError):
    pass


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def shape(M: Matrix) -> tuple[int, int]:
    return (len(M), len(M[0]) if M else 0)


def transpose(M: Matrix) -> Matrix:
    m, n = shape(M)
    return [[M[i][j] for i in range(m)] for j in range(n)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    m, k = shape(A)
    k2, n = shape(B)
    if k != k2:
        raise LinAlgError(f"shape mismatch {shape(A)} x {shape(B)}")
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col) if a and b) for col in Bt] for row in A]


def vecmat(v, M: Matrix):
    m, n = shape(M)
    if len(v) != m:
        raise LinAlgError("vector/matrix shape mismatch")
    out = [0] * n
    for x, row in zip(v, M):
        if x:
            for j, e in enumerate(row):
                if e:
                    out[j] += x * e
    return out


def stack(*blocks: Matrix) -> Matrix:
    rows = [row[:] for M in blocks for row in M]
    widths = {len(r) for r in rows}
    if len(widths) > 1:
        raise LinAlgError("stacked blocks have different widths")
    return rows


def determinant(M: Matrix) -> int:
    """Bareiss fraction-free determinant (exact)."""
    m, n = shape(M)
    if m != n:
        raise LinAlgError("determinant of non-square matrix")
    if m == 0:
        return 1
    A = [row[:] for row in M]
    sign = 1
    prev = 1
    for k in range(m - 1):
        if A[k][k] == 0:
            for i in range(k + 1, m):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, m):
            for j in range(k + 1, m):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[m - 1][m - 1]


@dataclass
class SmithForm:
    """P @ M @ Q == D with P, Q unimodular and D diagonal, d_1 | d_2 | ..."""

    P: Matrix
    D: Matrix
    Q: Matrix
    diagonal: list

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    @property
    def unit_count(self) -> int:
        return sum(1 for d in self.diagonal if d == 1)

    def invariant_factors(self, ncols: int | None = None) -> list:
        """Nontrivial factors of the column-space quotient Z^n / rowspan."""
        n = ncols if ncols is not None else shape(self.D)[1]
        factors = [d for d in self.diagonal if d != 1]
        factors += [0] * (n - len(self.diagonal))
        return factors


def smith_normal_form(M: Matrix) -> SmithForm:
    m, n = shape(M)
    A = [list(row) for row in M]
    P = identity(m)
    Q = identity(n)

    def swap_rows(a, b):
        A[a], A[b] = A[b], A[a]
        P[a], P[b] = P[b], P[a]

    def swap_cols(a, b):
        for row in A:
            row[a], row[b] = row[b], row[a]
        for row in Q:
            row[a], row[b] = row[b], row[a]

    def addmul_row(dst, src, c):
        if c:
            Ad, As = A[dst], A[src]
            for j in range(n):
                if As[j]:
                    Ad[j] += c * As[j]
            Pd, Ps = P[dst], P[src]
            for j in range(m):
                if Ps[j]:
                    Pd[j] += c * Ps[j]

    def addmul_col(dst, src, c):
        if c:
            for row in A:
                if row[src]:
                    row[dst] += c * row[src]
            for row in Q:
                if row[src]:
                    row[dst] += c * row[src]

    def negate_row(r):
        A[r] = [-x for x in A[r]]
        P[r] = [-x for x in P[r]]

    t = 0
    while t < min(m, n):
        # deterministic pivot: smallest |entry|, lowest (i, j) on ties
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = A[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            swap_rows(t, bi)
        if bj != t:
            swap_cols(t, bj)
        if A[t][t] < 0:
            negate_row(t)
        while True:
            pivot = A[t][t]
            # clear the pivot column; floor division keeps remainders in [0, pivot)
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    addmul_row(i, t, -(A[i][t] // pivot))
                    if A[i][t]:
                        swap_rows(t, i)
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(t + 1, n):
                if A[t][j]:
                    addmul_col(j, t, -(A[t][j] // pivot))
                    if A[t][j]:
                        swap_cols(t, j)
                        dirty = True
                        break
            if dirty:
                continue
            # pivot must divide the rest of the submatrix for the chain
            offender = None
            for i in range(t + 1, m):
                row = A[i]
                for j in range(t + 1, n):
                    if row[j] % pivot:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            addmul_row(t, offender, 1)
        t += 1
    diag = [A[i][i] for i in range(min(m, n)) if A[i][i]]
    return SmithForm(P=P, D=A, Q=Q, diagonal=diag)


def _reduced_snf(M: Matrix) -> SmithForm:
    """Smith form for invariant factors only: a Hermite row pass first keeps
    the working matrix at column-count many rows (transforms are not kept)."""
    m, n = shape(M)
    if m > n:
        M = hermite_rows(M)
    return smith_normal_form(M)


def rank(M: Matrix) -> int:
    return _reduced_snf(M).rank


def unit_count(M: Matrix) -> int:
    """Number of +-1 invariant factors (after diagonalization)."""
    return _reduced_snf(M).unit_count


def left_nullspace(M: Matrix) -> Matrix:
    """Basis of the saturated lattice {v : v @ M == 0}, as rows.

    The rows of P below the rank in P@M@Q = D map M to zero rows; because P is
    unimodular they form a basis that extends to a basis of Z^m, i.e. the
    kernel lattice is saturated.
    """
    snf = smith_normal_form(M)
    return [snf.P[i][:] for i in range(snf.rank, len(M))]


class RowSolver:
    """Answer many x @ M == target queries against one matrix exactly.

    The Smith normal form is computed once; each query is two vector-matrix
    products plus divisibility checks. Free coordinates are set to zero, so
    solutions are deterministic.
    """

    def __init__(self, M: Matrix):
        self.shape = shape(M)
        self.snf = smith_normal_form(M)

    def solve(self, target) -> list | None:
        m, n = self.shape
        if len(target) != n:
            raise LinAlgError("target length != column count")
        snf = self.snf
        tq = vecmat(target, snf.Q)
        y = [0] * m
        for j in range(n):
            d = snf.D[j][j] if j < m else 0
            if d:
                if tq[j] % d:
                    return None
                y[j] = tq[j] // d
            elif tq[j]:
                return None
        return vecmat(y, snf.P)


def solve_left(M: Matrix, target) -> list | None:
    """One integer solution x of x @ M == target, or None."""
    return RowSolver(M).solve(target)


def in_rowspan(M: Matrix, v) -> bool:
    return solve_left(M, v) is not None


def cokernel_invariants(M: Matrix) -> list:
    """Invariant factors of Z^ncols / rowspan(M): torsion orders then 0s (free)."""
    m, n = shape(M)
    return _reduced_snf(M).invariant_factors(n)


def unimodular_inverse(M: Matrix) -> Matrix:
    """Exact inverse of a square integer matrix with determinant +-1."""
    m, n = shape(M)
    if m != n:
        raise LinAlgError("inverse of non-square matrix")
    rows = []
    for i in range(n):
        e = [1 if j == i else 0 for j in range(n)]
        row = solve_left(M, e)
        if row is None:
            raise LinAlgError("matrix is not unimodular")
        rows.append(row)
    return rows


def hermite_rows(M: Matrix) -> Matrix:
    """Row-style Hermite form: echelon rows with positive pivots, no column ops."""
    A = [list(r) for r in M]
    m, n = shape(A)
    r = 0
    for col in range(n):
        piv = None
        while True:
            live = [i for i in range(r, m) if A[i][col]]
            if not live:
                break
            live.sort(key=lambda i: abs(A[i][col]))
            i0 = live[0]
            if len(live) == 1:
                piv = i0
                break
            for i in live[1:]:
                q = A[i][col] // A[i0][col]
                A[i] = [a - q * b for a, b in zip(A[i], A[i0])]
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        if A[r][col] < 0:
            A[r] = [-x for x in A[r]]
        r += 1
    return [row for row in A[:r] if any(row)]


def reduce_mod_lattice(rows: Matrix, v) -> list:
    """Canonical representative of v modulo the lattice spanned by the rows.

    Uses the Hermite form: each pivot coordinate is reduced into [0, pivot).
    """
    H = hermite_rows(rows) if rows else []
    out = list(v)
    for row in H:
        col = next(j for j, x in enumerate(row) if x)
        q = out[col] // row[col]
        if q:
            out = [a - q * b for a, b in zip(out, row)]
    return out


def to_json(M: Matrix) -> list[list[str]]:
    """Decimal-string encoding, arbitrary precision preserved exactly."""
    return [[str(x) for x in row] for row in M]


def from_json(data) -> Matrix:
    return [[int(x) for x in row] for row in data]
