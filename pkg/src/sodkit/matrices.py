"""Exact dense linear algebra: rank, canonical images and kernels, Smith form.

Ranks over QQ and ZZ go through a modular pre-filter: the matrix is reduced
mod two fixed large primes and eliminated with numpy int64 arithmetic.  When
the two modular ranks agree the common value is returned; on disagreement we
fall back to fraction-free Bareiss elimination over the integers, which is
exact.  The primes are fixed (not drawn per call) so that repeated runs are
reproducible bit for bit.

Canonical bases use deterministic pivoting: columns are processed left to
right and each pivot sits in the lowest-index row available.  Over a field
the image basis is the reduced column echelon form; over ZZ it is the column
Hermite normal form, so equal lattices yield equal bases.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import NoSolutionError
from .rings import QQ, ZZ, RingSpec

# Both primes fit comfortably in int64 even after a product of two residues.
_FILTER_PRIMES = (1_000_000_007, 998_244_353)


class ExactMatrix:
    """Immutable dense matrix with exact entries (ints or Fractions)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        rows = tuple(tuple(r) for r in entries)
        self.entries = rows
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != self.cols:
                raise ValueError("ragged rows")

    @classmethod
    def from_rows(cls, entries, ring: RingSpec | None = None) -> "ExactMatrix":
        if ring is None:
            return cls(entries)
        return cls([[ring.coerce(v) for v in row] for row in entries])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, ExactMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols})"

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(list(zip(*self.entries))) if self.rows else ExactMatrix([])

    def column(self, j: int):
        return tuple(row[j] for row in self.entries)

    def mul(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ot = list(zip(*other.entries))
        out = [[sum(a * b for a, b in zip(row, col)) for col in ot] for row in self.entries]
        return ExactMatrix(out)

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.rows != other.rows:
            raise ValueError("shape mismatch")
        return ExactMatrix([ra + rb for ra, rb in zip(self.entries, other.entries)])


def _int_rows(M: ExactMatrix) -> list[list[int]]:
    """Clear denominators row by row.  Row scaling preserves rank."""
    out = []
    for row in M.entries:
        lcm = 1
        for v in row:
            if isinstance(v, Fraction):
                d = v.denominator
                lcm = lcm * d // _gcd(lcm, d)
        out.append([int(v * lcm) for v in row])
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _rank_mod(rows: list[list[int]], p: int) -> int:
    if not rows or not rows[0]:
        return 0
    a = np.array([[v % p for v in row] for row in rows], dtype=np.int64)
    m, n = a.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = a[r] * inv % p
        below = np.nonzero(a[r + 1:, c])[0]
        if below.size:
            idx = below + r + 1
            a[idx] = (a[idx] - np.outer(a[idx, c], a[r])) % p
        r += 1
    return r


def _rank_bareiss(rows: list[list[int]]) -> int:
    a = [row[:] for row in rows]
    if not a or not a[0]:
        return 0
    m, n = len(a), len(a[0])
    rank = 0
    prev = 1
    pr = 0
    for pc in range(n):
        piv = None
        for i in range(pr, m):
            if a[i][pc] != 0:
                piv = i
                break
        if piv is None:
            continue
        if piv != pr:
            a[pr], a[piv] = a[piv], a[pr]
        pv = a[pr][pc]
        for i in range(pr + 1, m):
            ai = a[i]
            ap = a[pr]
            f = ai[pc]
            if f == 0 and prev == 1:
                continue
            for j in range(pc, n):
                ai[j] = (ai[j] * pv - f * ap[j]) // prev
        prev = pv
        rank += 1
        pr += 1
        if pr == m:
            break
    return rank


def rank(M: ExactMatrix, ring: RingSpec = QQ) -> int:
    """Rank of M over the given ring (over ZZ: rank of the QQ-span)."""
    if ring.kind == "Fp":
        return _rank_mod([list(r) for r in M.entries], ring.p)
    rows = _int_rows(M)
    r1 = _rank_mod(rows, _FILTER_PRIMES[0])
    r2 = _rank_mod(rows, _FILTER_PRIMES[1])
    if r1 == r2:
        return r1
    return _rank_bareiss(rows)


# -- canonical echelon forms over a field -----------------------------------


def _field_column_echelon(M: ExactMatrix, ring: RingSpec):
    """Reduced column echelon form.  Returns (columns, pivot_rows)."""
    cols = [list(M.column(j)) for j in range(M.cols)]
    pivots: list[tuple[int, list]] = []  # (pivot row, column)
    for col in cols:
        for prow, pcol in pivots:
            f = col[prow]
            if not ring.is_zero(f):
                for i in range(len(col)):
                    col[i] = ring.sub(col[i], ring.mul(f, pcol[i]))
        prow = next((i for i, v in enumerate(col) if not ring.is_zero(v)), None)
        if prow is None:
            continue
        inv = ring.inv(col[prow])
        col = [ring.mul(inv, v) for v in col]
        for qrow, qcol in pivots:
            f = qcol[prow]
            if not ring.is_zero(f):
                for i in range(len(qcol)):
                    qcol[i] = ring.sub(qcol[i], ring.mul(f, col[i]))
        pivots.append((prow, col))
    pivots.sort(key=lambda t: t[0])
    return [c for _, c in pivots], [r for r, _ in pivots]


def _hermite_columns(M: ExactMatrix):
    """Column Hermite normal form over ZZ (pivots positive, reduced left)."""
    m = M.rows
    live = [c for c in ([list(M.column(j)) for j in range(M.cols)]) if any(c)]
    out: list[list[int]] = []
    for row in range(m):
        work = [c for c in live if c[row] != 0]
        rest = [c for c in live if c[row] == 0]
        if not work:
            continue
        # gcd-combine until a single column survives at this row
        while len(work) > 1:
            work.sort(key=lambda c: abs(c[row]))
            base = work[0]
            nxt = [base]
            for c in work[1:]:
                q = c[row] // base[row]
                if q:
                    for i in range(m):
                        c[i] -= q * base[i]
                if c[row] != 0:
                    nxt.append(c)
                elif any(c):
                    rest.append(c)
            work = nxt
        piv = work[0]
        if piv[row] < 0:
            for i in range(m):
                piv[i] = -piv[i]
        # shift earlier pivot columns into [0, pivot) at this row
        for c in out:
            q = c[row] // piv[row]
            if q:
                for i in range(m):
                    c[i] -= q * piv[i]
        out.append(piv)
        live = [c for c in rest if any(c)]
    return out


def image_basis(M: ExactMatrix, ring: RingSpec = QQ) -> ExactMatrix:
    """Canonical basis of the column span (over ZZ: of the column lattice)."""
    if ring.kind == "Z":
        cols = _hermite_columns(M)
    else:
        Mc = ExactMatrix.from_rows(M.entries, ring)
        cols, _ = _field_column_echelon(Mc, ring)
    if not cols:
        return ExactMatrix([[] for _ in range(M.rows)])
    return ExactMatrix(list(zip(*cols)))


def kernel_basis(M: ExactMatrix, ring: RingSpec = QQ) -> ExactMatrix:
    """Canonical basis of the right kernel, one column per basis vector."""
    if ring.kind == "Z":
        U, D, V = smith_normal_form(M)
        r = sum(1 for i in range(min(D.rows, D.cols)) if D[i, i] != 0)
        cols = [V.column(j) for j in range(r, M.cols)]
        if not cols:
            return ExactMatrix([[] for _ in range(M.cols)])
        return image_basis(ExactMatrix(list(zip(*cols))), ZZ)
    Mc = ExactMatrix.from_rows(M.entries, ring)
    rref, pivots = _row_rref(Mc, ring)
    free = [j for j in range(M.cols) if j not in pivots]
    basis = []
    for f in free:
        v = [ring.zero()] * M.cols
        v[f] = ring.one()
        for i, pj in enumerate(pivots):
            v[pj] = ring.neg(rref[i][f])
        basis.append(v)
    if not basis:
        return ExactMatrix([[] for _ in range(M.cols)])
    return ExactMatrix(list(zip(*basis)))


def _row_rref(M: ExactMatrix, ring: RingSpec):
    rows = [[ring.coerce(v) for v in r] for r in M.entries]
    m, n = len(rows), M.cols
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if not ring.is_zero(rows[i][c])), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = ring.inv(rows[r][c])
        rows[r] = [ring.mul(inv, v) for v in rows[r]]
        for i in range(m):
            if i != r and not ring.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [ring.sub(a, ring.mul(f, b)) for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows, pivots


# -- Smith normal form ------------------------------------------------------


def smith_normal_form(M: ExactMatrix):
    """U, D, V with U*M*V = D diagonal and d_i | d_{i+1}, all unimodular."""
    A = [list(r) for r in M.entries]
    m, n = M.rows, M.cols
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def addmul_row(dst, src, q):
        A[dst] = [a - q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def addmul_col(dst, src, q):
        for row in A:
            row[dst] -= q * row[src]
        for row in V:
            row[dst] -= q * row[src]

    t = 0
    while t < min(m, n):
        # locate a nonzero entry of least absolute value in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = abs(A[i][j])
                if v and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            swap_rows(t, bi)
        if bj != t:
            swap_cols(t, bj)
        dirty = False
        for i in range(t + 1, m):
            if A[i][t]:
                q = A[i][t] // A[t][t]
                addmul_row(i, t, q)
                if A[i][t]:
                    dirty = True
        for j in range(t + 1, n):
            if A[t][j]:
                q = A[t][j] // A[t][t]
                addmul_col(j, t, q)
                if A[t][j]:
                    dirty = True
        if dirty:
            continue
        # divisibility: fold any non-multiple into the pivot position
        bad = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if A[i][j] % A[t][t]:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            addmul_row(t, bad, -1)
            continue
        if A[t][t] < 0:
            A[t] = [-v for v in A[t]]
            U[t] = [-v for v in U[t]]
        t += 1
    return ExactMatrix(U), ExactMatrix(A), ExactMatrix(V)


def solve_field(A: ExactMatrix, B: ExactMatrix, ring: RingSpec) -> ExactMatrix:
    """Unique X with A·X = B for A of full column rank over a field.

    Over ZZ the system is solved over QQ and coerced back, so a fractional
    solution raises.  Inconsistent systems raise NoSolutionError.
    """
    work = QQ if ring.kind == "Z" else ring
    aug = ExactMatrix.from_rows(A.hstack(B).entries, work)
    rref, pivots = _row_rref(aug, work)
    r = A.cols
    if any(p >= r for p in pivots):
        raise NoSolutionError("inconsistent system")
    if len(pivots) < r:
        raise NoSolutionError("coefficient matrix is column-rank deficient")
    X = [[rref[i][r + j] for j in range(B.cols)] for i in range(r)]
    return ExactMatrix.from_rows(X, ring)


def solve_integer(M: ExactMatrix, b) -> list[int]:
    """One integer solution x of M x = b, via the Smith form.

    Raises NoSolutionError when none exists over ZZ.
    """
    U, D, V = smith_normal_form(M)
    ub = [sum(U[i, j] * b[j] for j in range(M.rows)) for i in range(M.rows)]
    y = [0] * M.cols
    for i in range(M.rows):
        d = D[i, i] if i < min(D.rows, D.cols) else 0
        if i < M.cols and d != 0:
            if ub[i] % d:
                raise NoSolutionError("no integral solution")
            y[i] = ub[i] // d
        elif ub[i] != 0:
            raise NoSolutionError("inconsistent system")
    return [sum(V[i, j] * y[j] for j in range(M.cols)) for i in range(M.cols)]
