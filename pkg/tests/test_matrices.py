"""Exact linear algebra: ranks, echelon images, Smith form, solvers."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sodkit.matrices import (
    ExactMatrix,
    image_basis,
    kernel_basis,
    rank,
    smith_normal_form,
    solve_field,
    solve_integer,
)
from sodkit.rings import GF, QQ, ZZ

F5 = GF(5)

small_int = st.integers(min_value=-9, max_value=9)


def matrices(max_dim=4):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(
                st.lists(small_int, min_size=c, max_size=c), min_size=r, max_size=r
            )
        )
    ).map(ExactMatrix)


def test_rank_frozen_cases():
    assert rank(ExactMatrix([[1, 2], [2, 4]])) == 1
    assert rank(ExactMatrix([[1, 0], [0, 1]])) == 2
    assert rank(ExactMatrix([[0, 0], [0, 0]])) == 0
    assert rank(ExactMatrix([[2, 4], [1, 3]]), GF(2)) == 1
    assert rank(ExactMatrix([[2, 4], [1, 3]]), QQ) == 2
    M = ExactMatrix([[Fraction(1, 2), 1], [1, 2]])
    assert rank(M, QQ) == 1


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_transpose_invariant(M):
    assert rank(M, QQ) == rank(M.transpose(), QQ)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_mod_p_at_most_rational(M):
    assert rank(M, F5) <= rank(M, QQ)


@settings(max_examples=40, deadline=None)
@given(matrices(3), matrices(3))
def test_rank_product_bound(A, B):
    if A.cols != B.rows:
        return
    assert rank(A.mul(B), QQ) <= min(rank(A, QQ), rank(B, QQ))


@settings(max_examples=50, deadline=None)
@given(matrices())
def test_kernel_and_image_dims(M):
    for ring in (QQ, F5):
        r = rank(M, ring)
        K = kernel_basis(M, ring)
        assert K.cols == M.cols - r
        for j in range(K.cols):
            col = K.column(j)
            prod = [
                sum(
                    ring.mul(ring.coerce(M[i, t]), ring.coerce(col[t]))
                    for t in range(M.cols)
                )
                for i in range(M.rows)
            ]
            assert all(ring.is_zero(ring.coerce(v)) for v in prod)
        assert rank(image_basis(M, ring), ring) == r


def _det(M):
    n = M.rows
    a = [[Fraction(M[i, j]) for j in range(n)] for i in range(n)]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] * inv
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


@settings(max_examples=40, deadline=None)
@given(matrices())
def test_smith_normal_form_properties(M):
    U, D, V = smith_normal_form(M)
    assert U.mul(M).mul(V) == D
    assert abs(_det(U)) == 1
    assert abs(_det(V)) == 1
    diag = [D[i, i] for i in range(min(D.rows, D.cols))]
    for i in range(D.rows):
        for j in range(D.cols):
            if i != j:
                assert D[i, j] == 0
    for a, b in zip(diag, diag[1:]):
        if a == 0:
            assert b == 0
        else:
            assert b % a == 0
    nonzero = sum(1 for d in diag if d != 0)
    assert nonzero == rank(M, QQ)


def test_solve_field_and_integer():
    A = ExactMatrix([[1, 2], [3, 4]])
    B = ExactMatrix([[5], [6]])
    X = solve_field(A, B, QQ)
    assert A.mul(X).entries == tuple(
        tuple(Fraction(v) for v in row) for row in B.entries
    )
    M = ExactMatrix([[2, 0], [0, 3]])
    x = solve_integer(M, [4, 9])
    assert x == [2, 3]
