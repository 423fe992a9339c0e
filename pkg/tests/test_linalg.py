"""Exact linear algebra over Q and F_p."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from taumut.errors import DimensionMismatchError, FieldMismatchError
from taumut.linalg import (
    QQ,
    Mat,
    PrimeField,
    block_diag,
    det,
    hstack,
    kernel_basis,
    left_kernel_rows,
    rank,
    rref,
    solve,
    vstack,
)

F5 = PrimeField(5)

entries = st.integers(min_value=-6, max_value=6)


def _mats(max_dim: int = 4):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(
                st.lists(entries, min_size=c, max_size=c),
                min_size=r,
                max_size=r,
            )
        )
    )


def test_prime_field_rejects_composite_modulus():
    with pytest.raises(FieldMismatchError):
        PrimeField(4)
    with pytest.raises(FieldMismatchError):
        PrimeField(1)


def test_prime_field_inverse():
    f = PrimeField(7)
    for a in range(1, 7):
        assert f.mul(a, f.inv(a)) == 1


def test_rational_entries_stay_fractions():
    m = Mat(QQ, [[Fraction(1, 3), 2], [0, Fraction(-5, 7)]])
    assert all(isinstance(x, Fraction) for row in m.rows for x in row)
    assert m[0, 0] + m[1, 1] == Fraction(7, 21) - Fraction(5, 7) + 0


def test_mixed_field_operations_rejected():
    a = Mat(QQ, [[1]])
    b = Mat(F5, [[1]])
    with pytest.raises(FieldMismatchError):
        a.add(b)


def test_matmul_shape_guard():
    a = Mat(QQ, [[1, 2]])
    with pytest.raises(DimensionMismatchError):
        a.mul(a)


def test_rref_known_matrix():
    m = Mat(QQ, [[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    res = rref(m)
    assert res.rank == 2
    assert res.pivot_cols == (0, 1)
    # re-reducing is a no-op
    again = rref(res.reduced)
    assert again.reduced == res.reduced


def test_empty_matrix_width_is_kept():
    m = Mat.zeros(QQ, 0, 3)
    assert (m.nrows, m.ncols) == (0, 3)
    assert m.transpose().nrows == 3


def test_stacking():
    a = Mat(QQ, [[1, 2]])
    b = Mat(QQ, [[3, 4]])
    assert vstack(QQ, [a, b]).rows == ((1, 2), (3, 4))
    assert hstack(QQ, [a, b]).rows == ((1, 2, 3, 4),)
    d = block_diag(QQ, [a, b])
    assert (d.nrows, d.ncols) == (2, 4)
    assert d[0, 2] == 0 and d[1, 0] == 0


def test_solve_inconsistent_returns_none():
    m = Mat(QQ, [[1, 1], [1, 1]])
    rhs = Mat(QQ, [[1], [2]])
    assert solve(m, rhs) is None


def test_det_examples():
    assert det(Mat(QQ, [[2, 0], [1, 3]])) == 6
    assert det(Mat(QQ, [[1, 2], [2, 4]])) == 0
    assert det(Mat(F5, [[2, 0], [0, 3]])) == 1


@pytest.mark.parametrize("field", [QQ, F5], ids=["Q", "F5"])
@settings(derandomize=True, max_examples=40, deadline=None)
@given(rows=_mats())
def test_solve_result_actually_solves(field, rows):
    m = Mat(field, rows)
    rhs = m.mul(Mat(field, [[1]] * m.ncols))
    x = solve(m, rhs)
    assert x is not None
    assert m.mul(x) == rhs


@pytest.mark.parametrize("field", [QQ, F5], ids=["Q", "F5"])
@settings(derandomize=True, max_examples=40, deadline=None)
@given(rows=_mats())
def test_kernel_vectors_multiply_to_zero(field, rows):
    m = Mat(field, rows)
    ker = kernel_basis(m)
    assert len(ker) == m.ncols - rank(m)
    for v in ker:
        assert m.mul(v).is_zero()
    left = left_kernel_rows(m)
    assert left.nrows == m.nrows - rank(m)
    assert left.mul(m).is_zero()


@settings(derandomize=True, max_examples=40, deadline=None)
@given(rows=_mats())
def test_rank_is_transpose_invariant(rows):
    m = Mat(QQ, rows)
    assert rank(m) == rank(m.transpose())
