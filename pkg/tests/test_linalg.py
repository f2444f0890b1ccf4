"""Sparse exact linear algebra: echelon ranks, kernels, inversion."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orbistar.linalg import (Echelon, independent_subset, invert_dense,
                             kernel_basis, mat_mul, mat_vec, nullity, rank)

entries = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def sparse_rows(ncols, nrows):
    return st.lists(
        st.lists(entries, min_size=ncols, max_size=ncols).map(
            lambda vs: {j: v for j, v in enumerate(vs) if v}),
        min_size=nrows, max_size=nrows)


@given(rows=sparse_rows(5, 6))
def test_rank_bounds(rows):
    r = rank(rows)
    assert 0 <= r <= 5
    assert r <= sum(1 for row in rows if row)


@given(rows=sparse_rows(4, 5))
def test_kernel_annihilates(rows):
    basis = kernel_basis(rows, list(range(4)), Fraction(1))
    assert len(basis) == nullity(rows, 4)
    for vec in basis:
        for row in rows:
            total = sum((row[j] * vec.get(j, 0) for j in row), Fraction(0))
            assert total == 0


@given(rows=sparse_rows(4, 6))
def test_independent_subset_has_full_rank(rows):
    picked = independent_subset(rows)
    assert len(picked) == rank(rows)
    assert rank([rows[i] for i in picked]) == len(picked)


@given(rows=sparse_rows(4, 6))
def test_echelon_contains_inserted_rows(rows):
    ech = Echelon()
    for row in rows:
        ech.insert(dict(row))
    for row in rows:
        assert ech.contains(dict(row))


def test_invert_dense_roundtrip():
    m = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]
    inv = invert_dense(m, Fraction(0), Fraction(1))
    prod = mat_mul(m, inv, Fraction(0))
    assert prod == [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]


def test_invert_singular_raises():
    m = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]
    with pytest.raises(ValueError):
        invert_dense(m, Fraction(0), Fraction(1))


def test_mat_vec():
    m = [[Fraction(1), Fraction(2)], [Fraction(0), Fraction(3)]]
    assert mat_vec(m, [Fraction(1), Fraction(1)], Fraction(0)) == \
        [Fraction(3), Fraction(3)]
