from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from segre_syzygies.linalg import (DEFAULT_FIELD, GF, QQ, CompositionNonzero, Field,
                                   SparseExactMatrix, get_backend, homology_dim, kernel_basis,
                                   parse_field, rank, set_backend, vectors_to_matrix)

small_ints = st.integers(-4, 4)


def dense(rows, field=DEFAULT_FIELD):
    return SparseExactMatrix.from_dense(np.array(rows, dtype=object), field=field)


@pytest.fixture(params=["flint", "numpy"])
def backend(request):
    old = set_backend(request.param)
    yield request.param
    set_backend(old)


def test_field_validation():
    assert GF(7).modulus == 7
    for bad in (2, 4, 1, 0, -3, 2**31 + 11):
        with pytest.raises(ValueError):
            Field(bad)
    assert parse_field("rational") is QQ or parse_field("rational") == QQ
    assert parse_field("gf101") == GF(101)
    assert parse_field("32003") == DEFAULT_FIELD


def test_canonical_representatives():
    F = GF(7)
    assert F(-1) == 6
    assert F(Fraction(1, 2)) == 4
    assert QQ(3) == Fraction(3)


def test_entries_drop_zeros_and_sum_duplicates():
    m = SparseExactMatrix.from_coo("ab", "xy", [0, 0, 1], [0, 0, 1], [3, -3, 8], GF(7))
    assert m.entries() == {("b", "y"): 1}
    assert m.shape == (2, 2)


def test_duplicate_labels_rejected():
    with pytest.raises(ValueError):
        SparseExactMatrix.zero(["a", "a"], ["x"])


def test_rank_examples(backend):
    assert rank(SparseExactMatrix.identity(range(3))) == 3
    assert rank(SparseExactMatrix.zero(range(4), range(5))) == 0
    assert rank(dense([[1, 2], [2, 4]], QQ)) == 1


def test_rank_depends_on_characteristic(backend):
    m = dense([[1, 1], [1, 8]])
    assert rank(m) == 2
    assert rank(dense([[1, 1], [1, 8]], GF(7))) == 1


def test_kernel_examples():
    assert kernel_basis(SparseExactMatrix.identity(range(4))) == []
    assert len(kernel_basis(SparseExactMatrix.zero(range(2), range(3)))) == 3
    m = dense([[1, 1, 0]])
    ker = kernel_basis(m)
    assert len(ker) == 2
    assert all(not any(m.apply(v).values()) for v in ker)
    assert rank(vectors_to_matrix(ker, m.col_labels)) == 2


def test_homology_examples():
    n = 4
    ident = SparseExactMatrix.identity(range(n))
    zero_out = SparseExactMatrix.zero(["t"], range(n))
    assert homology_dim(ident, zero_out) == 0
    assert homology_dim(SparseExactMatrix.zero(range(5), ["s"]),
                        SparseExactMatrix.zero(["t"], range(5))) == 5


def test_homology_rejects_non_complex():
    ident = SparseExactMatrix.identity(range(2))
    with pytest.raises(CompositionNonzero):
        homology_dim(ident, ident)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 7), st.integers(1, 7), st.data())
def test_backends_agree(n, m, data):
    rows = data.draw(st.lists(st.lists(small_ints, min_size=m, max_size=m), min_size=n, max_size=n))
    for field in (GF(5), DEFAULT_FIELD, QQ):
        mat = dense(rows, field)
        old = set_backend("numpy")
        r_np = rank(mat, peel=False)
        set_backend("flint")
        r_fl = rank(mat)
        set_backend(old)
        assert r_np == r_fl
    # rank over Q bounds rank mod p from above
    assert rank(dense(rows, QQ)) >= rank(dense(rows, GF(5)))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(1, 8), st.data())
def test_rank_nullity(n, m, data):
    rows = data.draw(st.lists(st.lists(small_ints, min_size=m, max_size=m), min_size=n, max_size=n))
    for field in (GF(3), QQ):
        mat = dense(rows, field)
        ker = kernel_basis(mat)
        assert len(ker) + rank(mat) == m
        assert all(not any(mat.apply(v).values()) for v in ker)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.integers(1, 5), st.data())
def test_homology_nonnegative(a, b, c, data):
    A = np.array(data.draw(st.lists(st.lists(small_ints, min_size=a, max_size=a), min_size=b, max_size=b)))
    # a map killing the image of A: rows from the left kernel of A
    mat = dense(A.tolist(), QQ)
    left = kernel_basis(mat.transpose())
    B = [[v.get(i, 0) for i in range(b)] for v in left][:c] or [[0] * b]
    d_in, d_out = dense(A.tolist(), QQ), dense(B, QQ)
    assert homology_dim(d_in, d_out) >= 0


def test_transpose_and_product():
    m = dense([[1, 2, 0], [0, 1, 3]])
    assert (m @ m.transpose()).to_dense().tolist() == [[5, 2], [2, 10]]


def test_default_backend_is_flint():
    assert get_backend() == "flint"
