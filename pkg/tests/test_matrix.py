import pytest
from hypothesis import given, strategies as st

from liftbasis.errors import DimensionMismatch, IndexOutOfRange, StreamExhausted
from liftbasis.matrix import (
    ColumnPermutation,
    IntMatrix,
    RowStream,
    SparseRow,
    add_col_multiple,
    add_row_multiple,
    banded_stream,
    identity_stream,
    mat_mul,
    padded_stream,
    scale_row,
    take_prefix,
)


def matrices(rows=st.integers(1, 4), cols=st.integers(1, 4), entries=st.integers(-50, 50)):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.lists(entries, min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0]).map(
            lambda rs: IntMatrix(rs, ncols=rc[1])
        )
    )


def test_add_row_multiple():
    assert add_row_multiple(IntMatrix.identity(2), 0, 1, 5) == IntMatrix([[1, 0], [5, 1]])
    assert add_row_multiple(IntMatrix.identity(2), 0, 1, 0) == IntMatrix.identity(2)
    assert add_row_multiple(IntMatrix([[1, 2], [3, 4]]), 1, 0, -1) == IntMatrix([[-2, -2], [3, 4]])
    with pytest.raises(IndexOutOfRange):
        add_row_multiple(IntMatrix.identity(2), 0, 2, 1)


def test_add_col_multiple():
    assert add_col_multiple(IntMatrix.identity(2), 0, 1, 3) == IntMatrix([[1, 3], [0, 1]])
    assert add_col_multiple(IntMatrix.identity(2), 0, 1, 0) == IntMatrix.identity(2)
    assert add_col_multiple(IntMatrix([[1, 2], [3, 4]]), 0, 1, 2) == IntMatrix([[1, 4], [3, 10]])
    with pytest.raises(IndexOutOfRange):
        add_col_multiple(IntMatrix.identity(2), -1, 1, 1)


def test_scale_row():
    assert scale_row(IntMatrix.identity(2), 0, 1) == IntMatrix.identity(2)
    assert scale_row(IntMatrix([[2, 4]]), 0, 3) == IntMatrix([[6, 12]])
    assert scale_row(IntMatrix([[1, 1]]), 0, 0) == IntMatrix([[0, 0]])
    with pytest.raises(IndexOutOfRange):
        scale_row(IntMatrix([[1, 1]]), 1, 2)


def test_mat_mul():
    b = IntMatrix([[3, -1], [7, 2]])
    assert mat_mul(IntMatrix.identity(2), b) == b
    assert IntMatrix([[2, 0], [0, 2]]) @ IntMatrix([[1, 1], [1, 1]]) == IntMatrix([[2, 2], [2, 2]])
    with pytest.raises(DimensionMismatch):
        mat_mul(IntMatrix.zeros(2, 3), IntMatrix.zeros(2, 2))


def test_operations_do_not_mutate():
    m = IntMatrix([[1, 2], [3, 4]])
    add_row_multiple(m, 0, 1, 7)
    add_col_multiple(m, 0, 1, 7)
    scale_row(m, 0, 7)
    assert m == IntMatrix([[1, 2], [3, 4]])


@given(matrices(), st.data())
def test_elementary_operations_invertible(m, data):
    c = data.draw(st.integers(-10**6, 10**6))
    if m.nrows > 1:
        src, dst = data.draw(st.permutations(range(m.nrows)))[:2]
        assert add_row_multiple(add_row_multiple(m, src, dst, c), src, dst, -c) == m
    if m.ncols > 1:
        src, dst = data.draw(st.permutations(range(m.ncols)))[:2]
        assert add_col_multiple(add_col_multiple(m, src, dst, c), src, dst, -c) == m


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(*[matrices(st.just(n), st.just(n))] * 3)))
def test_mat_mul_associative(abc):
    a, b, c = abc
    assert (a @ b) @ c == a @ (b @ c)


def test_sparse_row_invariants():
    row = SparseRow({5: 2, 1: 0, 3: -1})
    assert row.items() == ((3, -1), (5, 2))
    assert row.width == 6
    assert row.get(5) == 2 and row.get(4) == 0
    assert SparseRow().width == 0
    assert SparseRow.from_dense([0, 7, 0]).items() == ((1, 7),)
    with pytest.raises(IndexOutOfRange):
        SparseRow({-1: 3})


def test_take_prefix_examples():
    assert take_prefix(identity_stream(), 3, 3) == IntMatrix.identity(3)
    with pytest.raises(StreamExhausted):
        take_prefix(RowStream.from_rows([]), 1, 1)
    assert take_prefix(banded_stream(1), 2, 2) == IntMatrix([[1, 1, 0], [0, 1, 1]])


def test_take_prefix_widens_to_support():
    s = RowStream.from_rows([SparseRow({4: 1})])
    assert take_prefix(s, 1, 2).shape == (1, 5)


def test_prefix_persistence():
    s = banded_stream(3)
    window = take_prefix(s, 3, 3)
    copy = window.tolist()
    more = [s.pull() for _ in range(5)]
    assert window.tolist() == copy
    assert s.rows_consumed == 8
    assert more[0] == SparseRow({3: 1, 4: 3})


def test_padded_stream():
    m = IntMatrix([[2, 1], [1, 1]])
    s = padded_stream(m)
    assert take_prefix(s, 4, 4) == IntMatrix([[2, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])


def test_row_stream_iteration_stops_on_finite_end():
    s = RowStream.from_rows([[1, 0], [0, 1]])
    assert [r.items() for r in s] == [((0, 1),), ((1, 1),)]
    with pytest.raises(StreamExhausted):
        s.pull()


def test_column_permutation():
    J = ColumnPermutation([2, 0])
    assert J[0] == 2 and J.row_of(0) == 1 and J.row_of(5) is None
    J.append(1)
    assert list(J) == [2, 0, 1]
    with pytest.raises(ValueError):
        J.append(0)
    with pytest.raises(ValueError):
        ColumnPermutation([1, 1])


def test_intmatrix_shape_checks():
    with pytest.raises(DimensionMismatch):
        IntMatrix([[1, 2], [3]])
    assert IntMatrix([], ncols=3).shape == (0, 3)
    assert IntMatrix([[1, 2, 3]]).transpose() == IntMatrix([[1], [2], [3]])
