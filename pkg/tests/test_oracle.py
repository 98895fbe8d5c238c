from math import prod

import pytest
from hypothesis import given, settings, strategies as st

from liftbasis.arith import Modulus
from liftbasis.errors import NotSquare, ShapeMismatch
from liftbasis.matrix import IntMatrix
from liftbasis.oracle import (
    det_exact,
    hermite_normal_form,
    hnf_pivots,
    in_row_lattice,
    is_basis_mod_q,
    is_hermite_normal_form,
    ModQReducer,
    mod_q_row_reduce,
    random_basis_mod_q,
    standard_suite,
    verify_rows,
)


def square(n, lo=-9, hi=9):
    return st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n).map(
        lambda rows: IntMatrix(rows, ncols=n)
    )


def cofactor_det(rows):
    if not rows:
        return 1
    return sum((-1) ** j * rows[0][j] * cofactor_det([r[:j] + r[j + 1:] for r in rows[1:]]) for j in range(len(rows)))


def test_det_examples():
    assert det_exact(IntMatrix.identity(4)) == 1
    assert det_exact(IntMatrix([[2, 1], [1, 1]])) == 1
    assert det_exact(IntMatrix([[2, 0], [0, 3]])) == 6
    assert det_exact(IntMatrix([[0, 1], [1, 0]])) == -1
    with pytest.raises(NotSquare):
        det_exact(IntMatrix([[1, 2]]))


@settings(max_examples=200)
@given(st.integers(1, 5).flatmap(square))
def test_det_matches_cofactor_expansion(m):
    assert det_exact(m) == cofactor_det(m.tolist())


def test_hnf_example():
    h, t = hermite_normal_form(IntMatrix([[2, 4], [1, 3]]))
    assert h == IntMatrix([[1, 1], [0, 2]])
    assert abs(det_exact(t)) == 1
    assert t @ IntMatrix([[2, 4], [1, 3]]) == h


def test_hnf_zero_rows_go_last():
    h, t = hermite_normal_form(IntMatrix([[2, 4], [1, 2]]))
    assert h == IntMatrix([[1, 2], [0, 0]])
    assert abs(det_exact(t)) == 1


@settings(max_examples=200)
@given(st.integers(1, 5).flatmap(square))
def test_hnf_properties(m):
    h, t = hermite_normal_form(m)
    assert is_hermite_normal_form(h)
    assert t @ m == h
    assert abs(det_exact(t)) == 1
    piv = hnf_pivots(h)
    d = det_exact(m)
    if len(piv) == m.nrows:
        assert abs(d) == prod(piv)
    else:
        assert d == 0


def test_det_equals_product_of_hnf_pivots_on_suite():
    for inst in standard_suite(100):
        h, _ = hermite_normal_form(inst.matrix)
        assert abs(det_exact(inst.matrix)) == prod(hnf_pivots(h))


def test_is_basis_mod_q():
    assert is_basis_mod_q(IntMatrix([[1, 4], [0, 1]]), Modulus(2, 2))
    assert not is_basis_mod_q(IntMatrix([[2, 0], [0, 1]]), Modulus(2, 1))
    assert is_basis_mod_q(IntMatrix([[3, 0], [0, 1]]), Modulus(2, 1))
    with pytest.raises(NotSquare):
        is_basis_mod_q(IntMatrix([[1, 0]]), Modulus(2, 1))


def test_in_row_lattice():
    basis = IntMatrix([[2, 0], [0, 3]])
    assert in_row_lattice([4, -3], basis)
    assert not in_row_lattice([1, 0], basis)
    assert in_row_lattice([0, 0], IntMatrix([], ncols=2))


def test_verify_accepts_correct_lift():
    a = IntMatrix([[3, 0], [0, 1]])
    rep = verify_rows(a, IntMatrix([[1, 0], [0, 1]]), [3, 1], Modulus(2, 3))
    assert rep.ok and rep.congruence_ok == [True, True]


def test_verify_detects_each_failure():
    mod = Modulus(2, 2)
    a = IntMatrix.identity(2)
    assert verify_rows(a, IntMatrix([[1, 1], [0, 1]]), [1, 1], mod).congruence_ok == [False, True]
    rep = verify_rows(a, IntMatrix([[1, 0], [0, 5]]), [1, 1], mod)
    assert rep.congruence_ok == [True, True] and not rep.unimodular_ok
    assert not verify_rows(a, a, [2, 1], mod).units_ok
    assert not verify_rows(IntMatrix([[2, 0], [0, 1]]), IntMatrix([[2, 0], [0, 1]]), [1, 1], mod).basis_mod_q_ok
    with pytest.raises(ShapeMismatch):
        verify_rows(a, IntMatrix.identity(3), [1, 1], mod)


def test_verify_non_square():
    mod = Modulus(3, 1)
    a = IntMatrix([[1, 3, 0]])
    assert verify_rows(a, IntMatrix([[1, 0, 0]]), [1], mod).ok
    assert verify_rows(a, IntMatrix([[1, 3, 1]]), [1], mod).congruence_ok == [False]
    assert not verify_rows(a, IntMatrix([[3, 3, 0]]), [1], mod).unimodular_ok
    assert not verify_rows(IntMatrix([[3, 3, 0]]), IntMatrix([[3, 3, 0]]), [1], mod).ok


def test_generator_identity_and_determinism():
    assert random_basis_mod_q(4, Modulus(3, 2), 5, 0, perturb=0) == IntMatrix.identity(4)
    assert random_basis_mod_q(6, Modulus(2, 3), 9, 24) == random_basis_mod_q(6, Modulus(2, 3), 9, 24)
    assert random_basis_mod_q(6, Modulus(2, 3), 9, 24) != random_basis_mod_q(6, Modulus(2, 3), 10, 24)


def test_generated_matrices_are_bases():
    for inst in standard_suite(200):
        assert is_basis_mod_q(inst.matrix, inst.modulus)


def test_mod_q_row_reduce():
    rows, piv = mod_q_row_reduce([[2, 1], [1, 1]], Modulus(3, 1))
    assert rows == [[1, 0], [0, 1]] and piv == [0, 1]
    with pytest.raises(ValueError):
        mod_q_row_reduce([[2, 4]], Modulus(2, 1))


def test_incremental_reducer_matches_batch_and_widens():
    mod = Modulus(5, 2)
    rows = [[3, 1], [7, 2, 4], [0, 5, 1, 2]]
    red = ModQReducer(mod)
    for i, row in enumerate(rows):
        red.add(row)
        padded = [r + [0] * (len(row) - len(r)) for r in rows[: i + 1]]
        assert (red.rows, red.pivots) == mod_q_row_reduce(padded, mod)
