import dataclasses

import pytest
from hypothesis import given, settings, strategies as st

from liftbasis.arith import Modulus
from liftbasis.errors import NotABasisModP, TooManyRows
from liftbasis.finite import get_basis_finite, replay_matches, replay_reduction
from liftbasis.matrix import IntMatrix
from liftbasis.oracle import is_basis_mod_q, random_basis_mod_q, verify_lift


@pytest.mark.parametrize("n", [1, 2, 5])
def test_identity_is_its_own_lift(n):
    res = get_basis_finite(IntMatrix.identity(n), Modulus(2, 2))
    assert res.lifted == IntMatrix.identity(n)
    assert res.units == (1,) * n
    assert list(res.pivots) == list(range(n))


def test_upper_unitriangular():
    a = IntMatrix([[1, 4], [0, 1]])
    res = get_basis_finite(a, Modulus(2, 2))
    assert verify_lift(a, res).ok


def test_even_first_row_rejected():
    with pytest.raises(NotABasisModP) as exc:
        get_basis_finite(IntMatrix([[2, 0], [0, 1]]), Modulus(2, 1))
    assert exc.value.row == 0


def test_more_rows_than_columns():
    with pytest.raises(TooManyRows):
        get_basis_finite(IntMatrix([[1, 0], [0, 1], [1, 1]]), Modulus(3, 1))


def test_frozen_regression_instance():
    a = random_basis_mod_q(4, Modulus(3, 2), 11, 16)
    assert a == IntMatrix([[23, 0, -15, -18], [18, -18, 9, -13], [0, 9, -14, -18], [-18, -1, -9, -18]])
    res = get_basis_finite(a, Modulus(3, 2))
    assert res.lifted == IntMatrix([[1, 0, -3, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]])
    assert res.units == (2, 2, -2, -1)
    assert list(res.pivots) == [0, 3, 2, 1]
    assert res.reduction_witness == IntMatrix([[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]])
    assert replay_matches(res)
    assert verify_lift(a, res).ok


def test_replay_on_identity():
    res = get_basis_finite(IntMatrix.identity(3), Modulus(5, 1))
    assert replay_reduction(res) == IntMatrix.identity(3)
    assert replay_matches(res)


def test_replay_detects_tampering():
    a = random_basis_mod_q(4, Modulus(3, 2), 11, 16)
    res = get_basis_finite(a, Modulus(3, 2))
    rows = res.lifted.tolist()
    rows[2][0] += 1
    bad = dataclasses.replace(res, lifted=IntMatrix(rows))
    assert not replay_matches(bad)
    assert not verify_lift(a, bad).ok


def test_deterministic():
    a = random_basis_mod_q(7, Modulus(5, 2), 3, 28)
    assert get_basis_finite(a, Modulus(5, 2)) == get_basis_finite(a, Modulus(5, 2))


def test_inverse_witness_is_inverse_of_transform():
    a = random_basis_mod_q(6, Modulus(2, 3), 8, 24)
    res = get_basis_finite(a, Modulus(2, 3))
    assert res.transform @ res.inverse_witness == IntMatrix.identity(6)


square_instance = st.tuples(
    st.integers(1, 10), st.sampled_from([2, 3, 5]), st.integers(1, 3), st.integers(0, 10**6)
)


@settings(max_examples=150, deadline=None)
@given(square_instance)
def test_generated_instances_verify(params):
    n, p, nu, seed = params
    mod = Modulus(p, nu)
    a = random_basis_mod_q(n, mod, seed, 4 * n)
    res = get_basis_finite(a, mod)
    assert verify_lift(a, res).ok
    assert replay_matches(res)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 5), st.sampled_from([2, 3, 5]), st.integers(1, 3), st.data())
def test_succeeds_exactly_on_bases(n, p, nu, data):
    mod = Modulus(p, nu)
    rows = data.draw(st.lists(st.lists(st.integers(-30, 30), min_size=n, max_size=n), min_size=n, max_size=n))
    a = IntMatrix(rows, ncols=n)
    if is_basis_mod_q(a, mod):
        assert verify_lift(a, get_basis_finite(a, mod)).ok
    else:
        with pytest.raises(NotABasisModP):
            get_basis_finite(a, mod)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 4), st.integers(0, 3), st.sampled_from([2, 3]), st.integers(1, 2), st.integers(0, 10**6))
def test_wide_inputs(m, extra, p, nu, seed):
    mod = Modulus(p, nu)
    n = m + extra
    square = random_basis_mod_q(n, mod, seed, 4 * n)
    a = square.submatrix(range(m), range(n))
    res = get_basis_finite(a, mod)
    assert res.lifted.shape == (m, n)
    assert verify_lift(a, res).ok
