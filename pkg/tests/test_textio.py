import json

import pytest
from hypothesis import given, strategies as st

from liftbasis.arith import Modulus
from liftbasis.errors import FormatError
from liftbasis.finite import get_basis_finite
from liftbasis.matrix import IntMatrix, SparseRow
from liftbasis.oracle import standard_suite, verify_rows
from liftbasis import textio


def test_matrix_round_trip_on_suite():
    for inst in standard_suite(100):
        assert textio.parse_matrix(textio.format_matrix(inst.matrix)) == inst.matrix


@given(st.integers(0, 4), st.integers(0, 4), st.data())
def test_matrix_round_trip(r, c, data):
    rows = data.draw(st.lists(st.lists(st.integers(-10**30, 10**30), min_size=c, max_size=c), min_size=r, max_size=r))
    m = IntMatrix(rows, ncols=c)
    assert textio.parse_matrix(textio.format_matrix(m)) == m


def test_matrix_comments_and_errors():
    assert textio.parse_matrix("# note\n1 2\n3 -4\n") == IntMatrix([[3, -4]])
    for bad in ["", "2 2\n1 0\n", "1 2\n1 x\n", "1 2\n1 2 3\n", "1 1\n1\n2\n"]:
        with pytest.raises(FormatError):
            textio.parse_matrix(bad)


def test_sparse_stream_format():
    rows = [SparseRow({0: 1, 3: -2}), SparseRow(), SparseRow({2: 5})]
    text = textio.format_stream(rows)
    assert text == "0:1 3:-2\n\n2:5\n.\n"
    assert list(textio.read_stream(text.splitlines())) == rows


def test_sparse_stream_errors():
    with pytest.raises(FormatError):
        list(textio.iter_stream_rows(["0:1"]))
    with pytest.raises(FormatError):
        textio.parse_sparse_row("3")
    with pytest.raises(FormatError):
        textio.parse_sparse_row("-1:2")


def lift_example():
    mod = Modulus(3, 2)
    a = IntMatrix([[2, 9], [1, 1]])
    res = get_basis_finite(a, mod)
    return a, res, mod, verify_rows(a, res.lifted, res.units, mod)


def test_lift_document_text_round_trip():
    a, res, mod, rep = lift_example()
    doc = textio.parse_lift_document(textio.format_lift_document(a, res.lifted, res.units, res.pivots, mod, rep))
    assert doc["modulus"] == mod and doc["input"] == a and doc["lifted"] == res.lifted
    assert doc["units"] == list(res.units) and doc["pivots"] == list(res.pivots)


def test_lift_document_json_round_trip():
    a, res, mod, rep = lift_example()
    text = textio.lift_document_json(a, res.lifted, res.units, res.pivots, mod, rep, command="lift")
    raw = json.loads(text)
    assert raw["modulus"] == {"p": 3, "nu": 2, "q": 9}
    assert raw["verification"]["ok"] is True
    assert raw["command"] == "lift"
    doc = textio.parse_lift_document(text)
    assert doc["lifted"] == res.lifted


def test_lift_document_errors():
    with pytest.raises(FormatError):
        textio.parse_lift_document("modulus 3 2\nunits 1\n")
    with pytest.raises(FormatError):
        textio.parse_lift_document("bogus line\n")
    with pytest.raises(FormatError):
        textio.parse_lift_document('{"modulus": {"p": 3}}')
