"""Exact integer matrices, sparse rows and row streams.

``IntMatrix`` is an immutable dense matrix of Python ints.  The elementary
operations below return new matrices and never touch their argument.
``RowStream`` presents a row-finite omega x omega matrix as a sequence of
``SparseRow`` values pulled one at a time.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .errors import DimensionMismatch, IndexOutOfRange, StreamExhausted


class IntMatrix:
    """Dense rectangular matrix with arbitrary-precision integer entries."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable[int]], ncols: int | None = None):
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if ncols is None:
            if not data:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(data[0])
        for r in data:
            if len(r) != ncols:
                raise DimensionMismatch(f"ragged row of length {len(r)}, expected {ncols}")
        self._rows = data
        self.nrows = len(data)
        self.ncols = ncols

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(([int(i == j) for j in range(n)] for i in range(n)), ncols=n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls(([0] * ncols for _ in range(nrows)), ncols=ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, index):
        i, j = index
        return self._rows[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self._rows[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self._rows)

    def rows(self) -> tuple[tuple[int, ...], ...]:
        return self._rows

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(zip(*self._rows), ncols=self.nrows) if self.nrows else IntMatrix.zeros(self.ncols, 0)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IntMatrix":
        return IntMatrix(([self._rows[i][j] for j in cols] for i in rows), ncols=len(cols))

    def mod(self, m: int) -> "IntMatrix":
        """Entrywise least non-negative residues."""
        return IntMatrix(([x % m for x in r] for r in self._rows), ncols=self.ncols)

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.ncols, self._rows))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        return mat_mul(self, other)

    def __repr__(self):
        return f"IntMatrix({self.tolist()!r})"

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in r) for r in self._rows)


def _check_row(m: IntMatrix, *indices: int) -> None:
    for i in indices:
        if not 0 <= i < m.nrows:
            raise IndexOutOfRange(f"row {i} out of range for {m.nrows} rows")


def _check_col(m: IntMatrix, *indices: int) -> None:
    for j in indices:
        if not 0 <= j < m.ncols:
            raise IndexOutOfRange(f"column {j} out of range for {m.ncols} columns")


def add_row_multiple(m: IntMatrix, src: int, dst: int, c: int) -> IntMatrix:
    """Return ``m`` with ``c`` times row ``src`` added to row ``dst``."""
    _check_row(m, src, dst)
    if src == dst:
        raise ValueError("src and dst rows must differ")
    rows = m.tolist()
    rows[dst] = [x + c * y for x, y in zip(rows[dst], rows[src])]
    return IntMatrix(rows, ncols=m.ncols)


def add_col_multiple(m: IntMatrix, src: int, dst: int, c: int) -> IntMatrix:
    """Return ``m`` with ``c`` times column ``src`` added to column ``dst``."""
    _check_col(m, src, dst)
    if src == dst:
        raise ValueError("src and dst columns must differ")
    rows = m.tolist()
    for r in rows:
        r[dst] += c * r[src]
    return IntMatrix(rows, ncols=m.ncols)


def scale_row(m: IntMatrix, r: int, c: int) -> IntMatrix:
    _check_row(m, r)
    rows = m.tolist()
    rows[r] = [c * x for x in rows[r]]
    return IntMatrix(rows, ncols=m.ncols)


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a.ncols != b.nrows:
        raise DimensionMismatch(f"cannot multiply {a.nrows}x{a.ncols} by {b.nrows}x{b.ncols}")
    bcols = list(zip(*b.rows())) if b.nrows else [()] * b.ncols
    return IntMatrix(
        ([sum(x * y for x, y in zip(row, col)) for col in bcols] for row in a.rows()),
        ncols=b.ncols,
    )


class SparseRow:
    """Finitely supported integer row, stored as sorted ``(column, value)`` pairs.

    Zero values are dropped on construction.
    """

    __slots__ = ("_items",)

    def __init__(self, entries: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        if isinstance(entries, Mapping):
            entries = entries.items()
        acc: dict[int, int] = {}
        for col, val in entries:
            if col < 0:
                raise IndexOutOfRange(f"negative column index {col}")
            acc[col] = acc.get(col, 0) + int(val)
        self._items = tuple(sorted((c, v) for c, v in acc.items() if v != 0))

    @classmethod
    def from_dense(cls, values: Sequence[int]) -> "SparseRow":
        return cls(enumerate(values))

    @classmethod
    def unit(cls, i: int, value: int = 1) -> "SparseRow":
        return cls({i: value})

    def items(self) -> tuple[tuple[int, int], ...]:
        return self._items

    def get(self, col: int) -> int:
        for c, v in self._items:
            if c == col:
                return v
            if c > col:
                break
        return 0

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(c for c, _ in self._items)

    @property
    def width(self) -> int:
        """One past the largest column index in the support (0 for a zero row)."""
        return self._items[-1][0] + 1 if self._items else 0

    def to_dense(self, ncols: int) -> list[int]:
        out = [0] * ncols
        for c, v in self._items:
            out[c] = v
        return out

    def __eq__(self, other):
        if not isinstance(other, SparseRow):
            return NotImplemented
        return self._items == other._items

    def __hash__(self):
        return hash(self._items)

    def __len__(self):
        return len(self._items)

    def __repr__(self):
        return f"SparseRow({dict(self._items)!r})"


class RowStream:
    """Single-consumer pull-based source of sparse rows.

    ``finite`` declares that the producer may end; pulling past the end of a
    finite stream raises ``StreamExhausted``.  An infinite producer that stops
    anyway is reported the same way.
    """

    def __init__(self, producer: Iterable[SparseRow | Mapping[int, int]], finite: bool = False):
        self._it: Iterator = iter(producer)
        self.finite = finite
        self.rows_consumed = 0

    def pull(self) -> SparseRow:
        try:
            row = next(self._it)
        except StopIteration:
            what = "finite" if self.finite else "declared infinite"
            raise StreamExhausted(f"{what} stream ended after {self.rows_consumed} rows") from None
        if not isinstance(row, SparseRow):
            row = SparseRow(row)
        self.rows_consumed += 1
        return row

    def __iter__(self):
        while True:
            try:
                yield self.pull()
            except StreamExhausted:
                return

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int] | SparseRow], finite: bool = True) -> "RowStream":
        return cls(
            (r if isinstance(r, SparseRow) else SparseRow.from_dense(r) for r in rows),
            finite=finite,
        )

    @classmethod
    def from_matrix(cls, m: IntMatrix) -> "RowStream":
        return cls.from_rows(m.rows(), finite=True)

    @classmethod
    def generated(cls, row_fn: Callable[[int], SparseRow | Mapping[int, int]]) -> "RowStream":
        return cls((row_fn(i) for i in itertools.count()), finite=False)


def identity_stream() -> RowStream:
    return RowStream.generated(SparseRow.unit)


def banded_stream(c: int) -> RowStream:
    """Rows ``e_i + c*e_{i+1}``."""
    return RowStream.generated(lambda i: SparseRow({i: 1, i + 1: c}))


def padded_stream(m: IntMatrix) -> RowStream:
    """The block matrix ``m (+) I``: rows of ``m``, then ``e_j`` for ``j >= m.ncols``.

    For square ``m`` this embeds a finite basis problem into a row-finite
    omega x omega one without changing which rows form a basis.
    """
    n, w = m.nrows, m.ncols

    def row(i: int) -> SparseRow:
        if i < n:
            return SparseRow.from_dense(m.row(i))
        return SparseRow.unit(w + (i - n))

    return RowStream.generated(row)


def take_prefix(s: RowStream, n: int, cols: int) -> IntMatrix:
    """Pull ``n`` rows and lay them out densely.

    The window is ``max(cols, widest support seen)`` columns wide.
    """
    rows = [s.pull() for _ in range(n)]
    width = max([cols] + [r.width for r in rows])
    return IntMatrix((r.to_dense(width) for r in rows), ncols=width)


@dataclass
class ColumnPermutation:
    """Injective map from pivot-row index to pivot column."""

    columns: list[int]

    def __post_init__(self):
        if len(set(self.columns)) != len(self.columns):
            raise ValueError(f"pivot columns not distinct: {self.columns}")

    def __getitem__(self, row: int) -> int:
        return self.columns[row]

    def __len__(self):
        return len(self.columns)

    def __iter__(self):
        return iter(self.columns)

    def row_of(self, col: int) -> int | None:
        try:
            return self.columns.index(col)
        except ValueError:
            return None

    def append(self, col: int) -> None:
        if col in self.columns:
            raise ValueError(f"column {col} is already a pivot column")
        self.columns.append(col)
