"""Streaming elimination modulo p**nu over a row-finite omega x omega matrix.

Rows of the source are taken one per loop and never permuted.  The state
carries

* ``R`` -- reduction workspace; pivot rows are identity rows in the pivot
  columns and no entry is a nonzero multiple of q,
* ``C`` -- candidate lifted rows, always congruent to ``U * A`` modulo q,
* ``U`` -- units, one per processed row,
* ``J`` -- pivot column of each processed row,
* ``M`` -- the square matrix ``[C[K][J(K')]]``, for which ``C == M @ R``.

A row of ``C`` stops changing once every column it touches is a pivot
column whose ``R`` row has become an identity row; ``run_until`` loops
until a requested prefix of rows has reached that state.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .arith import Modulus, mgcdex, mods
from .errors import NotABasisModP, StabilizationTimeout, StreamExhausted
from .matrix import ColumnPermutation, IntMatrix, RowStream, SparseRow

# Hook called as hook(event, state); events are "pivot-normalized" (after the
# pivot of the new row is made exactly 1), "recomputed" (after C = M @ R) and
# "loop-end".
Observer = Callable[[str, "EliminationState"], None]


@dataclass
class EliminationState:
    modulus: Modulus
    source: RowStream
    I: int = 0
    R: list[list[int]] = field(default_factory=list)
    C: list[list[int]] = field(default_factory=list)
    U: list[int] = field(default_factory=list)
    J: ColumnPermutation = field(default_factory=lambda: ColumnPermutation([]))
    M: list[list[int]] = field(default_factory=list)
    width: int = 0
    consumed: list[SparseRow] = field(default_factory=list)
    pending: list[int] | None = None
    exhausted: bool = False
    loops: int = 0
    stabilized_at: dict[int, int] = field(default_factory=dict)
    observer: Observer | None = field(default=None, repr=False)

    @classmethod
    def start(cls, source: RowStream, modulus: Modulus, observer: Observer | None = None) -> "EliminationState":
        state = cls(modulus=modulus, source=source, observer=observer)
        state._read_next()
        return state

    @property
    def pivot_row(self) -> dict[int, int]:
        return {c: k for k, c in enumerate(self.J)}

    def _notify(self, event: str) -> None:
        if self.observer is not None:
            self.observer(event, self)

    def _grow(self, width: int) -> None:
        if width > self.width:
            extra = width - self.width
            for row in self.R:
                row.extend([0] * extra)
            for row in self.C:
                row.extend([0] * extra)
            self.width = width

    def _read_next(self) -> None:
        """Read the next source row with multiples of q replaced by 0."""
        try:
            row = self.source.pull()
        except StreamExhausted:
            if not self.source.finite:
                raise
            self.pending = None
            self.exhausted = True
            return
        self.consumed.append(row)
        self._grow(row.width)
        q = self.modulus.q
        self.pending = [0 if x % q == 0 else x for x in row.to_dense(self.width)]

    def step(self) -> "EliminationState":
        if self.exhausted:
            raise StreamExhausted(f"finite stream fully processed after {self.I} rows")
        q, p = self.modulus.q, self.modulus.p
        I, R, C, J = self.I, self.R, self.C, self.J
        w = self.width

        def clear(row):
            for K in range(I):
                f = row[J[K]]
                if f:
                    pr = R[K]
                    for j in range(w):
                        if pr[j]:
                            row[j] -= f * pr[j]
            return row

        # clear the earlier pivot columns in the new row, then find its pivot
        work = clear(list(self.pending) + [0] * (w - len(self.pending)))
        col = next((j for j in range(w) if work[j] % p), None)
        if col is None:
            raise NotABasisModP(I, self.modulus)
        J.append(col)

        # scale the raw source row by the unit and insert it in C and R
        u = mods(pow(work[col], -1, q), q)
        self.U.append(u)
        new = [0 if x % q == 0 else x for x in (u * x for x in self.consumed[I].to_dense(w))]
        C.append(list(new))
        R.append(clear(new))
        row = R[I]

        # the pivot is now 1 mod q; make it exactly 1 and mirror into C
        t = row[col] - 1
        row[col] = 1
        C[I][col] -= t
        self._notify("pivot-normalized")

        for j in range(w):
            if row[j] and row[j] % q == 0:
                C[I][j] -= row[j]
                row[j] = 0

        # clear above the pivot
        for K in range(I):
            f = R[K][col]
            if f:
                R[K] = [a - f * b for a, b in zip(R[K], row)]

        for r in R:
            for j in range(w):
                if r[j] and r[j] % q == 0:
                    r[j] = 0

        n = I + 1
        self.M = [[C[K][J[L]] for L in range(n)] for K in range(n)]
        pivots = set(J)
        nonpivot = [j for j in range(w) if j not in pivots]
        for ell in nonpivot:
            self._set_column(ell)
        self._notify("recomputed")

        for ell in nonpivot:
            self._repair_column(ell)

        self.loops += 1
        self._notify("loop-end")
        self._read_next()
        self.I += 1
        return self

    def _set_column(self, ell: int) -> None:
        M, R, C = self.M, self.R, self.C
        nz = [(K, R[K][ell]) for K in range(len(R)) if R[K][ell]]
        for r in range(len(C)):
            Mr = M[r]
            C[r][ell] = sum(Mr[K] * v for K, v in nz)

    def _repair_column(self, ell: int) -> None:
        """Zero the first nonzero entry of column ``ell`` of C when it is a
        multiple of q and can be written off against pivot columns."""
        q = self.modulus.q
        C, R, J = self.C, self.R, self.J
        k = next((r for r in range(len(C)) if C[r][ell]), None)
        if k is None or C[k][ell] % q:
            return
        support = [
            K
            for K, c in enumerate(J)
            if C[k][c] and all(C[r][c] == 0 for r in range(k)) and R[K][ell]
        ]
        if not support:
            return
        comb = mgcdex([C[k][J[K]] for K in support])
        d = comb.gcd
        if C[k][ell] % (q * d):
            return
        factor = C[k][ell] // d
        for K, b in zip(support, comb.coefficients):
            R[K][ell] -= b * factor
        self._set_column(ell)
        assert C[k][ell] == 0

    def blocking_columns(self, row: int) -> set[int]:
        """Columns in the support of C[row] that can still change it."""
        piv = self.pivot_row
        out = set()
        for j, x in enumerate(self.C[row]):
            if not x:
                continue
            K = piv.get(j)
            if K is None or not self._is_identity_row(K):
                out.add(j)
        return out

    def _is_identity_row(self, K: int) -> bool:
        c = self.J[K]
        return all(x == (1 if j == c else 0) for j, x in enumerate(self.R[K]))

    def is_stable(self, row: int) -> bool:
        if row >= self.I:
            raise IndexError(f"row {row} not processed yet (I = {self.I})")
        return self.exhausted or not self.blocking_columns(row)


def step_loop(state: EliminationState) -> EliminationState:
    return state.step()


def stabilization_check(state: EliminationState, row: int) -> bool:
    """True iff row ``row`` of C can no longer change.

    Every nonzero entry of the row must sit in a pivot column whose R row is
    an identity row.  Such a row is a fixed combination of identity rows of
    R, and later loops never alter those rows.
    """
    return state.is_stable(row)


@dataclass
class StreamLiftReport:
    rows: list[SparseRow]
    units: tuple[int, ...]
    pivots: ColumnPermutation
    loops_executed: int
    stabilized_at: list[int]
    modulus: Modulus

    def lifted_matrix(self, ncols: int | None = None) -> IntMatrix:
        width = max([ncols or 0] + [r.width for r in self.rows])
        return IntMatrix((r.to_dense(width) for r in self.rows), ncols=width)

    def as_lift_result(self, ncols: int | None = None):
        """View as a LiftResult-like object accepted by ``verify_lift``."""
        from .finite import LiftResult

        lifted = self.lifted_matrix(ncols)
        return LiftResult(
            lifted=lifted,
            units=self.units,
            pivots=self.pivots,
            reduction_witness=lifted,
            modulus=self.modulus,
        )


def _update_stability(state: EliminationState) -> None:
    for r in range(state.I):
        if r not in state.stabilized_at and state.is_stable(r):
            state.stabilized_at[r] = state.loops


def run_until(state: EliminationState, target_rows: int, max_loops: int) -> StreamLiftReport:
    """Loop until rows ``0..target_rows-1`` are stable or ``max_loops`` is hit.

    A finite source that runs dry ends the run early; every processed row is
    then final and is reported.
    """
    if target_rows < 1:
        raise ValueError("target_rows must be >= 1")
    _update_stability(state)
    while True:
        if state.exhausted or (
            state.I >= target_rows and all(r in state.stabilized_at for r in range(target_rows))
        ):
            break
        if state.loops >= max_loops:
            unsettled = [r for r in range(target_rows) if r not in state.stabilized_at]
            blocking = {r: state.blocking_columns(r) for r in unsettled if r < state.I}
            raise StabilizationTimeout(state.loops, blocking, [r for r in unsettled if r >= state.I])
        state.step()
        _update_stability(state)

    n = min(target_rows, state.I) if not state.exhausted else state.I
    return StreamLiftReport(
        rows=[SparseRow.from_dense(state.C[r]) for r in range(n)],
        units=tuple(state.U[:n]),
        pivots=ColumnPermutation(list(state.J)[:n]),
        loops_executed=state.loops,
        stabilized_at=[state.stabilized_at[r] for r in range(n)],
        modulus=state.modulus,
    )


def lift_stream(source: RowStream, modulus: Modulus, target_rows: int, max_loops: int) -> StreamLiftReport:
    return run_until(EliminationState.start(source, modulus), target_rows, max_loops)
