"""Finite basis lifting by Gaussian elimination modulo p**nu.

``get_basis_finite`` takes integer rows that form a basis (or part of one)
of ``(Z/qZ)^n`` and returns integer rows ``y_i`` together with units ``u_i``
such that ``y_i = u_i * a_i (mod q)`` and the ``y_i`` are part of a Z-basis.

The elimination keeps three pieces of state:

* ``R`` -- the working rows, entries reduced to symmetric residues on entry,
  with the identity appended on the right to record every row operation;
* ``C`` -- the inverse of the accumulated row operations, updated by the
  matching column operation each time ``R`` gets a row operation;
* ``U`` -- the diagonal of units used to make each pivot congruent to 1.

Since ``C`` is a product of elementary matrices it has determinant 1, and
``C @ R`` stays congruent to ``U @ A``.  The lift is ``C`` times the reduced
form of ``R``, which in the pivot columns is exactly the identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .arith import Modulus, mgcdex, mods
from .errors import NotABasisModP, TooManyRows
from .matrix import ColumnPermutation, IntMatrix


@dataclass(frozen=True)
class RowOp:
    """``row[dst] += coeff * row[src]``"""

    src: int
    dst: int
    coeff: int


@dataclass
class LiftResult:
    """Certified output of a lift.

    ``lifted`` row ``i`` is congruent to ``units[i]`` times input row ``i``.
    ``pivots[i]`` is the column holding row ``i``'s pivot.
    """

    lifted: IntMatrix
    units: tuple[int, ...]
    pivots: ColumnPermutation
    reduction_witness: IntMatrix
    modulus: Modulus
    transform: IntMatrix | None = None
    inverse_witness: IntMatrix | None = None
    row_ops: tuple[RowOp, ...] = ()
    repairs: int = field(default=0, compare=False)
    skipped_repairs: int = field(default=0, compare=False)


def get_basis_finite(a: IntMatrix, mod: Modulus) -> LiftResult:
    m, n = a.shape
    if m > n:
        raise TooManyRows(f"{m} rows but only {n} columns: more rows than columns cannot form a basis")
    q = mod.q

    # R is [mods(A) | I]; the right block records the row operations.
    R = [[mods(x, q) for x in a.row(i)] + [int(i == j) for j in range(m)] for i in range(m)]
    C = [[int(i == j) for j in range(m)] for i in range(m)]
    U = [1] * m
    ind = list(range(n))
    ops: list[RowOp] = []
    repairs = skipped = 0

    def addrow(src, dst, c):
        if c:
            R[dst] = [x + c * y for x, y in zip(R[dst], R[src])]
            ops.append(RowOp(src, dst, c))

    def addcol(src, dst, c):
        if c:
            for row in C:
                row[dst] += c * row[src]

    for i in range(m):
        # Row i as it would look after clearing the earlier pivot columns.
        checkdet = [
            R[i][c] - sum(R[i][ind[k]] * R[k][c] for k in range(i)) for c in range(n)
        ]
        k = next((c for c in range(n) if gcd(checkdet[c], q) == 1), None)
        if k is None:
            raise NotABasisModP(i, mod)

        if ind[i] != k:
            j = ind.index(k)
            ind[i], ind[j] = ind[j], ind[i]

        u = pow(checkdet[k], -1, q)
        U[i] = mods(u, q)
        for c in range(n):
            R[i][c] = mods(u * R[i][c], q)

        # clear below the permuted diagonal
        for h in range(i):
            t = mods(R[i][ind[h]], q)
            addrow(h, i, -t)
            addcol(i, h, t)

        # clear above the permuted diagonal
        for h in range(i - 1, -1, -1):
            t = mods(R[h][ind[i]], q)
            addrow(i, h, -t)
            addcol(h, i, t)

        applied = _repair(C, R, ind, i, k, q, addrow, addcol)
        if applied is True:
            repairs += 1
        elif applied is False:
            skipped += 1

    left = [row[:n] for row in R]
    reduced = [[mods(x, q) for x in row] for row in left]
    lifted = [[sum(C[r][h] * reduced[h][c] for h in range(m)) for c in range(n)] for r in range(m)]
    return LiftResult(
        lifted=IntMatrix(lifted, ncols=n),
        units=tuple(U),
        pivots=ColumnPermutation(ind[:m]),
        reduction_witness=IntMatrix(left, ncols=n),
        modulus=mod,
        transform=IntMatrix(C, ncols=m),
        inverse_witness=IntMatrix((row[n:] for row in R), ncols=m),
        row_ops=tuple(ops),
        repairs=repairs,
        skipped_repairs=skipped,
    )


def _repair(C, R, ind, i, k, q, addrow, addcol):
    """Try to remove a nonzero multiple of q from the candidate ``C``.

    Index arithmetic follows the reference procedure literally: ``k`` is the
    pivot column found for row ``i`` and is reused as a row index of ``C``,
    and the correction amount is read one row higher after ``k`` is
    decremented.  The paired row/column operation keeps ``C @ R`` exact; it
    is applied only when it is well defined and leaves ``R`` unchanged modulo
    ``q``.  Returns None when the block does not trigger, True when a
    correction was applied and False when one was computed but skipped.
    """
    m = len(C)
    if not (k < m and ind[i] < m):
        return None
    target = C[k][ind[i]]
    # Set by the reference code but never read again.
    fl0 = mods(target, q) != 0
    if target == 0 or gcd(target, q) != q:
        return None

    getgcd = []
    for j in range(i):
        if sum(C[ii][j] ** 2 for ii in range(k)) == 0:
            getgcd.append(ind[j])
    if not getgcd or any(g >= m for g in getgcd):
        return None

    comb = mgcdex([C[k][g] for g in getgcd])
    if comb.gcd == 0 or mods(target, comb.gcd * q) != 0:
        fl0 = True
        return None
    del fl0

    k -= 1
    if k < 0 or C[k][ind[i]] % comb.gcd:
        return False
    temp = C[k][ind[i]] // comb.gcd
    steps = [(g, b * temp) for g, b in zip(getgcd, comb.coefficients)]
    if any(g == i or c % q for g, c in steps):
        return False
    for g, c in steps:
        addcol(g, i, -c)
        addrow(i, g, c)
    return True


def replay_reduction(result: LiftResult) -> IntMatrix:
    """Apply the recorded row operations to ``result.lifted``.

    For an untampered result this reproduces the reduced form of the
    elimination, which agrees with ``reduction_witness`` modulo q.
    """
    rows = result.lifted.tolist()
    for op in result.row_ops:
        rows[op.dst] = [x + op.coeff * y for x, y in zip(rows[op.dst], rows[op.src])]
    return IntMatrix(rows, ncols=result.lifted.ncols)


def replay_matches(result: LiftResult) -> bool:
    """True iff the replayed reduction agrees with the witness modulo q."""
    q = result.modulus.q
    return replay_reduction(result).mod(q) == result.reduction_witness.mod(q)
