"""Independent certification of lifts, plus instance generation.

Nothing here calls into either elimination engine.  Unimodularity of a
square lift is certified twice: by a fraction-free determinant and by the
pivots of its Hermite normal form.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from math import gcd
from typing import Iterator, Sequence

from .arith import Modulus
from .errors import NotSquare, ShapeMismatch
from .matrix import IntMatrix


def det_exact(m: IntMatrix) -> int:
    """Bareiss fraction-free determinant."""
    if not m.is_square:
        raise NotSquare(f"determinant of a {m.nrows}x{m.ncols} matrix")
    n = m.nrows
    a = m.tolist()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def hermite_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form ``H = T @ m`` with ``T`` unimodular.

    Convention: echelon rows with positive pivots, entries above each pivot
    reduced into ``[0, pivot)``, zero rows last.
    """
    rows, cols = m.shape
    H = m.tolist()
    T = [[int(i == j) for j in range(rows)] for i in range(rows)]

    def combine(i, j, a, b, c, d):
        # (row_i, row_j) <- (a*row_i + b*row_j, c*row_i + d*row_j), ad - bc = +-1
        for M in (H, T):
            ri, rj = M[i], M[j]
            M[i] = [a * x + b * y for x, y in zip(ri, rj)]
            M[j] = [c * x + d * y for x, y in zip(ri, rj)]

    r = 0
    for c in range(cols):
        if r == rows:
            break
        for i in range(r + 1, rows):
            if H[i][c] == 0:
                continue
            x, y = H[r][c], H[i][c]
            g, s, t = _xgcd(x, y)
            combine(r, i, s, t, -y // g, x // g)
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            T[r] = [-x for x in T[r]]
        piv = H[r][c]
        for i in range(r):
            f = H[i][c] // piv
            if f:
                H[i] = [x - f * y for x, y in zip(H[i], H[r])]
                T[i] = [x - f * y for x, y in zip(T[i], T[r])]
        r += 1
    return IntMatrix(H, ncols=cols), IntMatrix(T, ncols=rows)


def _xgcd(a, b):
    # kept separate from arith.xgcd so the oracle shares no code with the engines
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        k = a // b
        a, b = b, a - k * b
        s0, s1 = s1, s0 - k * s1
        t0, t1 = t1, t0 - k * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def hnf_pivots(h: IntMatrix) -> list[int]:
    out = []
    for row in h.rows():
        lead = next((x for x in row if x != 0), None)
        if lead is not None:
            out.append(lead)
    return out


def is_hermite_normal_form(h: IntMatrix) -> bool:
    last = -1
    seen_zero = False
    for i, row in enumerate(h.rows()):
        lead = next((j for j, x in enumerate(row) if x != 0), None)
        if lead is None:
            seen_zero = True
            continue
        if seen_zero or lead <= last or row[lead] <= 0:
            return False
        if any(not 0 <= h[r, lead] < row[lead] for r in range(i)):
            return False
        if any(h[r, lead] != 0 for r in range(i + 1, h.nrows)):
            return False
        last = lead
    return True


def is_basis_mod_q(m: IntMatrix, mod: Modulus) -> bool:
    """Square rows form a basis of (Z/qZ)^n iff the determinant is a unit."""
    return det_exact(m) % mod.p != 0


def in_row_lattice(x: Sequence[int], basis: IntMatrix) -> bool:
    """Is ``x`` an integer combination of the rows of ``basis``?"""
    if basis.nrows == 0:
        return all(v == 0 for v in x)
    h, _ = hermite_normal_form(basis)
    rest = list(x)
    for row in h.rows():
        lead = next((j for j, v in enumerate(row) if v != 0), None)
        if lead is None:
            break
        if rest[lead] % row[lead]:
            return False
        f = rest[lead] // row[lead]
        rest = [a - f * b for a, b in zip(rest, row)]
    return all(v == 0 for v in rest)


def _maximal_minors(m: IntMatrix) -> Iterator[int]:
    for cols in itertools.combinations(range(m.ncols), m.nrows):
        yield det_exact(m.submatrix(range(m.nrows), cols))


@dataclass
class VerificationReport:
    congruence_ok: list[bool]
    unimodular_ok: bool
    basis_mod_q_ok: bool
    units_ok: bool
    details: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.congruence_ok) and self.unimodular_ok and self.basis_mod_q_ok and self.units_ok

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "congruence_ok": list(self.congruence_ok),
            "unimodular_ok": self.unimodular_ok,
            "basis_mod_q_ok": self.basis_mod_q_ok,
            "units_ok": self.units_ok,
            "details": list(self.details),
        }


def verify_lift(input: IntMatrix, result) -> VerificationReport:
    """Check a lift against its input.

    ``result`` needs ``lifted``, ``units`` and ``modulus`` attributes.
    """
    return verify_rows(input, result.lifted, result.units, result.modulus)


def verify_rows(input: IntMatrix, lifted: IntMatrix, units: Sequence[int], mod: Modulus) -> VerificationReport:
    if input.shape != lifted.shape or len(units) != input.nrows:
        raise ShapeMismatch(
            f"input {input.shape}, lifted {lifted.shape}, {len(units)} units"
        )
    q, p = mod.q, mod.p
    details = []

    units_ok = True
    for i, u in enumerate(units):
        if u % p == 0:
            units_ok = False
            details.append(f"unit {u} of row {i} is divisible by {p}")

    congruence = []
    for i in range(input.nrows):
        bad = [j for j in range(input.ncols) if (lifted[i, j] - units[i] * input[i, j]) % q]
        congruence.append(not bad)
        if bad:
            details.append(f"row {i} not congruent to unit * input modulo {q} in columns {bad}")

    if input.is_square:
        d = det_exact(lifted)
        h, _ = hermite_normal_form(lifted)
        piv = hnf_pivots(h)
        by_det = abs(d) == 1
        by_hnf = len(piv) == lifted.nrows and all(x == 1 for x in piv)
        if by_det != by_hnf:
            details.append(f"determinant ({d}) and HNF pivots ({piv}) disagree")
        elif not by_det:
            details.append(f"lifted determinant is {d}, not +-1")
        unimodular_ok = by_det and by_hnf
        basis_ok = is_basis_mod_q(input, mod)
    else:
        # Rows extend to a Z-basis iff the transpose has HNF [I; 0], and iff
        # the maximal minors are coprime.
        h, _ = hermite_normal_form(lifted.transpose())
        top = IntMatrix(h.rows()[: lifted.nrows], ncols=lifted.nrows)
        by_hnf = top == IntMatrix.identity(lifted.nrows) and not any(any(r) for r in h.rows()[lifted.nrows :])
        by_minors = gcd(*_maximal_minors(lifted)) == 1 if lifted.nrows else True
        if by_hnf != by_minors:
            details.append("HNF and maximal-minor certificates disagree")
        elif not by_hnf:
            details.append("lifted rows do not extend to a basis of Z^n")
        unimodular_ok = by_hnf and by_minors
        basis_ok = lifted.nrows == 0 or any(x % p for x in _maximal_minors(input))
    if not basis_ok:
        details.append(f"input rows are not a basis modulo {q}")
    return VerificationReport(congruence, unimodular_ok, basis_ok, units_ok, details)


def random_basis_mod_q(n: int, mod: Modulus, seed: int, ops: int, perturb: int = 2) -> IntMatrix:
    """Random integer matrix whose rows are a basis modulo q.

    Starts from the identity, applies ``ops`` random row operations (add a
    multiple of another row, swap two rows, scale a row by a unit) modulo q,
    then adds ``q * randint(-perturb, perturb)`` to every entry.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    q, p = mod.q, mod.p
    rng = random.Random(seed)
    a = [[int(i == j) for j in range(n)] for i in range(n)]
    units = [u for u in range(1, q) if u % p] or [1]
    for _ in range(ops):
        kind = rng.randrange(3)
        if kind == 0 and n > 1:
            src, dst = rng.sample(range(n), 2)
            c = rng.randrange(q)
            a[dst] = [(x + c * y) % q for x, y in zip(a[dst], a[src])]
        elif kind == 1 and n > 1:
            i, j = rng.sample(range(n), 2)
            a[i], a[j] = a[j], a[i]
        else:
            r = rng.randrange(n)
            u = rng.choice(units)
            a[r] = [(u * x) % q for x in a[r]]
    if perturb:
        a = [[x + q * rng.randint(-perturb, perturb) for x in row] for row in a]
    return IntMatrix(a, ncols=n)


@dataclass(frozen=True)
class SuiteInstance:
    seed: int
    n: int
    modulus: Modulus
    matrix: IntMatrix


def standard_suite(count: int = 500, ops: int | None = None) -> Iterator[SuiteInstance]:
    """Deterministic instances cycling n over 1..10, p over {2,3,5}, nu over {1,2,3}."""
    for seed in range(count):
        n = 1 + seed % 10
        p = (2, 3, 5)[(seed // 10) % 3]
        nu = 1 + (seed // 30) % 3
        mod = Modulus(p, nu)
        k = ops if ops is not None else 4 * n
        yield SuiteInstance(seed, n, mod, random_basis_mod_q(n, mod, seed, k))


class ModQReducer:
    """Row-by-row reduction over Z/qZ, the textbook way, fed one row at a time.

    Each new row has earlier pivot columns cleared, is scaled so its first
    unit entry becomes 1, and is then used to clear that column in the
    earlier rows.  ``rows`` holds least non-negative residues; rows narrower
    than the widest row seen are zero-padded.
    """

    def __init__(self, mod: Modulus):
        self.mod = mod
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []
        self.width = 0

    def add(self, raw: Sequence[int]) -> int:
        """Reduce one more row and return its pivot column.

        Raises ValueError if the row has no unit entry after clearing.
        """
        q, p = self.mod.q, self.mod.p
        if len(raw) > self.width:
            for r in self.rows:
                r.extend([0] * (len(raw) - self.width))
            self.width = len(raw)
        row = [x % q for x in raw] + [0] * (self.width - len(raw))
        for k, c in enumerate(self.pivots):
            f = row[c]
            if f:
                row = [(x - f * y) % q for x, y in zip(row, self.rows[k])]
        c = next((j for j, x in enumerate(row) if x % p), None)
        if c is None:
            raise ValueError(f"row {len(self.rows)} has no unit entry after clearing")
        inv = pow(row[c], -1, q)
        row = [(x * inv) % q for x in row]
        for k, done in enumerate(self.rows):
            f = done[c]
            if f:
                self.rows[k] = [(x - f * y) % q for x, y in zip(done, row)]
        self.rows.append(row)
        self.pivots.append(c)
        return c


def mod_q_row_reduce(rows: Sequence[Sequence[int]], mod: Modulus) -> tuple[list[list[int]], list[int]]:
    """Textbook reduction of ``rows`` over Z/qZ; see ``ModQReducer``.

    Returns the reduced rows (least non-negative residues) and the pivot
    columns.  Raises ValueError if some row has no unit entry.
    """
    red = ModQReducer(mod)
    for row in rows:
        red.add(row)
    return red.rows, red.pivots
