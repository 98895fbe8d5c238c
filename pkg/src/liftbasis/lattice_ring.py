"""The free lattice ring of a finite boolean algebra, in atom coordinates.

A finite boolean algebra with ``k`` atoms is modelled on subsets of
``{0, ..., k-1}`` stored as int bitmasks.  Its free lattice ring, the
group ring with each orthogonal sum ``e + f`` identified with ``e`` plus
``f``, is the ring of integer ``k``-vectors under coordinatewise operations:
an element ``sum(e_i * n_i)`` has coordinate ``sum(n_i for e_i containing a)``
at atom ``a``.  Idempotents are exactly the 0/1 vectors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Iterator, Sequence

from .errors import DimensionMismatch


def bits(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def mask_of(atoms: Iterable[int]) -> int:
    out = 0
    for a in atoms:
        out |= 1 << a
    return out


@dataclass(frozen=True)
class FiniteBooleanAlgebra:
    k: int

    @property
    def one(self) -> int:
        return (1 << self.k) - 1

    zero = 0

    def meet(self, e: int, f: int) -> int:
        return e & f

    def join(self, e: int, f: int) -> int:
        return e | f

    def complement(self, e: int) -> int:
        return self.one ^ e

    def atoms(self) -> list[int]:
        return [1 << i for i in range(self.k)]

    def elements(self) -> range:
        return range(1 << self.k)

    def nonzero(self) -> range:
        return range(1, 1 << self.k)


@dataclass(frozen=True)
class LatticeRingElement:
    coords: tuple[int, ...]

    @classmethod
    def idempotent(cls, mask: int, k: int) -> "LatticeRingElement":
        return cls(tuple((mask >> a) & 1 for a in range(k)))

    @property
    def k(self) -> int:
        return len(self.coords)

    def _check(self, other: "LatticeRingElement") -> None:
        if self.k != other.k:
            raise DimensionMismatch(f"elements over {self.k} and {other.k} atoms")

    def __add__(self, other):
        return s_add(self, other)

    def __mul__(self, other):
        return s_mul(self, other)

    def __neg__(self):
        return LatticeRingElement(tuple(-x for x in self.coords))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, n: int) -> "LatticeRingElement":
        return LatticeRingElement(tuple(n * x for x in self.coords))

    def is_idempotent(self) -> bool:
        return self * self == self

    def support(self) -> int:
        return mask_of(a for a, x in enumerate(self.coords) if x)


def s_add(x: LatticeRingElement, y: LatticeRingElement) -> LatticeRingElement:
    x._check(y)
    return LatticeRingElement(tuple(a + b for a, b in zip(x.coords, y.coords)))


def s_mul(x: LatticeRingElement, y: LatticeRingElement) -> LatticeRingElement:
    x._check(y)
    return LatticeRingElement(tuple(a * b for a, b in zip(x.coords, y.coords)))


def to_canonical(terms: Iterable[tuple[int, int]], k: int) -> LatticeRingElement:
    """Atom coordinates of the formal sum ``sum(n * e)`` over ``(e, n)`` terms.

    >>> to_canonical([(0b11, 1), (0b01, -1)], 2)
    LatticeRingElement(coords=(0, 1))
    """
    coords = [0] * k
    for mask, n in terms:
        if mask >> k:
            raise DimensionMismatch(f"idempotent {mask:#b} has atoms beyond {k}")
        for a in bits(mask):
            coords[a] += n
    return LatticeRingElement(tuple(coords))


@dataclass(frozen=True)
class OrthogonalDecomposition:
    """Pairs ``(idempotent, multiplicity)`` with pairwise disjoint idempotents."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = 0
        for mask, n in self.pairs:
            if mask & seen:
                raise ValueError("idempotents must be pairwise orthogonal")
            if n == 0:
                raise ValueError("multiplicities must be nonzero")
            seen |= mask

    def generator(self, k: int) -> LatticeRingElement:
        return to_canonical(self.pairs, k)


def decompose_ideal(generators: Sequence[LatticeRingElement]) -> OrthogonalDecomposition:
    """Single generator ``sum(f_i * m_i)`` of the ideal spanned by ``generators``.

    An ideal of the coordinate ring is determined atom by atom by the gcd of
    the generators' coordinates there; atoms sharing a nonzero gcd are grouped
    into one idempotent.  Pairs are ordered by their lowest atom.
    """
    if not generators:
        return OrthogonalDecomposition(())
    k = generators[0].k
    for g in generators:
        generators[0]._check(g)
    groups: dict[int, int] = {}
    for a in range(k):
        g = gcd(*(x.coords[a] for x in generators))
        if g:
            groups[g] = groups.get(g, 0) | 1 << a
    pairs = sorted(((mask, g) for g, mask in groups.items()), key=lambda t: t[0] & -t[0])
    return OrthogonalDecomposition(tuple(pairs))


def orthogonal_families(masks: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Every nonempty subfamily of pairwise disjoint masks."""

    def extend(start, used, chosen):
        for i in range(start, len(masks)):
            m = masks[i]
            if not m & used:
                fam = chosen + (m,)
                yield fam
                yield from extend(i + 1, used | m, fam)

    yield from extend(0, 0, ())


def has_equal_orthogonal_sums(masks: Sequence[int]) -> bool:
    """Do two different orthogonal families drawn from ``masks`` have the same sum?"""
    sums: set[int] = set()
    for fam in orthogonal_families(masks):
        total = 0
        for m in fam:
            total |= m
        if total in sums:
            return True
        sums.add(total)
    return False


def _extends_to_basis(vectors: Sequence[Sequence[int]], k: int) -> bool:
    """Do these integer vectors form part of a basis of Z^k?

    True iff echelonizing the k x r transpose by unimodular row operations
    leaves pivots +-1 in every column.
    """
    if not vectors:
        return True
    rows = [list(col) for col in zip(*vectors)]
    r = 0
    for c in range(len(vectors)):
        for i in range(r + 1, len(rows)):
            while rows[i][c]:
                f = rows[r][c] // rows[i][c]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[i])]
                rows[r], rows[i] = rows[i], rows[r]
        if r >= len(rows) or abs(rows[r][c]) != 1:
            return False
        r += 1
    return True


def maximal_orthogonal_greedy(b: FiniteBooleanAlgebra, order: Sequence[int]) -> list[int]:
    """Greedy maximal set with no two orthogonal families of equal sum.

    This alone does not guarantee a Z-basis: for three atoms the order
    ``{0,1}, {1,2}, {0,2}, {0}`` keeps all four elements, which are linearly
    dependent.  ``free_basis`` adds the independence test.
    """
    chosen: list[int] = []
    for e in order:
        if e and not has_equal_orthogonal_sums(chosen + [e]):
            chosen.append(e)
    return chosen


def free_basis(b: FiniteBooleanAlgebra, order: Sequence[int] | None = None) -> list[int]:
    """Idempotents forming a free Z-basis of the lattice ring, chosen greedily.

    Nonzero idempotents are scanned in ``order`` (default: increasing
    bitmask).  One is kept if the enlarged set still has no two distinct
    orthogonal families with equal sums and its coordinate vectors are still
    part of a Z-basis.  The result has ``b.k`` elements and a unimodular
    coordinate matrix.
    """
    if order is None:
        order = list(b.nonzero())
    chosen: list[int] = []
    vecs: list[tuple[int, ...]] = []
    for e in order:
        if len(chosen) == b.k:
            break
        if not e or e in chosen:
            continue
        v = LatticeRingElement.idempotent(e, b.k).coords
        if has_equal_orthogonal_sums(chosen + [e]) or not _extends_to_basis(vecs + [v], b.k):
            continue
        chosen.append(e)
        vecs.append(v)
    if len(chosen) != b.k:
        raise ValueError(f"order does not reach a basis: got {len(chosen)} of {b.k} elements")
    return chosen


def coordinate_matrix(masks: Sequence[int], k: int) -> list[list[int]]:
    return [list(LatticeRingElement.idempotent(m, k).coords) for m in masks]


def all_elements(k: int, lo: int, hi: int) -> Iterator[LatticeRingElement]:
    for coords in itertools.product(range(lo, hi + 1), repeat=k):
        yield LatticeRingElement(coords)
