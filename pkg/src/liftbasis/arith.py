"""Integer primitives: prime-power moduli, symmetric residues, unit
inverses and a multi-term extended gcd.

All arithmetic is on Python ints, so everything is exact and unbounded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, isqrt
from typing import Sequence

from .errors import InvalidModulus, NotAUnit


def is_prime(n: int) -> bool:
    """Trial division; fine for the primes used at desk scale."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


@dataclass(frozen=True)
class Modulus:
    """The prime power ``q = p**nu`` that all residue arithmetic is done modulo.

    >>> Modulus(2, 3).q
    8

    Primality of ``p`` is checked by trial division unless ``trusted=True``.
    """

    p: int
    nu: int
    q: int = field(init=False)
    trusted: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.p, int) or not isinstance(self.nu, int):
            raise InvalidModulus("p and nu must be integers")
        if self.nu < 1:
            raise InvalidModulus(f"exponent must be >= 1, got {self.nu}")
        if self.p < 2:
            raise InvalidModulus(f"p must be a prime >= 2, got {self.p}")
        if not self.trusted and not is_prime(self.p):
            raise InvalidModulus(
                f"{self.p} is not prime; only prime power moduli are supported "
                f"(Z/nZ splits when n has two distinct prime factors)"
            )
        object.__setattr__(self, "q", self.p**self.nu)

    @classmethod
    def from_prime_power(cls, q: int) -> "Modulus":
        """Factor ``q`` as ``p**nu``; composite non-prime-powers are rejected."""
        if q < 2:
            raise InvalidModulus(f"modulus must be >= 2, got {q}")
        p = next((d for d in range(2, isqrt(q) + 1) if q % d == 0), q)
        nu, rest = 0, q
        while rest % p == 0:
            rest //= p
            nu += 1
        if rest != 1:
            raise InvalidModulus(f"{q} is not a prime power")
        return cls(p, nu)

    def is_unit(self, x: int) -> bool:
        return x % self.p != 0

    def __str__(self):
        return f"{self.p}^{self.nu}"


def symmetric_residue(x: int, m: int) -> int:
    """Representative of ``x`` mod ``m`` in the range ``(-m/2, m/2]``.

    >>> symmetric_residue(8, 5)
    -2
    >>> symmetric_residue(2, 4)
    2
    """
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    r = x % m
    return r - m if 2 * r > m else r


mods = symmetric_residue


def unit_inverse(u: int, mod: Modulus) -> int:
    """Symmetric residue of ``u**-1`` modulo ``mod.q``."""
    if u % mod.p == 0:
        raise NotAUnit(f"{u} is divisible by {mod.p}, not a unit modulo {mod}")
    return symmetric_residue(pow(u, -1, mod.q), mod.q)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        quo = old_r // r
        old_r, r = r, old_r - quo * r
        old_s, s = s, old_s - quo * s
        old_t, t = t, old_t - quo * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


@dataclass(frozen=True)
class GcdCombination:
    gcd: int
    coefficients: tuple[int, ...]

    def evaluate(self, values: Sequence[int]) -> int:
        return sum(c * v for c, v in zip(self.coefficients, values))


def mgcdex(values: Sequence[int]) -> GcdCombination:
    """Gcd of a vector together with coefficients expressing it.

    Left fold of two-term extended gcds: the running gcd ``g`` is combined
    with the next entry as ``g' = a*g + b*v[i]``; the new coefficient is ``b``
    and every earlier coefficient is rescaled by ``a``.

    >>> mgcdex([0, 0, 9])
    GcdCombination(gcd=9, coefficients=(0, 0, 1))
    """
    if len(values) == 0:
        raise ValueError("mgcdex needs at least one value")
    coeffs = [1] * len(values)
    g = 0
    for i, v in enumerate(values):
        g, a, b = xgcd(g, v)
        coeffs[i] = b
        for j in range(i):
            coeffs[j] *= a
    return GcdCombination(g, tuple(coeffs))


def gcd_all(values: Sequence[int]) -> int:
    return gcd(*values) if values else 0
