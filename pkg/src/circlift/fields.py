"""Exact arithmetic in F_p for odd primes.

Provides the canonical representative absolute value, multiplicative
inverses, and the coefficient-wise lift/reduce maps between F_p and Z that
the lifting heuristics share. Everything here is pure and immutable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ZeroInverse


def is_prime(n: int) -> bool:
    """Trial-division primality check (desk-scale inputs)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class OddPrime:
    """An odd prime modulus. p = 2 is rejected: every lifting statement
    assumes an odd prime."""

    p: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.p < 3:
            raise ValueError("modulus must be an odd prime (p >= 3)")

    def __int__(self) -> int:
        return self.p


@dataclass(frozen=True)
class FpElement:
    """An element of F_p stored by its canonical representative in [0, p)."""

    value: int
    prime: OddPrime

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.prime.p:
            raise ValueError(f"value {self.value} outside [0, {self.prime.p})")

    @property
    def p(self) -> int:
        return self.prime.p

    def __mul__(self, other: "FpElement") -> "FpElement":
        if other.prime != self.prime:
            raise ValueError("mixed moduli")
        return FpElement(self.value * other.value % self.p, self.prime)

    def __add__(self, other: "FpElement") -> "FpElement":
        if other.prime != self.prime:
            raise ValueError("mixed moduli")
        return FpElement((self.value + other.value) % self.p, self.prime)

    def __neg__(self) -> "FpElement":
        return FpElement(-self.value % self.p, self.prime)


# Integer-level twins of the FpElement operations. The sparse (co)chain code
# stores plain ints, so the hot paths use these.

def abs_mod(value: int, p: int) -> int:
    v = value % p
    return min(v, p - v)


def lift_mod(value: int, p: int) -> int:
    """Centered representative: the unique integer in [-(p-1)/2, (p-1)/2]
    congruent to ``value`` (ties at (p-1)/2 resolve positive)."""
    v = value % p
    return v if v <= (p - 1) // 2 else v - p


def inv_mod(value: int, p: int) -> int:
    """Multiplicative inverse in [1, p) by extended Euclid."""
    v = value % p
    if v == 0:
        raise ZeroInverse("0 has no multiplicative inverse", operation="finite_field.inverse")
    r0, r1 = p, v
    s0, s1 = 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    return s0 % p


def abs_p(x: FpElement) -> int:
    """min{i(x), p - i(x)}: distance of x from 0 among canonical reps."""
    return abs_mod(x.value, x.p)


def inverse(x: FpElement) -> FpElement:
    if x.value == 0:
        raise ZeroInverse("0 has no multiplicative inverse", operation="finite_field.inverse")
    return FpElement(inv_mod(x.value, x.p), x.prime)


def lift_coeff(x: FpElement) -> int:
    """Lift to the centered integer representative; |lift_coeff(x)| = abs_p(x)."""
    return lift_mod(x.value, x.p)


def reduce_coeff(z: int, p: OddPrime) -> FpElement:
    """Quotient map Z -> F_p, normalized to [0, p)."""
    return FpElement(z % p.p, p)


def range_bound(p: OddPrime, k: int) -> int:
    """Half-width floor((p-1)/k) of the coefficient range that certifies
    lifting of a vector subject to vanishing sums of k terms."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return (p.p - 1) // k


def primes_in_range(lo: int, hi: int) -> list[int]:
    """All primes p with lo <= p <= hi, ascending."""
    return [n for n in range(max(lo, 2), hi + 1) if is_prime(n)]
