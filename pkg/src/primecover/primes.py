"""Prime enumeration and prime harmonic sums.

The sieve is segmented so memory stays bounded for bounds up to ~1e9.
Harmonic sums come in two flavors: exact rational (denominators grow
like primorials, practical to roughly Y <= 1e4) and 64-bit float for
larger ranges; callers record which mode they used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arcs import RationalLike, to_fraction

_SEGMENT = 1 << 18

# Mertens: sum_{p<=x} 1/p = ln ln x + M + o(1)
MERTENS = 0.2615


@dataclass(frozen=True)
class PrimeTable:
    """All primes up to `bound`, ascending."""

    bound: int
    primes: tuple[int, ...]

    def count(self) -> int:
        return len(self.primes)

    def in_range(self, x: RationalLike, y: RationalLike) -> list[int]:
        """Primes p with x < p <= y."""
        x, y = to_fraction(x), to_fraction(y)
        return [p for p in self.primes if x < p <= y]


def _simple_sieve(bound: int) -> list[int]:
    flags = bytearray([1]) * (bound + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(bound) + 1):
        if flags[p]:
            flags[p * p :: p] = b"\x00" * len(range(p * p, bound + 1, p))
    return [i for i, f in enumerate(flags) if f]


def sieve_range(bound: int) -> PrimeTable:
    """Sieve of Eratosthenes over [2, bound], segmented past the root."""
    if bound < 2:
        raise ValueError(f"sieve bound must be >= 2, got {bound}")
    base_bound = max(math.isqrt(bound), 2)
    base = _simple_sieve(base_bound)
    primes = [p for p in base if p <= bound]
    low = base_bound + 1
    while low <= bound:
        high = min(low + _SEGMENT - 1, bound)
        flags = bytearray([1]) * (high - low + 1)
        for p in base:
            start = max(p * p, ((low + p - 1) // p) * p)
            if start > high:
                continue
            flags[start - low :: p] = b"\x00" * len(range(start, high + 1, p))
        primes.extend(i + low for i, f in enumerate(flags) if f)
        low = high + 1
    return PrimeTable(bound, tuple(primes))


def is_prime(n: int) -> bool:
    """Trial division; fine for the desk-scale n used here."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def next_prime(n: int) -> int:
    """Least prime strictly greater than n."""
    candidate = n + 1
    while not is_prime(candidate):
        candidate += 1
    return candidate


def primes_between(x: RationalLike, y: RationalLike) -> list[int]:
    """Primes p with x < p <= y, sieving only as far as needed."""
    x, y = to_fraction(x), to_fraction(y)
    top = math.floor(y)
    if top < 2:
        return []
    return sieve_range(top).in_range(x, y)


def harmonic_H(x: RationalLike, y: RationalLike) -> Fraction:
    """Exact sum of 1/p over primes x < p <= y.

    An empty range gives 0. Denominators grow like the primorial of y,
    so keep y at desk scale (~1e4); use harmonic_H_float beyond that.
    """
    x, y = to_fraction(x), to_fraction(y)
    if not 1 <= x < y:
        raise ValueError(f"need 1 <= X < Y, got X={x}, Y={y}")
    total = Fraction(0)
    for p in primes_between(x, y):
        total += Fraction(1, p)
    return total


def harmonic_H_float(x: RationalLike, y: RationalLike) -> float:
    """Floating-point sum of 1/p over primes x < p <= y."""
    x, y = to_fraction(x), to_fraction(y)
    if not 1 <= x < y:
        raise ValueError(f"need 1 <= X < Y, got X={x}, Y={y}")
    return math.fsum(1.0 / p for p in primes_between(x, y))
