"""Twisted averages along the skew shift (x, y) -> (x + y, y).

For a prime p with numerator a, the average of e(-na/p) e(x + ny) over
n < p is a Dirichlet-kernel expression in the reduced offset
d = y - a/p. Two evaluators are provided: the direct compensated sum
(ground truth) and the closed kernel form (fast, with a fallback to the
direct sum near the removable singularity at d = 0). Their agreement is
the precision audit for everything downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .arcs import RationalLike, to_fraction
from .primes import next_prime
from .sequences import NumeratorSequence

# below this |sin(pi d)| the kernel ratio is too ill-conditioned; sum directly
_SIN_FALLBACK = 1e-8

_PSI_FUNCTIONS = {
    "log": math.log,
    "loglog": lambda p: math.log(math.log(p)),
    "sqrt_log": lambda p: math.sqrt(math.log(p)),
}


def _e(t: float) -> complex:
    w = 2.0 * math.pi * t
    return complex(math.cos(w), math.sin(w))


def reduce_offset(d: float) -> float:
    """Reduce to (-1/2, 1/2]; exact on floats (fmod and Sterbenz subtraction)."""
    r = d % 1.0
    if r > 0.5:
        r -= 1.0
    return r


def _check_numerator(p: int, a: int) -> None:
    if not 0 <= a < p:
        raise ValueError(f"numerator {a} out of range for prime {p}")


def s_direct(p: int, a: int, x: float, y: float) -> complex:
    """Compensated direct sum of the p twisted orbit terms, divided by p.

    The terms collapse to e(x + n*d) with d = y - a/p; d is reduced mod 1
    first (an exact operation that changes no term, since n is an integer)
    to keep the sine/cosine arguments small.
    """
    _check_numerator(p, a)
    d = reduce_offset(y - a / p)
    real = math.fsum(math.cos(2.0 * math.pi * (x + n * d)) for n in range(p))
    imag = math.fsum(math.sin(2.0 * math.pi * (x + n * d)) for n in range(p))
    return complex(real / p, imag / p)


def s_closed(p: int, a: int, x: float, y: float) -> complex:
    """Kernel form: e(x) sin(pi p d) / (p sin(pi d)) e((p-1) d / 2).

    Falls back to the direct sum when |sin(pi d)| < 1e-8, where d is so
    close to the removable singularity that the ratio loses accuracy.
    """
    value, _ = _s_eval(p, a, x, y)
    return value


def _s_eval(p: int, a: int, x: float, y: float) -> tuple[complex, str]:
    _check_numerator(p, a)
    d = reduce_offset(y - a / p)
    sin_d = math.sin(math.pi * d)
    if abs(sin_d) < _SIN_FALLBACK:
        return s_direct(p, a, x, y), "direct"
    ratio = math.sin(math.pi * p * d) / (p * sin_d)
    return ratio * _e(x + 0.5 * (p - 1) * d), "closed"


@dataclass(frozen=True)
class ErgodicSample:
    """One prime's average with its hit classification."""

    p: int
    a: int
    x: float
    y: float
    s: complex
    method: str
    distance: float
    is_hit: bool


def convergence_series(
    seq: NumeratorSequence,
    x: float,
    y: float,
    primes: Sequence[int],
) -> list[ErgodicSample]:
    """Evaluate the average at (x, y) for each listed prime of the sequence.

    A sample is a hit when p times the circle distance from y to a_p/p is
    at most the sequence's c; hits keep |s| bounded away from 0 while
    distant primes have |s| <= 1/(2 p d).
    """
    c = float(seq.c)
    samples = []
    for p in primes:
        a = seq.numerator_for(p)
        value, method = _s_eval(p, a, x, y)
        distance = abs(reduce_offset(y - a / p))
        samples.append(
            ErgodicSample(
                p=p,
                a=a,
                x=x,
                y=y,
                s=value,
                method=method,
                distance=distance,
                is_hit=p * distance <= c,
            )
        )
    return samples


@dataclass(frozen=True)
class SparsePrimeSet:
    """Thin prime set whose log-weight sum stays finite."""

    primes: tuple[int, ...]
    weight_sum: float  # sum of log p / p over the members
    generator: str
    psi_name: Optional[str] = None
    psi_weight_sum: Optional[float] = None


def sparse_prime_set(
    bound: int, mode: str = "geometric", psi: Optional[str] = None
) -> SparsePrimeSet:
    """Build a sparse prime set up to `bound`.

    geometric: least prime above 4^n for n >= 1; log-weights decay
    geometrically, so the weight sum converges.

    psi: same idea on the denser skeleton 2^n, certified against a named
    slower-growing weight psi in {log, loglog, sqrt_log}; the partial sum
    of psi(p)/p over the members is recorded alongside the log-weight sum.
    """
    if bound < 2:
        raise ValueError(f"bound must be >= 2, got {bound}")
    if mode == "geometric":
        if psi is not None:
            raise ValueError("psi is only meaningful with mode='psi'")
        skeleton_base = 4
        generator = "least prime above 4^n"
        psi_fn = None
    elif mode == "psi":
        if psi not in _PSI_FUNCTIONS:
            raise ValueError(
                f"unknown psi name {psi!r}; choose from {sorted(_PSI_FUNCTIONS)}"
            )
        skeleton_base = 2
        generator = f"least prime above 2^n, psi={psi}"
        psi_fn = _PSI_FUNCTIONS[psi]
    else:
        raise ValueError(f"unknown mode {mode!r}; choose 'geometric' or 'psi'")

    members = []
    n = 1
    while True:
        p = next_prime(skeleton_base**n)
        if p > bound:
            break
        members.append(p)
        n += 1

    weight_sum = math.fsum(math.log(p) / p for p in members)
    psi_weight = math.fsum(psi_fn(p) / p for p in members) if psi_fn else None
    return SparsePrimeSet(
        primes=tuple(members),
        weight_sum=weight_sum,
        generator=generator,
        psi_name=psi if psi_fn else None,
        psi_weight_sum=psi_weight,
    )
