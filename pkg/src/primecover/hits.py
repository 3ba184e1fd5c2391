"""Hit-prime counting and fractional-part equidistribution counts.

A prime p is a hit for x when the circle distance from x to a_p/p is at
most c/p. Real inputs are carried as certified rational approximants
(value plus error radius eta); a prime whose status depends on the
unknown digits of x is reported as ambiguous, never silently rounded.
The one-sided predicate {x*p} < c is counted separately, since it is a
different statement from the two-sided circle distance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, NamedTuple

from .arcs import ONE, RationalLike, to_fraction
from .primes import MERTENS, harmonic_H_float, sieve_range
from .sequences import NumeratorSequence


@dataclass(frozen=True)
class RealApproximant:
    """A real number pinned to [value - eta, value + eta], both rational."""

    value: Fraction
    eta: Fraction
    label: str = ""

    def __post_init__(self) -> None:
        if self.eta < 0:
            raise ValueError(f"eta must be >= 0, got {self.eta}")


def rational_point(value: RationalLike, label: str = "") -> RealApproximant:
    v = to_fraction(value)
    return RealApproximant(v, Fraction(0), label or f"rational {v}")


def _convergents(coefficients: Iterator[int]) -> Iterator[tuple[int, int]]:
    h_prev, h = 1, next(coefficients)
    k_prev, k = 0, 1
    yield h, k
    for a in coefficients:
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
        yield h, k


def _cf_approximant(coefficients: Callable[[], Iterator[int]], label: str,
                    eta: RationalLike) -> RealApproximant:
    """Convergent h/k with certified error 1/(k*k_next) below the target."""
    target = to_fraction(eta)
    if target <= 0:
        raise ValueError(f"eta must be > 0, got {target}")
    gen = _convergents(coefficients())
    h, k = next(gen)
    for h_next, k_next in gen:
        bound = Fraction(1, k * k_next)
        if bound <= target:
            return RealApproximant(Fraction(h, k), bound, label)
        h, k = h_next, k_next
    raise RuntimeError("continued fraction expansion exhausted")  # pragma: no cover


def sqrt2_approximant(eta: RationalLike = Fraction(1, 10**14)) -> RealApproximant:
    def coeffs():
        yield 1
        while True:
            yield 2

    return _cf_approximant(coeffs, "sqrt2", eta)


def golden_approximant(eta: RationalLike = Fraction(1, 10**14)) -> RealApproximant:
    def coeffs():
        while True:
            yield 1

    return _cf_approximant(coeffs, "golden", eta)


NAMED_APPROXIMANTS = {"sqrt2": sqrt2_approximant, "golden": golden_approximant}


def approximant_named(name: str, eta: RationalLike = Fraction(1, 10**14)) -> RealApproximant:
    try:
        builder = NAMED_APPROXIMANTS[name]
    except KeyError:
        raise ValueError(
            f"unknown named point {name!r}; choose from {sorted(NAMED_APPROXIMANTS)}"
        ) from None
    return builder(eta)


def circle_distance(a: Fraction, b: Fraction) -> Fraction:
    d = (a - b) % ONE
    return min(d, ONE - d)


@dataclass(frozen=True)
class HitRow:
    """Per-prime detail: the exact distance (or fractional part) and status."""

    p: int
    distance: Fraction
    hit: bool
    ambiguous: bool


@dataclass(frozen=True)
class HitReport:
    bound: int
    hits: tuple[int, ...]
    ambiguous: tuple[int, ...]
    heuristic: float
    ratio: float
    hit_reciprocal_sum: float


def _report_from_rows(rows: list[HitRow], bound: int, heuristic: float) -> HitReport:
    hits = tuple(r.p for r in rows if r.hit)
    ambiguous = tuple(r.p for r in rows if r.ambiguous)
    return HitReport(
        bound=bound,
        hits=hits,
        ambiguous=ambiguous,
        heuristic=heuristic,
        ratio=len(hits) / heuristic if heuristic > 0 else 0.0,
        hit_reciprocal_sum=math.fsum(1.0 / p for p in hits),
    )


def hit_rows(x: RealApproximant, seq: NumeratorSequence, bound: int) -> list[HitRow]:
    """Classify every prime p <= bound as hit, miss, or ambiguous.

    Hit requires the whole interval [value - eta, value + eta] to lie
    within c/p of a_p/p; miss requires all of it to lie outside.
    """
    if bound < 2:
        raise ValueError(f"bound must be >= 2, got {bound}")
    rows = []
    for p in sieve_range(bound).primes:
        a = seq.numerator_for(p)
        threshold = seq.c / p
        dist = circle_distance(x.value, Fraction(a, p))
        if dist + x.eta <= threshold:
            rows.append(HitRow(p, dist, True, False))
        elif dist - x.eta > threshold:
            rows.append(HitRow(p, dist, False, False))
        else:
            rows.append(HitRow(p, dist, False, True))
    return rows


def hit_primes(x: RealApproximant, seq: NumeratorSequence, bound: int) -> HitReport:
    rows = hit_rows(x, seq, bound)
    heuristic = float(2 * seq.c) * harmonic_H_float(1, bound)
    return _report_from_rows(rows, bound, heuristic)


def fractional_rows(x: RealApproximant, c: RationalLike, bound: int) -> list[HitRow]:
    """Classify primes by the one-sided predicate {x*p} < c.

    The distance column carries the exact fractional part of value*p.
    When the uncertainty band p*eta touches 0, 1, or c, the true status
    depends on the unknown part of x and the prime is ambiguous.
    """
    c = to_fraction(c)
    if bound < 2:
        raise ValueError(f"bound must be >= 2, got {bound}")
    if x.eta * bound >= Fraction(1, 4):
        raise ValueError(
            f"x is too imprecise for this range: eta * bound = {x.eta * bound} >= 1/4"
        )
    rows = []
    for p in sieve_range(bound).primes:
        f = (x.value * p) % ONE
        delta = p * x.eta
        if delta == 0:
            rows.append(HitRow(p, f, f < c, False))
        elif f - delta >= 0 and f + delta < ONE:
            if f + delta < c:
                rows.append(HitRow(p, f, True, False))
            elif f - delta >= c:
                rows.append(HitRow(p, f, False, False))
            else:
                rows.append(HitRow(p, f, False, True))
        else:
            # the band wraps past 0: both sides of the cut are possible
            rows.append(HitRow(p, f, False, True))
    return rows


def fractional_hits(x: RealApproximant, c: RationalLike, bound: int) -> HitReport:
    c = to_fraction(c)
    rows = fractional_rows(x, c, bound)
    heuristic = float(c) * len(rows)
    return _report_from_rows(rows, bound, heuristic)


class LogLogHeuristic(NamedTuple):
    partial_sum: float  # 2c * sum of 1/p over p <= bound
    asymptotic: float  # 2c * (ln ln bound + Mertens constant)


def loglog_heuristic(c: RationalLike, bound: int) -> LogLogHeuristic:
    """Predicted hit count up to `bound` and its log-log asymptotic proxy."""
    if bound < 2:
        raise ValueError(f"bound must be >= 2, got {bound}")
    c = to_fraction(c)
    scale = float(2 * c)
    return LogLogHeuristic(
        partial_sum=scale * harmonic_H_float(1, bound),
        asymptotic=scale * (math.log(math.log(bound)) + MERTENS),
    )
