"""Construction and persistence of numerator sequences.

A numerator sequence assigns one residue a_p in [0, p) to each prime p up
to a bound. Constructions: independent uniform residues (seeded), the
greedy rule that maximizes covered measure one prime at a time, a
constant all-zero baseline, and a block builder that certifies each
prime block's uncovered measure against a target.
"""

from __future__ import annotations

import bisect
import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Iterable, Optional, Union

from .arcs import (
    ArcUnion,
    RationalLike,
    arc_of,
    normalize_union,
    rat_str,
    to_fraction,
)
from .primes import primes_between, sieve_range

METHODS = ("random", "greedy", "blocks", "constant", "custom")

# consecutive zero-gain greedy steps that trigger the block random restart
_STALL_LIMIT = 30


class BudgetExhaustedError(RuntimeError):
    """Raised when block construction hits its prime budget."""


@dataclass(frozen=True)
class NumeratorSequence:
    """One residue per prime: entries is an ascending tuple of (p, a_p)."""

    c: Fraction
    entries: tuple[tuple[int, int], ...]
    method: str = "custom"
    seed: Optional[int] = None

    def __post_init__(self) -> None:
        if not (0 < self.c <= Fraction(1, 2)):
            raise ValueError(f"c must lie in (0, 1/2], got {self.c}")
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        prev = 1
        for p, a in self.entries:
            if p <= prev:
                raise ValueError(f"primes must be strictly ascending, saw {p} after {prev}")
            if not 0 <= a < p:
                raise ValueError(f"numerator {a} out of range for prime {p}")
            prev = p

    @cached_property
    def numerators(self) -> dict[int, int]:
        return dict(self.entries)

    def numerator_for(self, p: int) -> int:
        try:
            return self.numerators[p]
        except KeyError:
            raise ValueError(f"sequence has no entry for prime {p}") from None

    def arcs_for(self, primes: Iterable[int]) -> list:
        return [arc_of(p, self.numerator_for(p), self.c) for p in primes]

    def max_prime(self) -> int:
        return self.entries[-1][0] if self.entries else 1


@dataclass(frozen=True)
class Block:
    """One certified block: primes in (start, end] leave at most epsilon uncovered."""

    start: int
    end: int
    epsilon: Fraction
    achieved_uncovered: Fraction

    def __post_init__(self) -> None:
        if self.achieved_uncovered > self.epsilon:
            raise ValueError(
                f"block ({self.start}, {self.end}] uncovered {self.achieved_uncovered} "
                f"exceeds target {self.epsilon}"
            )


@dataclass(frozen=True)
class BlockSchedule:
    blocks: tuple[Block, ...]

    def __post_init__(self) -> None:
        bounds = [self.blocks[0].start] if self.blocks else []
        for b in self.blocks:
            bounds.append(b.end)
        if any(x >= y for x, y in zip(bounds, bounds[1:])):
            raise ValueError("block boundaries must be strictly increasing")

    def final_bound(self) -> int:
        return self.blocks[-1].end if self.blocks else 1


def random_sequence(bound: int, c: RationalLike, seed: int) -> NumeratorSequence:
    """Independent uniform a_p in {0, ..., p-1} for each prime p <= bound.

    randrange is rejection-sampled internally, so there is no modulo bias,
    and the same seed always reproduces the same sequence.
    """
    if bound < 2:
        raise ValueError(f"bound must be >= 2, got {bound}")
    c = to_fraction(c)
    rng = random.Random(seed)
    entries = tuple((p, rng.randrange(p)) for p in sieve_range(bound).primes)
    return NumeratorSequence(c=c, entries=entries, method="random", seed=seed)


def constant_sequence(bound: int, c: RationalLike) -> NumeratorSequence:
    """All-zero baseline: every arc clusters around 0 (a known-bad control)."""
    if bound < 2:
        raise ValueError(f"bound must be >= 2, got {bound}")
    c = to_fraction(c)
    entries = tuple((p, 0) for p in sieve_range(bound).primes)
    return NumeratorSequence(c=c, entries=entries, method="constant")


def _insert_segment(segs: list[list[Fraction]], s: Fraction, e: Fraction) -> Fraction:
    """Add closed [s, e] to a sorted disjoint segment list; returns measure gained."""
    lo = bisect.bisect_left(segs, [s, s])
    i = lo - 1 if lo > 0 and segs[lo - 1][1] >= s else lo
    new_s, new_e = s, e
    removed = Fraction(0)
    j = i
    while j < len(segs) and segs[j][0] <= e:
        if segs[j][0] < new_s:
            new_s = segs[j][0]
        if segs[j][1] > new_e:
            new_e = segs[j][1]
        removed += segs[j][1] - segs[j][0]
        j += 1
    segs[i:j] = [[new_s, new_e]]
    return (new_e - new_s) - removed


class _SegmentCover:
    """Covered set kept as sorted disjoint closed segments inside [0, 1].

    Wrapping arcs are stored as their two pieces; measures are unaffected
    and the candidate scan handles the wrap by shifting candidates.
    """

    def __init__(self) -> None:
        self.segments: list[list[Fraction]] = []
        self.measure = Fraction(0)

    def add_arc(self, arc) -> Fraction:
        gain = Fraction(0)
        for s, e in arc.segments():
            gain += _insert_segment(self.segments, s, e)
        self.measure += gain
        return gain


def _greedy_pick(cover: _SegmentCover, p: int, c: Fraction) -> tuple[int, Fraction]:
    """Best (a, gain) for prime p against a segment cover; ties to smallest a.

    Candidate windows are computed in units of 1/p, where the arc of a
    spans [a - c, a + c] and a covered segment [s, e] spans [p*s, p*e];
    this keeps the scan in small-denominator arithmetic.
    """
    radius = c / p
    full_gain = 2 * radius
    if not cover.segments:
        return 0, full_gain
    if cover.measure == 1:
        return 0, Fraction(0)

    scaled = [(p * s, p * e) for s, e in cover.segments]

    blocked = bytearray(p)
    for ps, pe in scaled:
        lo_base = math.floor(ps - c) + 1
        hi_base = math.ceil(pe + c) - 1
        for k in (-1, 0, 1):
            for a in range(max(lo_base - k * p, 0), min(hi_base - k * p, p - 1) + 1):
                blocked[a] = 1
    for a in range(p):
        if not blocked[a]:
            return a, full_gain

    overlaps = [Fraction(0)] * p  # in units of 1/p
    for ps, pe in scaled:
        lo_base = math.floor(ps - c) + 1
        hi_base = math.ceil(pe + c) - 1
        for k in (-1, 0, 1):
            kp = k * p
            for a in range(max(lo_base - kp, 0), min(hi_base - kp, p - 1) + 1):
                overlap = min(pe, a + kp + c) - max(ps, a + kp - c)
                if overlap > 0:
                    overlaps[a] += overlap
    best_a = min(range(p), key=lambda a: (overlaps[a], a))
    return best_a, full_gain - overlaps[best_a] / p


def greedy_step(covered: ArcUnion, p: int, c: RationalLike) -> tuple[int, Fraction]:
    """Best numerator for prime p against `covered`: (a, exact measure gain).

    Ties break to the smallest a. When some candidate arc is disjoint from
    the covered set the scan short-circuits: its gain 2c/p is the maximum.
    """
    c = to_fraction(c)
    cover = _SegmentCover()
    for arc in covered.arcs:
        cover.add_arc(arc)
    return _greedy_pick(cover, p, c)


def greedy_sequence(bound: int, c: RationalLike) -> NumeratorSequence:
    """For each prime in increasing order pick a_p maximizing covered measure."""
    if bound < 2:
        raise ValueError(f"bound must be >= 2, got {bound}")
    c = to_fraction(c)
    if not (0 < c <= Fraction(1, 2)):
        raise ValueError(f"c must lie in (0, 1/2], got {c}")
    cover = _SegmentCover()
    entries = []
    for p in sieve_range(bound).primes:
        a, _ = _greedy_pick(cover, p, c)
        entries.append((p, a))
        cover.add_arc(arc_of(p, a, c))
    return NumeratorSequence(c=c, entries=tuple(entries), method="greedy")


def uncovered_measure(
    seq: NumeratorSequence, x: RationalLike, y: RationalLike
) -> Fraction:
    """Exact measure of the set missed by every arc of primes in (x, y]."""
    x, y = to_fraction(x), to_fraction(y)
    if not x < y:
        raise ValueError(f"need X < Y, got X={x}, Y={y}")
    primes = primes_between(x, y)
    return union_uncovered(seq.arcs_for(primes))


def union_uncovered(arcs) -> Fraction:
    return 1 - normalize_union(arcs).measure()


def block_construction(
    epsilons: list[RationalLike],
    c: RationalLike,
    max_bound: int,
    restart_seed: int = 1729,
) -> tuple[NumeratorSequence, BlockSchedule]:
    """Greedy-within-block construction with exact coverage certificates.

    Block n consumes primes after the previous block's end, each placed
    greedily against a fresh covered set, until the block's uncovered
    measure drops to epsilon_n; the prime reaching the target becomes the
    block's end. If a block stalls (a long run of zero-gain steps, which
    cannot happen while gaps remain at c = 1/2 but can in degenerate
    configurations for smaller c), its numerators are redrawn once from a
    seeded stream and the better of the two coverings is kept.

    Raises BudgetExhaustedError when max_bound is reached before the
    current block meets its target.
    """
    c = to_fraction(c)
    eps_list = [to_fraction(e) for e in epsilons]
    if any(not (0 < e < 1) for e in eps_list):
        raise ValueError("every epsilon must lie in (0, 1)")
    if max_bound < 2:
        raise ValueError(f"max_bound must be >= 2, got {max_bound}")

    primes = sieve_range(max_bound).primes
    idx = 0
    x_start = 1
    all_entries: list[tuple[int, int]] = []
    blocks: list[Block] = []

    for n, eps in enumerate(eps_list, start=1):
        cover = _SegmentCover()
        block_entries: list[tuple[int, int]] = []
        stall = 0
        restarted = False
        while True:
            uncovered = 1 - cover.measure
            if uncovered <= eps and block_entries:
                end = block_entries[-1][0]
                blocks.append(Block(x_start, end, eps, uncovered))
                all_entries.extend(block_entries)
                x_start = end
                break
            if idx >= len(primes):
                raise BudgetExhaustedError(
                    f"budget exhausted at block {n}: primes up to {max_bound} "
                    f"leave {uncovered} uncovered, target {eps}"
                )
            p = primes[idx]
            idx += 1
            a, gain = _greedy_pick(cover, p, c)
            block_entries.append((p, a))
            cover.add_arc(arc_of(p, a, c))
            stall = stall + 1 if gain == 0 else 0
            if stall >= _STALL_LIMIT and not restarted:
                restarted = True
                stall = 0
                block_entries, cover = _redraw_block(
                    block_entries, cover, c, restart_seed, n
                )

    seq = NumeratorSequence(
        c=c, entries=tuple(all_entries), method="blocks", seed=restart_seed
    )
    return seq, BlockSchedule(tuple(blocks))


def _redraw_block(block_entries, cover: _SegmentCover, c, seed, block_index):
    """Seeded random restart: keep the redraw only if it covers more."""
    rng = random.Random(f"{seed}:{block_index}")
    redraw = [(p, rng.randrange(p)) for p, _ in block_entries]
    redraw_cover = _SegmentCover()
    for p, a in redraw:
        redraw_cover.add_arc(arc_of(p, a, c))
    if redraw_cover.measure > cover.measure:
        return redraw, redraw_cover
    return block_entries, cover


# ---------------------------------------------------------------------------
# persistence

def sequence_to_dict(seq: NumeratorSequence, schedule: Optional[BlockSchedule] = None) -> dict:
    doc = {
        "c": rat_str(seq.c),
        "method": seq.method,
        "seed": seq.seed,
        "entries": [[p, a] for p, a in seq.entries],
    }
    if schedule is not None:
        doc["blocks"] = [
            [b.start, b.end, rat_str(b.epsilon), rat_str(b.achieved_uncovered)]
            for b in schedule.blocks
        ]
    return doc


def sequence_from_dict(doc: dict) -> NumeratorSequence:
    return NumeratorSequence(
        c=to_fraction(doc["c"]),
        entries=tuple((int(p), int(a)) for p, a in doc["entries"]),
        method=doc.get("method", "custom"),
        seed=doc.get("seed"),
    )


def schedule_from_dict(doc: dict) -> Optional[BlockSchedule]:
    if "blocks" not in doc:
        return None
    return BlockSchedule(
        tuple(
            Block(int(s), int(e), to_fraction(eps), to_fraction(ach))
            for s, e, eps, ach in doc["blocks"]
        )
    )


def save_sequence(
    seq: NumeratorSequence,
    path: Union[str, Path],
    schedule: Optional[BlockSchedule] = None,
) -> None:
    doc = sequence_to_dict(seq, schedule)
    Path(path).write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n")


def load_sequence(path: Union[str, Path]) -> NumeratorSequence:
    return sequence_from_dict(json.loads(Path(path).read_text()))


def load_schedule(path: Union[str, Path]) -> Optional[BlockSchedule]:
    return schedule_from_dict(json.loads(Path(path).read_text()))
