"""Command-line surface: reproducible experiments with JSON/CSV reports.

Every run is determined by its parsed configuration (seeds included), so
identical invocations produce byte-identical output. Rationals cross the
boundary as "num/den" strings; floats appear only in explicitly
floating-point fields such as Monte Carlo means and |s_p|.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .arcs import to_fraction, rat_str
from .ergodic import convergence_series, sparse_prime_set
from .hits import (
    HitReport,
    HitRow,
    approximant_named,
    fractional_hits,
    fractional_rows,
    hit_primes,
    hit_rows,
    rational_point,
)
from .primes import sieve_range
from .sequences import (
    block_construction,
    constant_sequence,
    greedy_sequence,
    load_sequence,
    random_sequence,
    save_sequence,
    sequence_to_dict,
    uncovered_measure,
)
from .sievelab import (
    alpha_and_markov,
    level_sets,
    omega_expectation_exact,
    omega_expectation_mc,
)

# fixed default so undocumented runs stay reproducible
DEFAULT_SEED = 1729
DEFAULT_ETA = Fraction(1, 10**14)
THREADS_ENV = "PRIMECOVER_THREADS"


@dataclass(frozen=True)
class RunConfig:
    command: str
    bound: Optional[int] = None
    c: Optional[Fraction] = None
    seq_path: Optional[str] = None
    x: Optional[str] = None
    y: Optional[str] = None
    seed: int = DEFAULT_SEED
    trials: Optional[int] = None
    exact: bool = False
    method: Optional[str] = None
    epsilons: Optional[tuple[Fraction, ...]] = None
    out_path: Optional[str] = None
    out_format: str = "json"
    list_primes: bool = False
    x_named: Optional[str] = None
    eta: Fraction = DEFAULT_ETA
    primes_up_to: Optional[int] = None
    sparse: Optional[str] = None
    psi: Optional[str] = None
    threads: int = 1


class CliError(Exception):
    """Invalid configuration; message is printed as `error: ...`."""


def _parse_c(text: str) -> Fraction:
    try:
        c = to_fraction(text)
    except ValueError:
        raise CliError("c must be in (0,1/2]") from None
    if not (0 < c <= Fraction(1, 2)):
        raise CliError("c must be in (0,1/2]")
    return c


def _json_text(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _load_seq(config: RunConfig):
    if config.seq_path is None:
        raise CliError("a sequence file is required (--seq)")
    if not Path(config.seq_path).is_file():
        raise CliError("sequence file not found")
    return load_sequence(config.seq_path)


def _point(config: RunConfig):
    if (config.x is None) == (config.x_named is None):
        raise CliError("give exactly one of --x or --x-named")
    if config.x_named is not None:
        return approximant_named(config.x_named, config.eta)
    return rational_point(config.x)


def cmd_primes(config: RunConfig) -> str:
    if config.bound is None or config.bound < 2:
        raise CliError("bound must be >= 2")
    table = sieve_range(config.bound)
    doc = {"bound": table.bound, "count": table.count()}
    if config.list_primes:
        doc["primes"] = list(table.primes)
    return _json_text(doc)


def cmd_seq_build(config: RunConfig) -> str:
    if config.bound is None or config.bound < 2:
        raise CliError("bound must be >= 2")
    if config.c is None:
        raise CliError("c must be in (0,1/2]")
    if config.out_path is None:
        raise CliError("an output file is required (--out)")
    schedule = None
    if config.method == "greedy":
        seq = greedy_sequence(config.bound, config.c)
    elif config.method == "random":
        seq = random_sequence(config.bound, config.c, config.seed)
    elif config.method == "constant":
        seq = constant_sequence(config.bound, config.c)
    elif config.method == "blocks":
        if not config.epsilons:
            raise CliError("blocks method needs --epsilons")
        seq, schedule = block_construction(
            list(config.epsilons), config.c, config.bound, restart_seed=config.seed
        )
    else:
        raise CliError(f"unknown method {config.method!r}")
    save_sequence(seq, config.out_path, schedule)
    summary = {
        "out": config.out_path,
        "method": seq.method,
        "c": rat_str(seq.c),
        "seed": seq.seed,
        "entries": len(seq.entries),
    }
    if schedule is not None:
        summary["blocks"] = sequence_to_dict(seq, schedule)["blocks"]
    return _json_text(summary)


def cmd_coverage(config: RunConfig) -> str:
    seq = _load_seq(config)
    if config.x is None or config.y is None:
        raise CliError("coverage needs --x and --y")
    value = uncovered_measure(seq, to_fraction(config.x), to_fraction(config.y))
    return rat_str(value) + "\n"


def cmd_sievelab(config: RunConfig) -> str:
    if config.x is None or config.y is None:
        raise CliError("sievelab needs --x and --y")
    x, y = to_fraction(config.x), to_fraction(config.y)
    if config.seq_path is not None:
        seq = _load_seq(config)
        doc = alpha_and_markov(level_sets(seq, x, y)).to_dict()
        doc["mode"] = "exact"
        c = seq.c
    else:
        if config.c is None:
            raise CliError("give --seq or --c")
        c = config.c
        doc = {"x": rat_str(x), "y": rat_str(y), "c": rat_str(c), "mode": "exact"}
        if not config.exact and config.trials is None:
            raise CliError("without --seq, give --exact and/or --mc")
    if config.exact:
        doc["omega_expectation"] = rat_str(omega_expectation_exact(x, y, c))
    if config.trials is not None:
        mean, stderr = omega_expectation_mc(
            x, y, c, config.trials, config.seed, threads=config.threads
        )
        doc["mc"] = {
            "mean": mean,
            "stderr": stderr,
            "trials": config.trials,
            "seed": config.seed,
        }
    return _json_text(doc)


def _hit_csv(rows: list[HitRow]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["p", "distance_num", "distance_den", "hit", "ambiguous"])
    for row in rows:
        writer.writerow(
            [
                row.p,
                row.distance.numerator,
                row.distance.denominator,
                int(row.hit),
                int(row.ambiguous),
            ]
        )
    return buffer.getvalue()


def _hit_json(report: HitReport, label: str, c: Fraction) -> str:
    return _json_text(
        {
            "bound": report.bound,
            "c": rat_str(c),
            "x": label,
            "hits": list(report.hits),
            "ambiguous": list(report.ambiguous),
            "heuristic": report.heuristic,
            "ratio": report.ratio,
            "hit_reciprocal_sum": report.hit_reciprocal_sum,
        }
    )


def cmd_hits(config: RunConfig) -> str:
    seq = _load_seq(config)
    point = _point(config)
    if config.bound is None or config.bound < 2:
        raise CliError("bound must be >= 2")
    if config.out_format == "csv":
        return _hit_csv(hit_rows(point, seq, config.bound))
    report = hit_primes(point, seq, config.bound)
    return _hit_json(report, point.label, seq.c)


def cmd_fracparts(config: RunConfig) -> str:
    point = _point(config)
    if config.bound is None or config.bound < 2:
        raise CliError("bound must be >= 2")
    if config.c is None:
        raise CliError("c must be in (0,1/2]")
    if config.out_format == "csv":
        return _hit_csv(fractional_rows(point, config.c, config.bound))
    report = fractional_hits(point, config.c, config.bound)
    return _hit_json(report, point.label, config.c)


def cmd_ergodic(config: RunConfig) -> str:
    seq = _load_seq(config)
    if config.primes_up_to is None:
        raise CliError("ergodic needs --primes-up-to")
    if config.x is None or config.y is None:
        raise CliError("ergodic needs --x and --y")
    x, y = float(config.x), float(config.y)
    if config.sparse is not None:
        primes = list(sparse_prime_set(config.primes_up_to, config.sparse, config.psi).primes)
    else:
        primes = list(sieve_range(config.primes_up_to).primes)
    samples = convergence_series(seq, x, y, primes)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["p", "a_p", "d", "abs_s", "is_hit", "method"])
    for s in samples:
        writer.writerow([s.p, s.a, repr(s.distance), repr(abs(s.s)), int(s.is_hit), s.method])
    return buffer.getvalue()


_DISPATCH = {
    "primes": cmd_primes,
    "seq": cmd_seq_build,
    "coverage": cmd_coverage,
    "sievelab": cmd_sievelab,
    "hits": cmd_hits,
    "fracparts": cmd_fracparts,
    "ergodic": cmd_ergodic,
}


def run(config: RunConfig) -> int:
    """Dispatch a validated config; returns the process exit status."""
    try:
        text = _DISPATCH[config.command](config)
    except (CliError, ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if config.out_path is not None and config.command != "seq":
        Path(config.out_path).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="primecover",
        description="Experiments in rational approximation with one numerator per prime.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("primes", help="count (and list) primes up to a bound")
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--list", action="store_true", dest="list_primes")

    s = sub.add_parser("seq", help="build a numerator sequence file")
    s_sub = s.add_subparsers(dest="seq_command", required=True)
    b = s_sub.add_parser("build")
    b.add_argument("--method", required=True, choices=["random", "greedy", "blocks", "constant"])
    b.add_argument("--bound", type=int, required=True)
    b.add_argument("--c", required=True)
    b.add_argument("--seed", type=int, default=DEFAULT_SEED)
    b.add_argument("--epsilons", help="comma-separated targets, e.g. 1/2,1/4,1/8")
    b.add_argument("--out", required=True, dest="out_path")

    cov = sub.add_parser("coverage", help="exact uncovered measure of a prime range")
    cov.add_argument("--seq", required=True, dest="seq_path")
    cov.add_argument("--x", required=True)
    cov.add_argument("--y", required=True)

    lab = sub.add_parser("sievelab", help="level sets, Markov bound, uncovered expectation")
    lab.add_argument("--seq", dest="seq_path")
    lab.add_argument("--c")
    lab.add_argument("--x", required=True)
    lab.add_argument("--y", required=True)
    lab.add_argument("--exact", action="store_true")
    lab.add_argument("--mc", type=int, dest="trials")
    lab.add_argument("--seed", type=int, default=DEFAULT_SEED)
    lab.add_argument("--out", dest="out_path")

    h = sub.add_parser("hits", help="hit primes of x against a sequence")
    h.add_argument("--seq", required=True, dest="seq_path")
    h.add_argument("--x")
    h.add_argument("--x-named", choices=["sqrt2", "golden"], dest="x_named")
    h.add_argument("--eta", default=None)
    h.add_argument("--bound", type=int, required=True)
    h.add_argument("--format", choices=["json", "csv"], default="json", dest="out_format")
    h.add_argument("--out", dest="out_path")

    f = sub.add_parser("fracparts", help="primes with fractional part of x*p below c")
    f.add_argument("--x")
    f.add_argument("--x-named", choices=["sqrt2", "golden"], dest="x_named")
    f.add_argument("--eta", default=None)
    f.add_argument("--c", required=True)
    f.add_argument("--bound", type=int, required=True)
    f.add_argument("--format", choices=["json", "csv"], default="json", dest="out_format")
    f.add_argument("--out", dest="out_path")

    e = sub.add_parser("ergodic", help="twisted averages along primes, CSV")
    e.add_argument("--seq", required=True, dest="seq_path")
    e.add_argument("--x", required=True)
    e.add_argument("--y", required=True)
    e.add_argument("--primes-up-to", type=int, required=True, dest="primes_up_to")
    e.add_argument("--sparse", choices=["geometric", "psi"])
    e.add_argument("--psi", choices=["log", "loglog", "sqrt_log"])
    e.add_argument("--out", dest="out_path")

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    c = _parse_c(args.c) if getattr(args, "c", None) is not None else None
    eta = DEFAULT_ETA
    if getattr(args, "eta", None) is not None:
        eta = to_fraction(args.eta)
        if eta <= 0:
            raise CliError("eta must be > 0")
    epsilons = None
    if getattr(args, "epsilons", None):
        epsilons = tuple(to_fraction(part) for part in args.epsilons.split(","))
    threads = int(os.environ.get(THREADS_ENV, "1"))
    return RunConfig(
        command=args.command,
        bound=getattr(args, "bound", None),
        c=c,
        seq_path=getattr(args, "seq_path", None),
        x=getattr(args, "x", None),
        y=getattr(args, "y", None),
        seed=getattr(args, "seed", DEFAULT_SEED),
        trials=getattr(args, "trials", None),
        exact=getattr(args, "exact", False),
        method=getattr(args, "method", None),
        epsilons=epsilons,
        out_path=getattr(args, "out_path", None),
        out_format=getattr(args, "out_format", "json"),
        list_primes=getattr(args, "list_primes", False),
        x_named=getattr(args, "x_named", None),
        eta=eta,
        primes_up_to=getattr(args, "primes_up_to", None),
        sparse=getattr(args, "sparse", None),
        psi=getattr(args, "psi", None),
        threads=max(threads, 1),
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
    except (CliError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
