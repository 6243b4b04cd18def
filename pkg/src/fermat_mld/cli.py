"""Command line front end: ``fermat-mld {compute,verify,bench,partitions}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import time
from dataclasses import dataclass, field

from . import __version__
from .golden import GoldenTable
from .groebner import ComputationTimeout
from .mldeg import (
    COMPUTED_STRATEGIES,
    STRATEGIES,
    EngineConfig,
    InconsistentResultError,
    MLDegreeResult,
    clear_memo,
    cross_check,
    mldeg,
)
from .partitions import coefficient_c, enumerate_partitions, symmetry_order_o
from .polyring import DEFAULT_PRIME, VERIFY_PRIME, BadPrimeError

log = logging.getLogger("fermat_mld")

FORMATS = ("text", "json", "csv")


@dataclass
class RunReport:
    command: str
    primes: list[int]
    seed: int
    format: str = "text"
    results: list[dict] = field(default_factory=list)
    mismatches: list[dict] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return 1 if self.mismatches or self.errors else 0

    def to_dict(self) -> dict:
        out = {
            "command": self.command,
            "environment": {"primes": self.primes, "seed": self.seed, "version": __version__},
            "results": self.results,
            "mismatches": self.mismatches,
        }
        if self.errors:
            out["errors"] = self.errors
        if self.notes:
            out["notes"] = self.notes
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _config(args, strategy="auto") -> EngineConfig:
    threads = args.threads
    if threads is None:
        threads = int(os.environ.get("FERMAT_MLD_THREADS", "1"))
    primes = tuple(args.prime) if args.prime else (DEFAULT_PRIME, VERIFY_PRIME)
    return EngineConfig(primes=primes, seed=args.seed, parallelism=threads,
                        timeout=args.timeout, strategy=strategy)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _breakdown_lines(result: MLDegreeResult) -> list[str]:
    lines = [f"  {'partition':<20} {'c_a':>10} {'o_a':>6} {'deg':>6} {'contribution':>14}"]
    for r in result.breakdown:
        lines.append(
            f"  {str(r.partition):<20} {r.c:>10} {r.o:>6} {r.degree:>6} {r.contribution:>14}"
        )
    return lines


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _check_bounds(n, d, strategy="auto"):
    # bound violations are flag errors, reported as usage errors by main()
    if n < 1 or d < 2:
        raise ValueError(f"need --n >= 1 and --d >= 2, got n={n}, d={d}")
    if strategy.startswith("random") and n < 2:
        raise ValueError("random-data strategies need --n >= 2")


def cmd_compute(args) -> RunReport:
    _check_bounds(args.n, args.d, args.strategy)
    cfg = _config(args, args.strategy)
    report = RunReport("compute", list(cfg.primes), cfg.seed, args.format)
    strategy = args.strategy
    if args.breakdown and strategy == "auto":
        strategy = "partitioning-diff"
    try:
        result = mldeg(args.n, args.d, cfg, strategy)
    except (ComputationTimeout, InconsistentResultError, BadPrimeError, ValueError) as exc:
        report.errors.append(f"{type(exc).__name__}: {exc}")
        return report
    row = result.to_dict()
    if not args.breakdown:
        row.pop("breakdown", None)
    report.results.append(row)
    if args.format == "text":
        print(f"MLdeg F_{{{args.n},{args.d}}} = {result.value}   "
              f"[{result.strategy}; primes {result.primes or '-'}; {result.seconds:.3f}s]")
        if args.breakdown and result.breakdown is not None:
            print("\n".join(_breakdown_lines(result)))
    elif args.format == "csv":
        print(_csv_text(["n", "d", "strategy", "value", "seconds"],
                        [[result.n, result.d, result.strategy, result.value,
                          f"{result.seconds:.6f}"]]), end="")
    return report


def cmd_verify(args) -> RunReport:
    cfg = _config(args)
    report = RunReport("verify", list(cfg.primes), cfg.seed, args.format)
    table = GoldenTable.load(args.golden)
    cells = table.cells(args.max_n, args.max_d, args.min_n, args.min_d)
    strategies = args.strategies
    if not cells:
        report.notes.append("nothing to verify: no golden-table cells inside the bounds")
        if args.format == "text":
            print("nothing to verify: no golden-table cells inside the bounds")
        return report
    for n, d in cells:
        expected = table[(n, d)]
        try:
            chosen = None
            if strategies:
                chosen = [s for s in strategies
                          if s != "closed" or n == 2 or d == 2]
                chosen = [s for s in chosen
                          if not s.startswith("random") or 2 <= n <= args.random_cap]
            cc = cross_check(n, d, cfg, strategies=chosen, random_cap=args.random_cap,
                             strict=False)
        except (ComputationTimeout, InconsistentResultError, BadPrimeError) as exc:
            report.errors.append(f"n={n}, d={d}: {type(exc).__name__}: {exc}")
            if args.format == "text":
                print(f"ERROR n={n:<3d} d={d:<3d} {exc}")
            continue
        status = "pass"
        if not cc.ok:
            status = "fail"
            report.mismatches.append({"n": n, "d": d, "expected": expected,
                                      "values": cc.values, "reason": cc.discrepancy})
        elif cc.value != expected:
            status = "fail"
            report.mismatches.append({"n": n, "d": d, "expected": expected,
                                      "values": cc.values, "reason": "golden mismatch"})
        report.results.append({"n": n, "d": d, "expected": expected, "values": cc.values,
                               "status": status,
                               "seconds": round(sum(r.seconds for r in cc.results), 6)})
        if args.format == "text":
            print(f"{status.upper():<5} n={n:<3d} d={d:<3d} expected={expected:<12d} "
                  f"got={cc.values}")
    if args.format == "text":
        print(f"{len(report.results) - len(report.mismatches)}/{len(cells)} cells pass")
        for m in report.mismatches:
            print(f"  mismatch n={m['n']} d={m['d']}: expected {m['expected']}, "
                  f"got {m['values']} ({m['reason']})")
    return report


def _parse_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    if "-" in text.strip("-"):
        lo, hi = text.split("-", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(",")]


BENCH_HEADER = ["n", "d", "strategy", "status", "seconds", "value"]


def cmd_bench(args) -> RunReport:
    cfg = _config(args)
    report = RunReport("bench", list(cfg.primes), cfg.seed, "csv")
    rows = []
    for n in _parse_range(args.n_range):
        for d in _parse_range(args.d_range):
            for strategy in args.strategies:
                clear_memo()
                t0 = time.perf_counter()
                value = ""
                try:
                    value = mldeg(n, d, cfg, strategy).value
                    status = "ok"
                except ComputationTimeout:
                    status = "timeout"
                except Exception as exc:  # recorded per cell, never fatal
                    log.warning("bench n=%d d=%d %s: %s", n, d, strategy, exc)
                    status = "error"
                seconds = time.perf_counter() - t0
                rows.append([n, d, strategy, status, f"{seconds:.6f}", value])
                report.results.append(dict(zip(BENCH_HEADER, rows[-1])))
    text = _csv_text(BENCH_HEADER, rows)
    if args.out:
        try:
            with open(args.out, "w", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            report.errors.append(f"cannot write {args.out}: {exc}")
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return report
    if args.format != "json" and not args.out:
        print(text, end="")
    elif args.format == "text":
        print(f"wrote {len(rows)} rows to {args.out}")
    return report


def cmd_partitions(args) -> RunReport:
    _check_bounds(args.n, args.d)
    report = RunReport("partitions", [], 0, args.format)
    parts = enumerate_partitions(args.n + 1, args.d)
    rows = [(a, coefficient_c(a), symmetry_order_o(a)) for a in parts]
    for a, c, o in rows:
        report.results.append({"partition": list(a.parts), "c": c, "o": o})
    if args.format == "text":
        print(f"P_{{{args.n + 1},{args.d}}}: {len(rows)} partitions")
        for a, c, o in rows:
            print(f"  {str(a):<24} c={c:<10d} o={o}")
    elif args.format == "csv":
        print(_csv_text(["partition", "c", "o"],
                        [[" ".join(map(str, a.parts)), c, o] for a, c, o in rows]), end="")
    return report


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _add_engine_flags(p):
    p.add_argument("--prime", type=int, action="append",
                   help="prime modulus (repeatable; default 32003 and 65537)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=None,
                   help="worker processes (default $FERMAT_MLD_THREADS or 1)")
    p.add_argument("--timeout", type=float, default=None, help="seconds per computation")
    p.add_argument("--format", choices=FORMATS, default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fermat-mld", description="ML degrees of Fermat hypersurfaces over prime fields")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="compute one ML degree")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--strategy", choices=STRATEGIES, default="auto")
    p.add_argument("--breakdown", action="store_true", help="print the per-partition table")
    _add_engine_flags(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", help="cross-check strategies against the published table")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--max-d", type=int, required=True)
    p.add_argument("--min-n", type=int, default=1)
    p.add_argument("--min-d", type=int, default=2)
    p.add_argument("--strategies", nargs="+", choices=COMPUTED_STRATEGIES + ("closed",))
    p.add_argument("--random-cap", type=int, default=4,
                   help="largest n for the random-data strategies")
    p.add_argument("--golden", default=None, help="alternative golden table file")
    _add_engine_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time strategies over a grid, CSV output")
    p.add_argument("--n-range", required=True, help="e.g. 2..4")
    p.add_argument("--d-range", required=True, help="e.g. 2..4")
    p.add_argument("--strategies", nargs="+", choices=COMPUTED_STRATEGIES + ("closed",),
                   default=["partitioning", "partitioning-diff"])
    p.add_argument("--out", default=None, help="CSV path (default stdout)")
    _add_engine_flags(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("partitions", help="list the partition set with c_a and o_a")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--format", choices=FORMATS, default="text")
    p.set_defaults(func=cmd_partitions)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        report = args.func(args)
    except (BadPrimeError, ValueError) as exc:
        parser.error(str(exc))
    if args.format == "json":
        sys.stdout.write(report.to_json())
    for err in report.errors:
        print(f"error: {err}", file=sys.stderr)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
