"""Command-line front-end.

    powergraph analyze N [--format table|json|csv] [--oracle ...]
    powergraph verify-range LO HI [--oracle maxflow] [--workers N] [--format ...] [--output PATH]
    powergraph selftest [--lo 2] [--hi 5000]

Exit codes: 0 success, 1 formula/oracle mismatch or selftest violation,
2 bad arguments, 3 overflow or capacity limits, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .arith import MAX_ORDER, factorize, resolve_class_cap
from .errors import ArithmeticOverflow, CapacityError, DomainError, ParameterError
from .inequalities import CHECKS, eq2_equality_cases
from .theorem import CSV_HEADER, ORACLES, csv_row, minimum_cutset, report_to_dict, sweep, verify

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_LIMIT, EXIT_IO = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class SweepConfig:
    lo: int
    hi: int
    oracle: str = "maxflow"
    class_cap: int = 4096
    workers: int = 1
    output: Path | None = None
    format: str = "table"
    strategy: str = "full"
    timings: bool = False

    def __post_init__(self):
        if self.lo < 2:
            raise UsageError("range lower bound must be at least 2")
        if self.hi < self.lo:
            raise UsageError("range upper bound is below the lower bound")
        if self.hi > MAX_ORDER:
            raise UsageError("range upper bound exceeds 2^63 - 1")
        if self.workers < 1:
            raise UsageError("--workers must be at least 1")
        if self.class_cap < 4:
            raise UsageError("--class-cap must be at least 4")


def _order(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 2 <= n <= MAX_ORDER:
        raise argparse.ArgumentTypeError("order must be between 2 and 2^63 - 1")
    return n


def _add_common(p: argparse.ArgumentParser, oracle_default: str) -> None:
    p.add_argument("--oracle", choices=ORACLES, default=oracle_default)
    p.add_argument("--class-cap", type=int, default=None,
                   help="max divisor classes (default: $POWERGRAPH_CLASS_CAP or 4096)")
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")
    p.add_argument("--output", type=Path, default=None)
    p.add_argument("--strategy", choices=("full", "pivot"), default="full",
                   help="pair scan used by the max-flow oracle")
    p.add_argument("--timings", action="store_true",
                   help="include elapsed_ms in JSON (breaks byte-stable output)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="powergraph", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="minimum cut-sets of P(C_n) for one n")
    p.add_argument("n", type=_order)
    p.add_argument("--json", action="store_const", const="json", dest="format")
    _add_common(p, "none")

    p = sub.add_parser("verify-range", help="check formula kappa against graph oracles over a range")
    p.add_argument("lo", type=int)
    p.add_argument("hi", type=int)
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    _add_common(p, "maxflow")

    p = sub.add_parser("selftest", help="evaluate the totient inequalities over a range")
    p.add_argument("--lo", type=int, default=2)
    p.add_argument("--hi", type=int, default=5000)
    return parser


@contextlib.contextmanager
def _sink(path: Path | None):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def _record_dict(report, record, timings: bool) -> dict:
    out = report_to_dict(report, record)
    if "verification" in out and not timings:
        out["verification"]["elapsed_ms"] = None
    return out


def _render_table(report, record=None) -> str:
    lines = [f"n = {report.n}  (r = {report.r}, regime {report.regime.value})"]
    if report.kappa is None:
        lines.append("complete graph, no cut-set")
        return "\n".join(lines)
    lines.append(f"kappa = {report.kappa}")
    lines.append("achieving: " + ", ".join(c.label for c in report.achieving))
    lines.append(f"{'candidate':<18} {'size':>12}  classes")
    for c in sorted(report.family, key=lambda c: (c.size, c.sort_key)):
        lines.append(f"{c.label:<18} {c.size:>12}  {sorted(c.values)}")
    if record is not None:
        lines.append(f"oracle {record.oracle_used}: kappa {record.oracle_kappa}, match {record.match}, "
                     f"separations ok {record.disconnection_ok}")
    return "\n".join(lines)


def cmd_analyze(args) -> int:
    cap = resolve_class_cap(args.class_cap)
    f = factorize(args.n)
    report = minimum_cutset(f, cap)
    record = None if args.oracle == "none" else verify(f, args.oracle, cap, strategy=args.strategy)
    with _sink(args.output) as out:
        if args.format == "json":
            out.write(json.dumps(_record_dict(report, record, args.timings), indent=2) + "\n")
        elif args.format == "csv":
            out.write(CSV_HEADER + "\n" + csv_row(report, record) + "\n")
        else:
            out.write(_render_table(report, record) + "\n")
    return EXIT_MISMATCH if record is not None and not record.match else EXIT_OK


def cmd_verify_range(args) -> int:
    config = SweepConfig(args.lo, args.hi, args.oracle, resolve_class_cap(args.class_cap), args.workers,
                         args.output, args.format, args.strategy, args.timings)
    with _sink(config.output) as out:
        return _run_sweep(config, out)


def _run_sweep(config: SweepConfig, out) -> int:
    records, mismatches, unverified = [], 0, 0
    for report, record in sweep(config.lo, config.hi, config.oracle, config.workers,
                                config.class_cap, config.strategy):
        records.append((report, record))
        if not record.match:
            mismatches += 1
            print(f"MISMATCH at n={record.n}: formula {record.formula_kappa}, "
                  f"oracle {record.oracle_kappa} ({record.note})", file=sys.stderr)
        elif record.oracle_kappa is None and report.kappa is not None:
            unverified += 1
    summary = {"lo": config.lo, "hi": config.hi, "records": len(records), "matches": len(records) - mismatches,
               "mismatches": mismatches, "unverified": unverified, "oracle": config.oracle,
               "aborted": mismatches > 0 and records[-1][1].n < config.hi}
    if config.format == "json":
        doc = {"summary": summary, "records": [_record_dict(r, v, config.timings) for r, v in records]}
        out.write(json.dumps(doc, indent=2) + "\n")
    elif config.format == "csv":
        out.write(CSV_HEADER + "\n")
        out.writelines(csv_row(r, v) + "\n" for r, v in records)
    else:
        for r, v in records:
            kappa = "-" if r.kappa is None else r.kappa
            labels = ",".join(c.label for c in r.achieving) or "complete graph"
            out.write(f"{r.n:>8} {r.regime.value:<12} kappa={kappa:<10} oracle={v.oracle_kappa} "
                      f"match={v.match} {labels}\n")
    print(f"{summary['records']} records, {summary['matches']} matches, {mismatches} mismatches, "
          f"{unverified} unverified", file=sys.stderr)
    return EXIT_MISMATCH if mismatches else EXIT_OK


def cmd_selftest(args) -> int:
    if args.lo < 2 or args.hi < args.lo:
        raise UsageError("selftest range must satisfy 2 <= lo <= hi")
    counts = {name: 0 for name in CHECKS}
    violations = []
    equality_cases = set()
    for n in range(args.lo, args.hi + 1):
        f = factorize(n)
        for name, check in CHECKS.items():
            found = check(f)
            counts[name] += len(found)
            violations.extend(found)
        equality_cases.update((len(I), tuple(f.p(i) for i in I)) for I in eq2_equality_cases(f))
    for name, count in counts.items():
        print(f"{'PASS' if count == 0 else 'FAIL'} {name} ({count} violations over n={args.lo}..{args.hi})")
    print("equality cases of (t+1)phi(prod p) >= prod p: "
          + ", ".join(f"t={t} primes={ps}" for t, ps in sorted(equality_cases)))
    for v in violations[:20]:
        print(f"  violation {v.check} at n={v.n} params={v.params}: {v.detail}")
    return EXIT_OK if not violations else EXIT_MISMATCH


COMMANDS = {"analyze": cmd_analyze, "verify-range": cmd_verify_range, "selftest": cmd_selftest}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, DomainError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ArithmeticOverflow, CapacityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
