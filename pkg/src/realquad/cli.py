"""Command-line entry point: ``realquad <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from contextlib import contextmanager
from pathlib import Path

from .arith import is_prime, parse_index
from .classify import classify, classify_direct, classify_general
from .errors import CacheFormatError, CapacityError, DomainError
from .laorder import L, minimal_unit_power
from .pell import (
    SCAN_HEADER,
    SCAN_HEADER_VERBOSE,
    conjecture_scan,
    read_checkpoint,
)
from .quadfield import fundamental_unit, make_field, norm
from .tables import (
    generate_table,
    load_unit_cache,
    save_unit_cache,
    squarefree_range,
    undetermined_stats,
    write_csv,
    write_jsonl,
)

CACHE_ENV = "REALQUAD_UNIT_CACHE"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_COUNTEREXAMPLE = 2
EXIT_CAPACITY = 3

log = logging.getLogger("realquad")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def _integer(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")


def _verdict(flag: bool) -> str:
    return "locally associated" if flag else "not locally associated"


def cmd_unit(args) -> int:
    f = make_field(args.d)
    u = fundamental_unit(f)
    a, b, den = u.sqrt_coords()
    alpha = f"(1+√{f.d})/2" if f.half_basis else f"√{f.d}"
    sqrt_form = f"{a} + {b}·√{f.d}" if den == 1 else f"({a} + {b}·√{f.d})/2"
    print(f"{u.x} + {u.y}·α  where α = {alpha}")
    print(f"{sqrt_form}, norm {norm(u)}")
    return EXIT_OK


def cmd_lfunc(args) -> int:
    print(L(parse_index(args.n), args.d))
    return EXIT_OK


def cmd_minpow(args) -> int:
    r = minimal_unit_power(parse_index(args.n), args.d)
    print(f"m = {r.m}")
    print(f"L = {r.l_value}")
    print(_verdict(r.locally_associated))
    return EXIT_OK


def cmd_classify(args) -> int:
    n = parse_index(args.n)
    if args.direct:
        c = classify_direct(n, args.d)
    elif args.d > 1 and is_prime(args.d):
        c = classify(n, args.d)
    else:
        c = classify_general(n, args.d)
    if args.json:
        print(json.dumps(c.to_json()))
        return EXIT_OK
    print(_verdict(c.verdict))
    if args.trace:
        for step in c.trace:
            print(f"  {step.subindex}: {step.rule.value} -> {_verdict(step.outcome)}")
        for r in c.direct_computations:
            print(f"  direct R_{r.n}: m = {r.m}, L = {r.l_value}")
    return EXIT_OK


@contextmanager
def _output(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="\n") as fh:
            yield fh


def cmd_table(args) -> int:
    ds = squarefree_range(args.d_min, args.d_max, args.primes_only)
    rows = generate_table(ds, args.n_max, workers=args.workers)
    with _output(args.out) as fh:
        count = (write_csv if args.format == "csv" else write_jsonl)(rows, fh)
    log.info("wrote %d rows for %d fields", count, len(ds))
    return EXIT_OK


def cmd_conjecture(args) -> int:
    start = read_checkpoint(args.resume) if args.resume else 0
    if start:
        log.info("resuming after p=%d", start)
    failures = []
    checked = 0
    with _output(args.out) as fh:
        fh.write((SCAN_HEADER_VERBOSE if args.verbose else SCAN_HEADER) + "\n")
        for entry in conjecture_scan(
            args.p_max, start_after=start, checkpoint=args.resume, workers=args.workers
        ):
            fh.write(entry.csv_row(args.verbose) + "\n")
            checked += 1
            if not entry.holds:
                failures.append(entry)
    log.info("checked %d primes, %d counterexamples", checked, len(failures))
    if failures:
        for entry in failures:
            print(json.dumps({"counterexample": entry.to_json()}))
        return EXIT_COUNTEREXAMPLE
    return EXIT_OK


def cmd_stats(args) -> int:
    if args.case in (2, 3) and args.n_max is None:
        raise DomainError(f"case {args.case} requires --n-max")
    (s,) = undetermined_stats(args.p_max, [args.case], n_max=args.n_max)
    params = " ".join(f"{k}={v}" for k, v in s.parameters.items())
    print(
        f"case {s.case_id}: occurrences={s.occurrences} "
        f"locally_associated={s.locally_associated} ({params})"
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="realquad", description="Locally associated orders in real quadratic fields.")
    parser.add_argument("--log-level", default="WARNING", help="logging level for diagnostics")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("unit", help="fundamental unit of Q[sqrt d]")
    p.add_argument("d", type=_integer)
    p.set_defaults(func=cmd_unit)

    p = sub.add_parser("lfunc", help="the L function L(n, d)")
    p.add_argument("n", type=str)
    p.add_argument("d", type=_integer)
    p.set_defaults(func=cmd_lfunc)

    p = sub.add_parser("minpow", help="minimal power of the unit lying in R_n")
    p.add_argument("n", type=str)
    p.add_argument("d", type=_integer)
    p.set_defaults(func=cmd_minpow)

    p = sub.add_parser("classify", help="decide whether R_n is locally associated")
    p.add_argument("n", type=str, help="index, plain or pre-factored like 2^1*3^8")
    p.add_argument("d", type=_integer)
    p.add_argument("--trace", action="store_true", help="print the rule trace")
    p.add_argument("--direct", action="store_true", help="skip the rules, use the unit computation")
    p.add_argument("--json", action="store_true", help="emit the classification as JSON")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("table", help="tabulate orders over a range of fields")
    p.add_argument("--d-min", type=_positive, required=True)
    p.add_argument("--d-max", type=_positive, required=True)
    p.add_argument("--n-max", type=_positive, required=True)
    p.add_argument("--primes-only", action="store_true")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--workers", type=_positive, default=1)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("conjecture", help="scan primes for the R_p / Pell criterion")
    p.add_argument("--p-max", type=_positive, required=True)
    p.add_argument("--resume", metavar="CHECKPOINT", help="checkpoint file to resume from and update")
    p.add_argument("--out", help="CSV output path (default: stdout)")
    p.add_argument("--verbose", action="store_true", help="include full x, y values")
    p.add_argument("--workers", type=_positive, default=1)
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("stats", help="counts for the unresolved families")
    p.add_argument("--p-max", type=_positive, required=True)
    p.add_argument("--case", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--n-max", type=_positive, help="index bound (required for cases 2 and 3)")
    p.set_defaults(func=cmd_stats)
    return parser


def run(argv: list[str] | None = None) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=args.log_level.upper(), format="%(levelname)s: %(message)s")

    cache_path = os.environ.get(CACHE_ENV)
    try:
        if cache_path and Path(cache_path).exists():
            load_unit_cache(cache_path)
        code = args.func(args)
        if cache_path:
            save_unit_cache(cache_path)
        return code
    except CapacityError as exc:
        print(f"realquad: capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except CacheFormatError as exc:
        print(f"realquad: unit cache {cache_path}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"realquad: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
