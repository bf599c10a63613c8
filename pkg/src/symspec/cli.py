"""``symspec`` command line: analyze, sweep and verify.

Exit codes: 0 success, 1 verification (or computation) failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import datetime as _dt
import json
import multiprocessing
import random
import sys
from fractions import Fraction

from .analysis import analyze_function, csv_header, csv_line, format_value, row_json
from .dsl import SpecError, named_families, parse_spec
from .pdt import build_pdt, export_tree, leaf_count
from .spectrum import SymmetricFunction
from .verify import EXHAUSTIVE_MAX, report_dict, run_verify

EXHAUSTIVE_SWEEP_MAX = 16
EXPORT_MAX_LEAVES = 1 << 20
CHUNK = 64

FAMILY_HELP = """\
function specs:
  maj:n            +1 iff |x| > n/2 (even n: ties go to -1)
  and:n            -1 iff |x| = n
  or:n             +1 iff |x| = 0
  parity:n         (-1)^|x|
  mod:m:n          -1 iff |x| = 0 (mod m)
  threshold:t:n    +1 iff |x| >= t
  g:k:n            -1 iff |x| = k
  random:seed:n    levels from Python's random.Random(seed)
  +--+             literal levels f(0)..f(n)

environment:
  SYMSPEC_EXACT_LIMIT   largest n handled in exact arithmetic (default 64)
"""


class UsageError(Exception):
    pass


def _timestamp() -> str:
    return _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")


def _parse_eps(text: str | None) -> Fraction | None:
    if text is None:
        return None
    try:
        eps = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--eps expects a rational p/q, got {text!r}") from None
    if eps < 0:
        raise UsageError("--eps must be nonnegative")
    return eps


def _write(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def cmd_analyze(args) -> int:
    try:
        spec = parse_spec(args.spec)
    except SpecError as exc:
        raise UsageError(str(exc)) from None
    eps = _parse_eps(args.eps)
    row = analyze_function(spec.function, spec.canonical(), eps)
    if args.pdt_export:
        tree = build_pdt(spec.function)
        count, _ = leaf_count(tree)
        if count > EXPORT_MAX_LEAVES:
            raise UsageError(f"tree has {count} leaves; export is limited to {EXPORT_MAX_LEAVES}")
        with open(args.pdt_export, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(export_tree(tree))
    if args.csv:
        sys.stdout.write(csv_header() + "\n" + csv_line(row) + "\n")
    else:
        sys.stdout.write(row_json(row, None if args.no_timestamp else _timestamp()))
    return 0


def _sweep_row(item) -> str:
    function_id, levels, eps = item
    f = SymmetricFunction(len(levels) - 1, levels)
    row = analyze_function(f, function_id, eps)
    return csv_line(row), row.envelope_ratio


def _sweep_items(args, eps):
    n = args.n
    if args.mode == "exhaustive":
        for index in range(2 ** (n + 1)):
            f = SymmetricFunction.from_index(n, index)
            yield f.level_string(), f.levels, eps
    elif args.mode == "families":
        specs = [parse_spec(s) for s in named_families(n)]
        for s in sorted(specs, key=lambda s: (s.function.level_string(), s.canonical())):
            yield s.canonical(), s.function.levels, eps
    else:
        rng = random.Random(args.seed)
        total = 2 ** (n + 1)
        indices = set()
        while len(indices) < min(args.count, total):
            indices.add(rng.getrandbits(n + 1))
        for index in sorted(indices):
            f = SymmetricFunction.from_index(n, index)
            yield f.level_string(), f.levels, eps


def cmd_sweep(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    if args.mode == "exhaustive" and args.n > EXHAUSTIVE_SWEEP_MAX:
        raise UsageError(f"exhaustive sweep refused for n = {args.n}: "
                         f"2^(n+1) functions; the limit is n <= {EXHAUSTIVE_SWEEP_MAX}")
    if args.workers < 1:
        raise UsageError("--workers must be at least 1")
    eps = _parse_eps(args.eps)
    items = _sweep_items(args, eps)
    lines = [csv_header()]
    ratios = []
    if args.workers == 1:
        results = map(_sweep_row, items)
        pool = None
    else:
        pool = multiprocessing.get_context("fork").Pool(args.workers)
        # imap keeps submission order, so rows merge exactly as in a serial run
        results = pool.imap(_sweep_row, items, chunksize=CHUNK)
    try:
        for line, ratio in results:
            lines.append(line)
            if ratio is not None:
                ratios.append(ratio)
    finally:
        if pool is not None:
            pool.close()
            pool.join()
    lines.append(f"# rows={len(lines) - 1} envelope_count={len(ratios)} "
                 f"envelope_min={format_value(min(ratios)) if ratios else ''} "
                 f"envelope_max={format_value(max(ratios)) if ratios else ''}")
    if not args.no_timestamp:
        lines.append(f"# generated_at={_timestamp()}")
    _write(args.out, "\n".join(lines) + "\n")
    return 0


def cmd_verify(args) -> int:
    if not 1 <= args.n_max <= EXHAUSTIVE_MAX:
        raise UsageError(f"--n-max must lie in [1, {EXHAUSTIVE_MAX}]")
    rep = run_verify(args.n_max, inject_fault=args.inject_fault)
    doc = report_dict(rep)
    if not args.no_timestamp:
        doc["generated_at"] = _timestamp()
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    for check in rep.checks.values():
        if not check.passed:
            sys.stderr.write(f"FAIL {check.name}: counterexample {check.counterexample}\n")
    return 0 if rep.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symspec", description="Fourier analysis of symmetric Boolean functions.",
        epilog=FAMILY_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze one function", epilog=FAMILY_HELP,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("spec", help="function spec, see below")
    p.add_argument("--eps", help="also solve the approximate-norm LP at this rational")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output (default)")
    fmt.add_argument("--csv", action="store_true", help="CSV header plus one row")
    p.add_argument("--pdt-export", metavar="FILE", help="write the parity decision tree")
    p.add_argument("--no-timestamp", action="store_true", help="omit generated_at")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sweep", help="CSV rows over many functions", epilog=FAMILY_HELP,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=("exhaustive", "families", "random"), required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", metavar="FILE")
    p.add_argument("--eps", help="add approximate-norm columns")
    p.add_argument("--count", type=int, default=100, help="random mode: number of functions")
    p.add_argument("--seed", type=int, default=0, help="random mode: PRNG seed")
    p.add_argument("--no-timestamp", action="store_true", help="omit the generated_at footer")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="exhaustive invariant suite")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--inject-fault", action="store_true", help="self-test: corrupt one check")
    p.add_argument("--no-timestamp", action="store_true", help="omit generated_at")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"symspec: error: {exc}\n")
        return 2
    except (ValueError, ArithmeticError, RuntimeError) as exc:
        sys.stderr.write(f"symspec: error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
