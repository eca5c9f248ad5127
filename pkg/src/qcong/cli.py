"""Command-line front end.

Exit codes: 0 when everything checks out (confirmed expected failures
included), 1 on a mathematical failure, 2 on a usage or configuration error.
"""
from __future__ import annotations

import argparse
import fnmatch
import json
import sys
import time
from pathlib import Path

from . import __version__
from .claims import default_claims_dir, instantiate, registry_load
from .errors import QCongError, ValidationError
from .runner import (
    CONJECTURE_COUNTEREXAMPLE,
    ERROR,
    THEOREM_FAILED,
    RunOptions,
    expand_random,
    format_text,
    grid,
    load_plan,
    make_report,
    parse_set,
    remainder_dump,
    run_tasks,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--claims", metavar="DIR", help="claims directory (default: bundled corpus, or $QCONG_CLAIMS)")
    p.add_argument("--filter", metavar="GLOB", help="only claims whose name matches GLOB")
    p.add_argument("--set", action="append", default=[], metavar="NAME=V[,V...]",
                   help="parameter values; ranges as LO..HI; repeatable")
    p.add_argument("--plan", metavar="PATH", help="instance list (default: bundled acceptance.plan)")
    p.add_argument("--parallel", type=int, default=1, metavar="N", help="worker processes")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--truncation", type=int, default=40, metavar="N", help="series truncation degree")
    p.add_argument("--budget", type=float, default=None, metavar="SECONDS", help="per-instance time limit")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    p.add_argument("--dump-remainder", metavar="PATH", help="write full remainders of failures as JSON")
    p.add_argument("--no-numeric", action="store_true", help="skip floating-point cross-checks")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qcong", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"qcong {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("verify", help="run claim instances from the plan or from --set")
    _add_common(p)
    p = sub.add_parser("scan", help="enumerate admissible instances of a claim over ranges")
    p.add_argument("claim", nargs="?", help="claim name (or use --filter)")
    _add_common(p)
    p = sub.add_parser("series", help="check the series identities")
    _add_common(p)
    p = sub.add_parser("padic", help="check the p-adic claims")
    _add_common(p)
    p = sub.add_parser("report", help="re-render a saved JSON report")
    p.add_argument("input", help="JSON report written by --format json")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", metavar="PATH")
    return ap


def _claims(args) -> dict:
    root = args.claims or default_claims_dir()
    return {c.name: c for c in registry_load(root)}


def _selected(claims: dict, args, kind: str | None = None) -> dict:
    out = {}
    pattern = getattr(args, "filter", None)
    for name, c in claims.items():
        if pattern and not fnmatch.fnmatchcase(name, pattern):
            continue
        if kind and c.kind != kind:
            continue
        out[name] = c
    return out


def _tasks(claims: dict, selected: dict, args) -> list:
    settings = parse_set(args.set)
    if settings:
        return [(name, a) for name in sorted(selected) for a in grid(settings)]
    tasks = [(n, a) for n, a in load_plan(args.plan) if n in selected]
    return expand_random(tasks, claims, args.seed)


def _emit(report: dict, fmt: str, out: str | None):
    text = json.dumps(report, indent=2, sort_keys=False) + "\n" if fmt == "json" else format_text(report)
    if out:
        try:
            Path(out).write_text(text, encoding="utf-8")
        except OSError as ex:
            raise UsageError(f"cannot write {out}: {ex}") from None
    else:
        sys.stdout.write(text)


def _run(args, claims: dict, tasks: list) -> dict:
    opts = RunOptions(seed=args.seed, truncation=args.truncation, budget=args.budget,
                      numeric=not args.no_numeric)
    t0 = time.perf_counter()
    records = run_tasks(tasks, claims, opts, parallel=max(1, args.parallel))
    report = make_report(records, args.seed, time.perf_counter() - t0)
    _emit(report, args.format, args.out)
    if args.dump_remainder:
        try:
            Path(args.dump_remainder).write_text(json.dumps(remainder_dump(records), indent=2) + "\n")
        except OSError as ex:
            raise UsageError(f"cannot write {args.dump_remainder}: {ex}") from None
    counter = [r for r in report["results"] if r["status"] == CONJECTURE_COUNTEREXAMPLE]
    for r in counter:
        print(f"*** counterexample to conjecture {r['claim']} at {r['assignments']} ***", file=sys.stderr)
    return report


def _exit_code(report: dict, fail_on_counterexample: bool) -> int:
    statuses = {r["status"] for r in report["results"]}
    if ERROR in statuses:
        return EXIT_USAGE
    if THEOREM_FAILED in statuses:
        return EXIT_FAIL
    if fail_on_counterexample and CONJECTURE_COUNTEREXAMPLE in statuses:
        return EXIT_FAIL
    return EXIT_OK


def cmd_verify(args, kind: str | None = None) -> int:
    claims = _claims(args)
    selected = _selected(claims, args, kind)
    if args.filter and not selected:
        raise UsageError(f"no claim matches {args.filter!r}")
    report = _run(args, claims, _tasks(claims, selected, args))
    return _exit_code(report, fail_on_counterexample=False)


def cmd_series(args) -> int:
    if args.truncation < 0:
        raise UsageError("--truncation must be non-negative")
    return cmd_verify(args, kind="series")


def cmd_padic(args) -> int:
    return cmd_verify(args, kind="padic")


def cmd_scan(args) -> int:
    claims = _claims(args)
    if args.claim:
        if args.claim not in claims:
            raise UsageError(f"unknown claim {args.claim!r}")
        selected = {args.claim: claims[args.claim]}
    else:
        selected = _selected(claims, args)
    settings = parse_set(args.set)
    tasks = []
    for name in sorted(selected):
        c = selected[name]
        missing = [p for p in c.params if p not in settings]
        if missing:
            raise UsageError(f"scan of {name} needs --set for {', '.join(missing)}")
        for a in grid({k: v for k, v in settings.items() if k in c.params}):
            try:
                instantiate(c, a)
            except ValidationError:
                continue  # not admissible
            tasks.append((name, a))
    report = _run(args, claims, tasks)
    return _exit_code(report, fail_on_counterexample=True)


def cmd_report(args) -> int:
    try:
        report = json.loads(Path(args.input).read_text(encoding="utf-8"))
    except (OSError, ValueError) as ex:
        raise UsageError(f"cannot read report {args.input}: {ex}") from None
    if not isinstance(report, dict) or "results" not in report or "totals" not in report:
        raise UsageError(f"{args.input} is not a report")
    _emit(report, args.format, args.out)
    return EXIT_OK


COMMANDS = {
    "verify": cmd_verify,
    "scan": cmd_scan,
    "series": cmd_series,
    "padic": cmd_padic,
    "report": cmd_report,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as ex:
        return EXIT_USAGE if ex.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except (UsageError, QCongError) as ex:
        print(f"qcong: error: {type(ex).__name__}: {ex}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
