"""Batch execution of claim instances and the run report.

A task is a ``(claim name, assignments)`` pair.  Tasks are independent, so
they may run in a process pool; results are sorted by claim name and
assignment afterwards, which makes parallel and sequential reports equal
apart from timing fields.
"""
from __future__ import annotations

import itertools
import re
import signal
import threading
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__
from .claims import DATA_DIR, instantiate
from .engine import check_concrete, rahman_substitutions, series_identity_check
from .errors import ValidationError
from .padic import padic_sum_check

THEOREM_VERIFIED = "THEOREM_VERIFIED"
THEOREM_FAILED = "THEOREM_FAILED"
CONJECTURE_SUPPORTED = "CONJECTURE_SUPPORTED"
CONJECTURE_COUNTEREXAMPLE = "CONJECTURE_COUNTEREXAMPLE"
EXPECTED_FAILURE_CONFIRMED = "EXPECTED_FAILURE_CONFIRMED"
SKIPPED = "SKIPPED"
ERROR = "ERROR"

STATUSES = (
    THEOREM_VERIFIED,
    THEOREM_FAILED,
    CONJECTURE_SUPPORTED,
    CONJECTURE_COUNTEREXAMPLE,
    EXPECTED_FAILURE_CONFIRMED,
    SKIPPED,
    ERROR,
)

DEFAULT_PLAN = DATA_DIR / "acceptance.plan"
TIMING_FIELDS = ("elapsed", "wall_time")


def outcome_status(claim_status: str, holds: bool) -> str:
    if claim_status == "theorem":
        return THEOREM_VERIFIED if holds else THEOREM_FAILED
    if claim_status == "conjecture":
        return CONJECTURE_SUPPORTED if holds else CONJECTURE_COUNTEREXAMPLE
    if claim_status == "refuted":
        # a refuted statement may still hold at individual instances
        return CONJECTURE_SUPPORTED if holds else EXPECTED_FAILURE_CONFIRMED
    raise ValueError(f"unknown claim status {claim_status!r}")


# plans ---------------------------------------------------------------------


def _parse_value(text: str):
    if re.fullmatch(r"-?\d+", text):
        return int(text)
    return text


def parse_plan(text: str, source: str = "<plan>") -> list:
    """``[(claim, {name: value})]`` from a plan file."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, *pairs = line.split()
        assignment = {}
        for pair in pairs:
            if "=" not in pair:
                raise ValidationError(f"{source}:{lineno}: expected name=value, got {pair!r}")
            k, v = pair.split("=", 1)
            assignment[k] = _parse_value(v)
        out.append((name, assignment))
    return out


def load_plan(path=None) -> list:
    path = Path(path) if path is not None else DEFAULT_PLAN
    return parse_plan(path.read_text(encoding="utf-8"), str(path))


def expand_random(tasks: list, claims: dict, seed: int) -> list:
    """Replace ``random=N`` entries with N seeded substitutions."""
    out = []
    for name, a in tasks:
        if "random" in a:
            count = int(a["random"])
            for subs in rahman_substitutions(count, seed, d0=name.endswith("_d0")):
                out.append((name, subs))
        else:
            out.append((name, a))
    return out


def parse_set(values: list) -> dict:
    """``["d=2", "n=3,7,11", "p=5..29"]`` into ``{name: [values]}``."""
    out = {}
    for item in values or ():
        if "=" not in item:
            raise ValidationError(f"--set expects NAME=V[,V...], got {item!r}")
        k, v = item.split("=", 1)
        vals = []
        for part in v.split(","):
            m = re.fullmatch(r"(-?\d+)\.\.(-?\d+)", part.strip())
            if m:
                vals.extend(range(int(m.group(1)), int(m.group(2)) + 1))
            elif part.strip():
                vals.append(_parse_value(part.strip()))
        if not vals:
            raise ValidationError(f"--set {k} has no values")
        out[k] = vals
    return out


def grid(settings: dict) -> list:
    keys = sorted(settings)
    return [dict(zip(keys, combo)) for combo in itertools.product(*(settings[k] for k in keys))]


# execution -----------------------------------------------------------------


class BudgetExceeded(Exception):
    pass


def _alarm(signum, frame):
    raise BudgetExceeded()


@dataclass
class RunOptions:
    seed: int = 42
    truncation: int = 40
    budget: float | None = None
    numeric: bool = True


def _sort_key(rec: dict):
    args = sorted(rec["assignments"].items())
    return (rec["claim"], [(k, (0, v, "") if isinstance(v, int) else (1, 0, str(v))) for k, v in args])


def run_task(claim, assignment: dict, opts: RunOptions) -> dict:
    """Run one instance and return its report record."""
    rec = {
        "claim": claim.name,
        "kind": claim.kind,
        "claim_status": claim.status,
        "assignments": {k: (v if isinstance(v, int) else str(v)) for k, v in sorted(assignment.items())},
    }
    use_alarm = (
        opts.budget is not None
        and hasattr(signal, "setitimer")
        and threading.current_thread() is threading.main_thread()
    )
    if use_alarm:
        old = signal.signal(signal.SIGALRM, _alarm)
        signal.setitimer(signal.ITIMER_REAL, opts.budget)
    t0 = time.perf_counter()
    try:
        cc = instantiate(claim, assignment)
        if claim.kind == "congruence":
            res = check_concrete(cc, numeric=opts.numeric, seed=opts.seed)
        elif claim.kind == "series":
            res = series_identity_check(cc, opts.truncation, numeric=opts.numeric)
        else:
            res = padic_sum_check(cc)
        d = res.to_dict()
        d.pop("claim", None)
        d.pop("assignments", None)
        rec.update(d)
        rec["status"] = outcome_status(claim.status, res.holds)
        rec["_remainder"] = None if res.holds else _serialize_remainder(res.remainder)
    except BudgetExceeded:
        rec.update(status=SKIPPED, holds=None, detail=f"exceeded budget of {opts.budget} s")
    except ValidationError:
        raise
    except Exception as ex:  # reported, never swallowed silently
        rec.update(status=ERROR, holds=None, detail=f"{type(ex).__name__}: {ex}")
    finally:
        if use_alarm:
            signal.setitimer(signal.ITIMER_REAL, 0)
            signal.signal(signal.SIGALRM, old)
    rec["elapsed"] = round(time.perf_counter() - t0, 6)
    return rec


def _serialize_remainder(rem) -> list:
    if rem is None:
        return []
    if hasattr(rem, "coeffs"):
        return [str(c) for c in rem.coeffs]
    return [str(Fraction(c)) for c in rem]


def _worker(args):
    claim, assignment, opts = args
    return run_task(claim, assignment, opts)


def run_tasks(tasks: list, claims: dict, opts: RunOptions, parallel: int = 1) -> list:
    """Run ``[(claim name, assignment)]``; results come back sorted."""
    jobs = []
    for name, a in tasks:
        if name not in claims:
            raise ValidationError(f"unknown claim {name!r}")
        # fail fast on bad assignments before spawning workers
        instantiate(claims[name], a)
        jobs.append((claims[name], a, opts))
    if parallel > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            records = list(pool.map(_worker, jobs))
    else:
        records = [_worker(j) for j in jobs]
    return sorted(records, key=_sort_key)


def make_report(records: list, seed: int, wall_time: float) -> dict:
    totals = Counter(r["status"] for r in records)
    return {
        "version": __version__,
        "seed": seed,
        "results": [{k: v for k, v in r.items() if not k.startswith("_")} for r in records],
        "totals": {s: totals.get(s, 0) for s in STATUSES},
        "wall_time": round(wall_time, 6),
    }


def strip_timing(report: dict) -> dict:
    """Copy of ``report`` without fields that depend on the clock."""
    out = {k: v for k, v in report.items() if k not in TIMING_FIELDS}
    out["results"] = [{k: v for k, v in r.items() if k not in TIMING_FIELDS} for r in report["results"]]
    return out


def format_text(report: dict) -> str:
    lines = []
    for r in report["results"]:
        args = ", ".join(f"{k}={v}" for k, v in r["assignments"].items())
        line = f"{r['status']:<27} {r['claim']}({args})"
        if r.get("status") in (THEOREM_FAILED, CONJECTURE_COUNTEREXAMPLE, EXPECTED_FAILURE_CONFIRMED):
            line += f"  remainder degree {r.get('remainder_degree')} [{r.get('remainder_hash', '')}]"
        elif r.get("status") in (SKIPPED, ERROR):
            line += f"  {r.get('detail', '')}"
        if "elapsed" in r:
            line += f"  {r['elapsed']:.3f}s"
        lines.append(line)
    totals = ", ".join(f"{k}={v}" for k, v in report["totals"].items() if v)
    lines.append(f"totals: {totals or 'no results'}")
    return "\n".join(lines) + "\n"


def remainder_dump(records: list) -> dict:
    """Full remainders of failing instances, keyed by claim and assignment."""
    out = {}
    for r in records:
        rem = r.get("_remainder")
        if rem is None:
            continue
        key = f"{r['claim']}({', '.join(f'{k}={v}' for k, v in r['assignments'].items())})"
        out[key] = rem
    return out


__all__ = [
    "STATUSES",
    "RunOptions",
    "outcome_status",
    "parse_plan",
    "load_plan",
    "expand_random",
    "parse_set",
    "grid",
    "run_task",
    "run_tasks",
    "make_report",
    "strip_timing",
    "format_text",
    "remainder_dump",
]
