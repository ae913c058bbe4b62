"""
Command-line front end.

    eigenbound verify [--tol NAME=VALUE ...] [--seed N]
    eigenbound bound  --n N --k K --dtilde D
    eigenbound sweep  --n A..B --k K --r A..B --steps S --out FILE [--jobs J]
    eigenbound oracle --n N --k K --r R

Every subcommand accepts --format {text,json,csv} (or --json). Exit status
is 0 on success, 1 when a mathematical check fails and 2 for usage or
validation errors.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone
from typing import Sequence

import numpy as np

from . import __version__
from .bounds import GeometryInput, bound_report
from .errors import DomainError, EigenboundError
from .oracle import CapProblem, SweepRow, cap_eigenvalue, sweep_row
from .verify import default_tolerances, run_checks

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

SEED_ENV = "EIGENBOUND_SEED"
BOUND_COLUMNS = ("n", "K", "d_tilde", "reilly", "ling", "refined", "implicit", "best", "ratio")
SWEEP_COLUMNS = (
    "n", "K", "R", "d_tilde", "lambda_true", "reilly", "ling", "refined",
    "implicit", "best", "gap_best", "ratio", "error",
)
CHECK_COLUMNS = ("name", "paper_anchor", "lhs", "rhs", "abs_discrepancy", "tolerance", "pass", "error")
ORACLE_COLUMNS = ("lambda", "residual", "bisection_iterations", "ode_steps")


class UsageError(Exception):
    pass


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g") if math.isfinite(value) else ""
    return str(value)


def _csv_text(columns: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue()


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _manifest(seed: int | None, config: dict) -> dict:
    blob = json.dumps({"version": __version__, "seed": seed, "config": config}, sort_keys=True)
    return {
        "tool_version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds").replace("+00:00", "Z"),
        "seed": seed,
        "config_digest": hashlib.sha256(blob.encode()).hexdigest(),
    }


def _text_block(pairs: dict) -> str:
    width = max(len(k) for k in pairs)
    lines = []
    for key, value in pairs.items():
        shown = "-" if value is None else (repr(value) if isinstance(value, float) else str(value))
        lines.append(f"{key.ljust(width)}  {shown}")
    return "\n".join(lines) + "\n"


def _resolve_seed(flag: int | None) -> int:
    if flag is not None:
        return flag
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw.strip() == "":
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer; got {raw!r}") from None


def _parse_tol(text: str) -> tuple[str, float]:
    name, sep, value = text.partition("=")
    if not sep or not name.strip():
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE, got {text!r}")
    try:
        tol = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"tolerance for {name} is not a number: {value!r}") from None
    return name.strip(), tol


def parse_int_range(text: str) -> list[int]:
    """'a..b' (inclusive) or a single integer."""
    lo, sep, hi = text.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise UsageError(f"bad integer range {text!r}; expected a..b") from None
    if b < a:
        raise UsageError(f"empty range {text!r}")
    return list(range(a, b + 1))


def parse_real_range(text: str, steps: int) -> list[float]:
    """'a..b' subdivided into ``steps`` uniformly spaced points, or a single value."""
    lo, sep, hi = text.partition("..")
    try:
        a = float(lo)
        b = float(hi) if sep else a
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected a..b") from None
    if not (math.isfinite(a) and math.isfinite(b)) or b < a:
        raise UsageError(f"empty or non-finite range {text!r}")
    if steps < 1:
        raise UsageError("--steps must be at least 1")
    if a == b:
        return [a]
    if steps == 1:
        raise UsageError("a range a..b with a < b needs --steps >= 2")
    return [float(x) for x in np.linspace(a, b, steps)]


def _emit(text: str) -> None:
    sys.stdout.write(text)


def cmd_verify(args) -> int:
    seed = _resolve_seed(args.seed)
    overrides = dict(args.tol or [])
    try:
        records = run_checks(overrides, seed=seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    failed = [r for r in records if not r.passed]
    if args.format == "json":
        tolerances = {**default_tolerances(), **overrides}
        doc = {"manifest": _manifest(seed, {"command": "verify", "tolerances": tolerances}),
               "checks": [r.to_dict() for r in records]}
        _emit(_json_text(doc))
    elif args.format == "csv":
        rows = [[r.name, r.paper_anchor, r.lhs, r.rhs, r.abs_discrepancy, r.tolerance, r.passed, r.error]
                for r in records]
        _emit(_csv_text(CHECK_COLUMNS, rows))
    else:
        for r in records:
            _emit(r.summary() + "\n")
        _emit(f"{len(records) - len(failed)}/{len(records)} checks passed\n")
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def cmd_bound(args) -> int:
    try:
        g = GeometryInput(args.n, args.k, args.dtilde)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    rep = bound_report(g)
    if args.format == "json":
        doc = {**rep.to_dict(), "manifest": _manifest(None, {"command": "bound", "n": g.n, "K": g.K, "d_tilde": g.d_tilde})}
        _emit(_json_text(doc))
    elif args.format == "csv":
        row = [rep.n, rep.K, rep.d_tilde, rep.reilly, rep.ling, rep.refined, rep.implicit, rep.best,
               rep.ratio_refined_over_ling]
        _emit(_csv_text(BOUND_COLUMNS, [row]))
    else:
        _emit(_text_block(rep.to_dict()))
    return EXIT_OK


def cmd_oracle(args) -> int:
    try:
        p = CapProblem(args.n, args.k, args.r)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    try:
        res = cap_eigenvalue(p)
    except EigenboundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    fields = res.to_dict()
    if args.format == "json":
        doc = {**fields, "manifest": _manifest(None, {"command": "oracle", "n": p.n, "K": p.K, "R": p.R})}
        _emit(_json_text(doc))
    elif args.format == "csv":
        _emit(_csv_text(ORACLE_COLUMNS, [[fields[c] for c in ORACLE_COLUMNS]]))
    else:
        _emit(_text_block(fields))
    return EXIT_OK


def _row_values(row: SweepRow) -> list:
    return [getattr(row, c) for c in SWEEP_COLUMNS]


def _star_sweep_row(task: tuple[int, float, float]) -> SweepRow:
    return sweep_row(*task)


def cmd_sweep(args) -> int:
    ns = parse_int_range(args.n)
    radii = parse_real_range(args.r, args.steps)
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    if not (math.isfinite(args.k) and args.k > 0.0):
        raise UsageError(f"K > 0 required; got K = {args.k!r}")
    try:
        for n in ns:
            for R in radii:
                CapProblem(n, args.k, R)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    try:
        out = sys.stdout if args.out == "-" else open(args.out, "w", encoding="utf-8", newline="")
    except OSError as exc:
        raise UsageError(f"cannot write {args.out}: {exc}") from None

    tasks = [(n, args.k, R) for n in ns for R in radii]
    if args.jobs == 1:
        rows = [_star_sweep_row(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_star_sweep_row, tasks))  # map keeps grid order

    failed = [r for r in rows if r.error is not None]
    unsound = [r for r in rows if r.error is None and not r.sound]
    text = _csv_text(SWEEP_COLUMNS, [_row_values(r) for r in rows])
    try:
        out.write(text)
    finally:
        if out is not sys.stdout:
            out.close()

    for r in unsound:
        print(f"unsound row: n={r.n} K={r.K!r} R={r.R!r} gap_best={r.gap_best!r}", file=sys.stderr)
    for r in failed:
        print(f"failed row: n={r.n} K={r.K!r} R={r.R!r}: {r.error}", file=sys.stderr)
    if args.out != "-":
        summary = {"rows": len(rows), "failed": len(failed), "unsound": len(unsound), "out": args.out}
        if args.format == "json":
            config = {"command": "sweep", "n": ns, "K": args.k, "R": radii}
            _emit(_json_text({**summary, "manifest": _manifest(None, config)}))
        else:
            _emit(_text_block(summary))
    return EXIT_CHECK_FAILED if failed or unsound else EXIT_OK


def _format_options(suppress: bool) -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    default = argparse.SUPPRESS if suppress else "text"
    parent.add_argument("--format", choices=("text", "json", "csv"), default=default, help="output format")
    parent.add_argument("--json", dest="format", action="store_const", const="json", default=default,
                        help="shorthand for --format json")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eigenbound",
        description="Variance-refined lower bounds for the first Dirichlet eigenvalue, and their verification.",
        parents=[_format_options(suppress=False)],
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = _format_options(suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="run the identity and inequality ledger")
    p.add_argument("--tol", action="append", type=_parse_tol, metavar="NAME=VALUE",
                   help="override the tolerance of one check group (repeatable)")
    p.add_argument("--seed", type=int, default=None, help=f"seed for randomized checks (default: ${SEED_ENV} or 0)")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("bound", parents=[common], help="all lower bounds for one geometry")
    p.add_argument("--n", type=int, required=True, help="dimension")
    p.add_argument("--k", type=float, required=True, help="Ricci lower bound constant K >= 0")
    p.add_argument("--dtilde", type=float, required=True, help="in-diameter")
    p.set_defaults(handler=cmd_bound)

    p = sub.add_parser("sweep", parents=[common], help="bounds against the cap oracle over a grid")
    p.add_argument("--n", required=True, help="dimension or integer range a..b")
    p.add_argument("--k", type=float, required=True, help="curvature K > 0")
    p.add_argument("--r", required=True, help="cap radius or range a..b")
    p.add_argument("--steps", type=int, default=5, help="points in the radius range (default 5)")
    p.add_argument("--out", required=True, help="CSV output path, or - for stdout")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser("oracle", parents=[common], help="first eigenvalue of a geodesic cap")
    p.add_argument("--n", type=int, required=True, help="dimension")
    p.add_argument("--k", type=float, required=True, help="curvature K > 0")
    p.add_argument("--r", type=float, required=True, help="cap radius, at most pi/(2 sqrt K)")
    p.set_defaults(handler=cmd_oracle)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"eigenbound {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
