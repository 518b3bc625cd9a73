"""Command-line front end.

Subcommands: ``discover`` (run the full pipeline on a construction file),
``prove`` / ``check`` (symbolic / numeric verdict for one statement),
``dump-ideal`` (print the polynomial translation), ``serve`` (HTTP API).

Exit codes: 0 success/proved, 1 refuted/false, 2 unknown/halted,
64 usage, 65 malformed input, 66 unreadable file.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from .algebraize import algebraize_construction
from .dsl import parse_dsl, parse_statement
from .engine import DiscoveryConfig, discover, prove_statement
from .errors import (
    DegenerateStepError,
    DslError,
    GeodiscoverError,
    WallTimeExceededError,
)
from .numeric import resample_check

EX_USAGE = 64
EX_DATAERR = 65
EX_NOINPUT = 66


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EX_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="geodiscover", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, timeout=True):
        sp.add_argument("file", help="construction file")
        if timeout:
            sp.add_argument("--timeout", type=float, default=5.0, help="per-check budget in seconds")
        sp.add_argument("--tolerance", type=float, default=1e-8)
        sp.add_argument("--resamples", type=int, default=4)
        sp.add_argument("--seed", type=int, default=0)

    d = sub.add_parser("discover", help="report non-trivial theorems about a point")
    common(d)
    d.add_argument("--target", help="point to investigate (default: the file's discover directive)")
    d.add_argument("--json", action="store_true", help="emit the JSON report")
    d.add_argument("--hide", help="comma-separated points to exclude from enumeration")
    d.add_argument("--no-prune", action="store_true", help="disable registry pruning (brute force)")
    d.add_argument("--no-pin", action="store_true", help="keep all free coordinates as parameters in proofs")
    d.add_argument("--wall-cap", type=float, default=None, help="total wall-time cap in seconds")

    pr = sub.add_parser("prove", help="symbolic verdict for one statement")
    common(pr)
    pr.add_argument("statement", help="e.g. 'parallel:D,E;A,B' or 'equal:G,H'")
    pr.add_argument("--no-pin", action="store_true")

    ch = sub.add_parser("check", help="numeric resample check for one statement")
    common(ch, timeout=False)
    ch.add_argument("statement")

    di = sub.add_parser("dump-ideal", help="print variables and hypothesis polynomials")
    di.add_argument("file")

    sv = sub.add_parser("serve", help="run the HTTP service")
    sv.add_argument("--port", type=int, default=8000)
    sv.add_argument("--host", default="127.0.0.1")
    sv.add_argument("--wall-cap", type=float, default=60.0)
    return p


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        sys.stderr.write(f"error: cannot read {path}: {exc}\n")
        raise SystemExit(EX_NOINPUT)


def _parse_file(path: str):
    try:
        return parse_dsl(_read(path))
    except DslError as exc:
        sys.stderr.write(f"{path}:{exc.line}:{exc.column}: {exc.message}\n")
        raise SystemExit(EX_DATAERR)
    except DegenerateStepError as exc:
        sys.stderr.write(f"{path}: degenerate construction: {exc}\n")
        raise SystemExit(EX_DATAERR)


def cmd_discover(args) -> int:
    prog = _parse_file(args.file)
    target = args.target or (prog.discover_targets[-1] if prog.discover_targets else None)
    if target is None:
        sys.stderr.write("error: no target (pass --target or add a 'discover P' line)\n")
        return EX_USAGE
    construction = prog.construction
    if args.hide:
        construction = construction.with_hidden(
            h.strip() for h in args.hide.split(",") if h.strip()
        )
    config = DiscoveryConfig(
        tolerance=args.tolerance,
        resamples=args.resamples,
        seed=args.seed,
        timeout_s=args.timeout,
        prune=not args.no_prune,
        pin=not args.no_pin,
        wall_cap_s=args.wall_cap,
    )
    try:
        report = discover(construction, target, config)
    except WallTimeExceededError as exc:
        sys.stderr.write(f"wall-time cap exceeded: {exc}\n")
        return 2
    except GeodiscoverError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EX_DATAERR
    out = report.to_json() if args.json else report.to_text()
    sys.stdout.write(out if out.endswith("\n") else out + "\n")
    return 2 if report.halted else 0


def cmd_prove(args) -> int:
    prog = _parse_file(args.file)
    try:
        stmt = parse_statement(args.statement, prog.construction)
    except DslError as exc:
        sys.stderr.write(f"statement: {exc.message}\n")
        return EX_DATAERR
    verdict = prove_statement(
        prog.construction, stmt, budget=args.timeout, seed=args.seed, pin=not args.no_pin
    )
    line = verdict.status
    if verdict.reason:
        line += f" ({verdict.reason})"
    if verdict.certificate:
        line += f": {verdict.certificate}"
    sys.stdout.write(line + "\n")
    if verdict.counterexample:
        sys.stdout.write(f"counterexample: {verdict.counterexample}\n")
    return verdict.exit_code()


def cmd_check(args) -> int:
    prog = _parse_file(args.file)
    try:
        stmt = parse_statement(args.statement, prog.construction)
    except DslError as exc:
        sys.stderr.write(f"statement: {exc.message}\n")
        return EX_DATAERR
    ok = resample_check(
        prog.construction, stmt, k=args.resamples, tol=args.tolerance, seed=args.seed
    )
    sys.stdout.write("holds numerically\n" if ok else "fails numerically\n")
    return 0 if ok else 1


def cmd_dump_ideal(args) -> int:
    prog = _parse_file(args.file)
    translation = algebraize_construction(prog.construction)
    sys.stdout.write(translation.dump())
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(wall_cap_s=args.wall_cap)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "discover": cmd_discover,
        "prove": cmd_prove,
        "check": cmd_check,
        "dump-ideal": cmd_dump_ideal,
        "serve": cmd_serve,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
