"""Command-line driver: ``fieldred census`` and ``fieldred verify``."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .gf import prime_power
from .reduction import context
from .report import Report, plain
from .suites import SUITES, SuiteRejected, census_report, run_suite

ENV_SAMPLE_COUNT = "FIELDRED_SAMPLE_COUNT"
DEFAULT_SAMPLE_COUNT = 30
WIDTH = 48


def _q(text: str) -> int:
    try:
        q = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"q must be an integer, got {text!r}")
    if q <= 2:
        raise argparse.ArgumentTypeError("q > 2 required")
    try:
        prime_power(q)
    except ValueError:
        raise argparse.ArgumentTypeError(f"q={q} is not a prime power")
    return q


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def _default_sample_count() -> int:
    raw = os.environ.get(ENV_SAMPLE_COUNT)
    if raw is None:
        return DEFAULT_SAMPLE_COUNT
    try:
        return _positive(raw)
    except (ValueError, argparse.ArgumentTypeError):
        raise SystemExit(f"error: {ENV_SAMPLE_COUNT}={raw!r} is not a positive integer")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fieldred",
                                     description="Exact verification of PG(2,q^3) in PG(8,q) field reduction.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--q", type=_q, required=True, help="order of the base field (prime power > 2)")
        p.add_argument("--format", choices=("table", "json"), default="table")
        p.add_argument("--seed", type=int, default=0, help="seed for every sampled check")

    c = sub.add_parser("census", help="compare every table cell with its closed form")
    common(c)
    v = sub.add_parser("verify", help="run a verification suite")
    common(v)
    v.add_argument("--suite", choices=(*SUITES, "all"), default="all")
    v.add_argument("--sample-count", type=_positive, default=None,
                   help=f"containers/witnesses per sampled check (default {DEFAULT_SAMPLE_COUNT}, "
                        f"or ${ENV_SAMPLE_COUNT})")
    return parser


def _short(x) -> str:
    x = plain(x)
    s = x if isinstance(x, str) else json.dumps(x)
    return s if len(s) <= WIDTH else s[:WIDTH - 3] + "..."


def render_table(rep: Report) -> str:
    claims = list(rep)
    w = max((len(c.anchor) for c in claims), default=10)
    lines = [f"{'status':<6}  {'claim':<{w}}  {'expected':<{WIDTH}}  computed"]
    for c in claims:
        status = "PASS" if c.passed else "FAIL"
        lines.append(f"{status:<6}  {c.anchor:<{w}}  {_short(c.expected):<{WIDTH}}  {_short(c.computed)}")
    failed = len(rep.failures())
    lines.append(f"{len(claims)} claims, {failed} failed")
    return "\n".join(lines)


def render_json(q: int, suite: str, rep: Report) -> str:
    return json.dumps({"q": q, "suite": suite, "claims": [c.as_dict() for c in rep]}, indent=1)


def _emit(args, suite: str, rep: Report) -> int:
    out = render_json(args.q, suite, rep) if args.format == "json" else render_table(rep)
    try:
        print(out, flush=True)
    except BrokenPipeError:
        # the reader (e.g. ``head``) went away; keep the interpreter from complaining at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
    return 0 if rep.passed else 1


def cmd_census(args) -> int:
    return _emit(args, "census", census_report(context(args.q), seed=args.seed))


def cmd_verify(args) -> int:
    sample = args.sample_count if args.sample_count is not None else _default_sample_count()
    try:
        rep = run_suite(args.suite, args.q, sample=sample, seed=args.seed)
    except SuiteRejected as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return 2
    return _emit(args, args.suite, rep)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "census":
        return cmd_census(args)
    return cmd_verify(args)


if __name__ == "__main__":
    raise SystemExit(main())
