"""Command-line front end: ``confalg sim|rollback|converge|report``.

Exit status is 0 on success, 1 on a semantic error and 2 on an I/O or
format error.  Errors are printed to stderr as a single ``CODE: message``
line; everything else goes to stdout.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .engine import DRIFT_STYLES, DriftModel, Trace, lemma_report, rollback, run_sim
from .errors import ConfalgError, FormatError
from .formats import dump_trace, load_journal, load_policy, load_schema, load_trace
from .meadow import ExtendedMarker, as_rational, decode, format_rational
from .policy import converge


def _rate(text: str) -> Fraction:
    try:
        if "." in text:
            return Fraction(text)
        return as_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="confalg", description="Algebraic configuration-change simulator."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("sim", help="simulate a journal under drift and write a trace")
    sim.add_argument("schema")
    sim.add_argument("journal")
    sim.add_argument("--ticks", type=int, required=True)
    sim.add_argument("--drift-rate", type=_rate, default=Fraction(0))
    sim.add_argument("--drift-style", choices=DRIFT_STYLES, default="set-random")
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--out", required=True)

    rb = sub.add_parser("rollback", help="roll a trace back under one remedy")
    rb.add_argument("trace")
    rb.add_argument("--mode", choices=("strict", "meadow", "policy", "snapshot"), default="strict")
    rb.add_argument("--policy")

    cv = sub.add_parser("converge", help="repair a trace's final state with a policy")
    cv.add_argument("trace")
    cv.add_argument("policy")

    rp = sub.add_parser("report", help="compare history and journal lengths")
    rp.add_argument("trace")
    return parser


def format_state(trace: Trace, state) -> str:
    lines = []
    for p, v in zip(trace.schema.params, state):
        raw = decode(p, v)
        if isinstance(raw, ExtendedMarker):
            shown = f"{raw}  (outside the admissible set)"
        elif isinstance(raw, Fraction):
            shown = format_rational(raw)
        else:
            shown = repr(raw) if isinstance(raw, str) else str(raw)
        lines.append(f"  {p.name} = {shown}")
    return "\n".join(lines)


def cmd_sim(args) -> int:
    schema, initial = load_schema(args.schema)
    journal = load_journal(args.journal, schema)
    drift = DriftModel(args.drift_rate, args.seed, args.drift_style)
    trace = run_sim(schema, initial, journal, args.ticks, drift)
    Path(args.out).write_text(dump_trace(trace), encoding="utf-8")
    print(f"wrote {args.out}: {len(trace.journal)} journal entries, "
          f"{trace.transitions} transitions, {trace.drift_count} drift events")
    return 0


def cmd_rollback(args) -> int:
    trace = load_trace(args.trace)
    policy_op = None
    if args.mode == "policy":
        if not args.policy:
            raise FormatError("--policy is required with --mode policy")
        policy_op = load_policy(args.policy, trace.schema).as_op
    elif args.policy:
        raise FormatError("--policy is only used with --mode policy")
    result = rollback(trace, args.mode, policy_op)
    print(f"rollback ({args.mode}):")
    print(format_state(trace, result.state))
    for k, outcome in result.status:
        print(f"  entry {k}: {outcome}")
    print("restored initial state" if result.state == trace.initial
          else "differs from initial state")
    return 0


def cmd_converge(args) -> int:
    trace = load_trace(args.trace)
    policy = load_policy(args.policy, trace.schema)
    report = converge(policy, trace.final)
    print("pre:")
    print(format_state(trace, report.pre))
    print("post:")
    print(format_state(trace, report.post))
    print(report.render(trace.schema.names))
    return 0


def cmd_report(args) -> int:
    print(lemma_report(load_trace(args.trace)).render())
    return 0


COMMANDS = {
    "sim": cmd_sim,
    "rollback": cmd_rollback,
    "converge": cmd_converge,
    "report": cmd_report,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ConfalgError as exc:
        msg = str(exc)
        if getattr(exc, "entry", None) is not None and "entry" not in msg:
            msg = f"journal entry {exc.entry}: {msg}"
        print(f"{exc.code}: {msg}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"IO_ERROR: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
