"""Command line entry point: ``particle-access <command> ...``.

Exit codes: 0 success, 1 validation error or failed check, 2 deadline misses
during ``run``.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import admission, bandwidth, oracle, scheduler, traceio
from .errors import ParticleAccessError
from .granulate import granulate
from .particle import to_rational


def _fmt(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x)
    return f"{x} (~{traceio.approx(x):.15g})"


def _write(text: str, path) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_run(args) -> int:
    events = traceio.load_trace(args.trace)
    timeline = scheduler.run(events, policy=args.policy, capacity=args.capacity)
    _write(traceio.emit_report(timeline, args.format), args.out)
    return 2 if timeline.miss_count else 0


def cmd_bmin(args) -> int:
    group = traceio.snapshot(traceio.load_trace(args.trace), args.at)
    result = bandwidth.analyze(group)
    print(f"particles: {' '.join(map(str, group.ids))}")
    print(f"prefix_averages: {' '.join(str(a) for a in result.prefix_averages)}")
    print(f"b_min: {_fmt(result.b_min)}")
    print(f"principal_prefixes: {' '.join(map(str, result.principal_prefixes))}")
    print(f"inflection: {result.inflection} ({group[result.inflection - 1].id})")
    print(f"alpha: {'-' if result.alpha is None else _fmt(result.alpha)}")
    return 0


def cmd_oracle_check(args) -> int:
    ok = True
    if args.trace:
        group = traceio.snapshot(traceio.load_trace(args.trace), 0)
        tally = oracle.CheckTally()
        oracle.check_group(group, tally)
        print(f"trace snapshot: {'PASS' if tally.ok else 'FAIL'} (N={len(group)})")
        ok = tally.ok
    if args.trials:
        tally = oracle.random_check(args.trials, args.max_n, args.seed)
        print(
            f"random groups: {tally.trials} trials, N<= {args.max_n}, seed {args.seed}: "
            f"peak mismatches {tally.peak_mismatch}, edf mismatches {tally.edf_mismatch}, "
            f"monotonicity violations {tally.probe_violations} -> {'PASS' if tally.ok else 'FAIL'}"
        )
        ok = ok and tally.ok
    return 0 if ok else 1


def cmd_admit(args) -> int:
    group = traceio.snapshot(traceio.load_trace(args.trace), 0)
    if args.new_bits is not None:
        result = admission.min_feasible_deadline(group, args.new_bits, args.budget)
        print(f"min_deadline: {_fmt(result.admitted_value)}")
    else:
        result = admission.max_feasible_bits(group, args.new_deadline, args.budget)
        print(f"max_bits: {_fmt(result.admitted_value)}")
    print(f"resulting_b_min: {_fmt(result.resulting_b_min)}")
    return 0


def cmd_granulate(args) -> int:
    events = [ev for flow in traceio.load_flows(args.flow) for ev in granulate(flow)]
    events.sort(key=lambda ev: ev.arrival_time)
    _write(traceio.dump_trace(events), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="particle-access", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="simulate a trace with dynamic bandwidth adjustment")
    p.add_argument("--trace", required=True)
    p.add_argument("--policy", choices=[x.value for x in scheduler.Policy], default="drop")
    p.add_argument("--capacity", type=to_rational, default=None, help="link rate cap in bit/s")
    p.add_argument("--out", default="-")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("bmin", help="minimum bandwidth analysis of a trace snapshot")
    p.add_argument("--trace", required=True)
    p.add_argument("--at", type=to_rational, default=Fraction(0))
    p.set_defaults(func=cmd_bmin)

    p = sub.add_parser("oracle-check", help="cross-check formulas against brute force")
    p.add_argument("--trace")
    p.add_argument("--max-n", type=int, default=12)
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("admit", help="fit a new particle under a bandwidth budget")
    p.add_argument("--trace", required=True)
    p.add_argument("--budget", type=to_rational, required=True)
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--new-bits", type=to_rational)
    which.add_argument("--new-deadline", type=to_rational)
    p.set_defaults(func=cmd_admit)

    p = sub.add_parser("granulate", help="cut flows into a particle trace")
    p.add_argument("--flow", required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_granulate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParticleAccessError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
