"""Command-line interface.

Subcommands:
  simulate            Monte Carlo BLER over schedules / codes / Eb/N0 grid
  dump-patterns       write a schedule prefix in the pattern text format
  verify-schedule     check a pattern file for duplicates / order violations
  empirical-schedule  rank observed error patterns at one Eb/N0

Exit codes: 0 success (and, for verify-schedule, a compliant file),
1 verify-schedule found violations, 2 configuration or I/O errors.
"""

from __future__ import annotations

import argparse
import sys

from .sim import (
    ScheduleSpec,
    SimConfig,
    dump_patterns,
    estimate_empirical_schedule,
    results_to_csv,
    run_bler,
    verify_schedule,
)
from .patterns import write_pattern_file


def _parse_ebn0(text):
    """'a:step:b' (inclusive) or comma-separated dB values."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"expected start:step:stop, got {text!r}")
        start, step, stop = (float(p) for p in parts)
        if step <= 0:
            raise ValueError("step must be positive")
        values = []
        v = start
        while v <= stop + 1e-9:
            values.append(round(v, 10))
            v += step
        return tuple(values)
    return tuple(float(tok) for tok in text.split(","))


def _parse_hmax(tok):
    return None if tok.lower() in ("none", "") else int(tok)


def _broadcast(values, count, what):
    if len(values) == 1:
        return list(values) * count
    if len(values) != count:
        raise ValueError(f"{what} must have 1 or {count} comma-separated entries")
    return list(values)


def _build_sim_config(args):
    kinds = args.schedule.split(",")
    qmaxes = _broadcast([int(t) for t in args.qmax.split(",")], len(kinds), "--qmax")
    hmaxes = _broadcast([_parse_hmax(t) for t in args.hmax.split(",")], len(kinds), "--hmax")
    schedules = tuple(
        ScheduleSpec(kind=k, q_max=q, h_max=h, pattern_file=args.pattern_file)
        for k, q, h in zip(kinds, qmaxes, hmaxes)
    )
    return SimConfig(
        code=args.code,
        schedules=schedules,
        ebn0_list=_parse_ebn0(args.ebn0),
        min_block_errors=args.min_errors,
        max_blocks=args.max_blocks,
        seed=args.seed,
        workers=args.workers,
        paired=args.paired,
        batch_size=args.batch_size,
    )


def _cmd_simulate(args):
    cfg = _build_sim_config(args)
    run = run_bler(cfg)
    for r in run.results:
        print(
            f"[{r.schedule} q={r.qmax} hmax={'none' if r.hmax is None else r.hmax}] "
            f"ebn0={r.ebn0_db:g} dB bler={r.bler:.3e} "
            f"({r.block_errors}/{r.blocks}, {r.wall_seconds:.1f}s, {r.stop_reason})",
            file=sys.stderr,
        )
    csv_text = results_to_csv(run.results)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(csv_text)
    else:
        sys.stdout.write(csv_text)
    return 0


def _cmd_dump(args):
    patterns = dump_patterns(
        args.schedule,
        args.n,
        args.q,
        h_max=_parse_hmax(args.hmax),
        pattern_file=args.pattern_file,
    )
    if args.out:
        write_pattern_file(patterns, args.out)
    else:
        write_pattern_file(patterns, sys.stdout)
    return 0


def _cmd_verify(args):
    report = verify_schedule(args.pattern_file, args.n)
    print(report.summary())
    return 0 if report.ok else 1


def _cmd_empirical(args):
    patterns = estimate_empirical_schedule(
        args.code, args.ebn0, args.blocks, args.q_out, seed=args.seed
    )
    if args.out:
        write_pattern_file(patterns, args.out)
    else:
        write_pattern_file(patterns, sys.stdout)
    print(f"{len(patterns)} patterns from {args.blocks} blocks", file=sys.stderr)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="orbgrand", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="Monte Carlo BLER estimation")
    sim.add_argument("--code", default="bch127", help="bch127 | polar128 | config path")
    sim.add_argument("--schedule", default="lwo", help="comma list of lwo|ilwo|ilwo-approx|file")
    sim.add_argument("--ebn0", default="7.0", help="dB grid: 'a:step:b' or comma list")
    sim.add_argument("--qmax", default="1000", help="query budget per arm (comma list)")
    sim.add_argument("--hmax", default="none", help="Hamming-weight cap per arm (comma list)")
    sim.add_argument("--min-errors", type=int, default=100, dest="min_errors")
    sim.add_argument("--max-blocks", type=int, default=10**6, dest="max_blocks")
    sim.add_argument("--seed", type=int, default=1)
    sim.add_argument("--workers", type=int, default=1)
    sim.add_argument("--paired", action="store_true", help="decode all arms on shared blocks")
    sim.add_argument("--pattern-file", default=None, dest="pattern_file")
    sim.add_argument("--batch-size", type=int, default=4096, dest="batch_size")
    sim.add_argument("--out", default=None, help="CSV output path (default stdout)")
    sim.set_defaults(func=_cmd_simulate)

    dump = sub.add_parser("dump-patterns", help="write a schedule prefix")
    dump.add_argument("--schedule", required=True, help="lwo | ilwo | ilwo-approx | file")
    dump.add_argument("--n", type=int, required=True)
    dump.add_argument("--q", type=int, required=True)
    dump.add_argument("--hmax", default="none")
    dump.add_argument("--pattern-file", default=None, dest="pattern_file")
    dump.add_argument("--out", default=None)
    dump.set_defaults(func=_cmd_dump)

    ver = sub.add_parser("verify-schedule", help="check duplicates and UPO order")
    ver.add_argument("--pattern-file", required=True, dest="pattern_file")
    ver.add_argument("--n", type=int, required=True)
    ver.set_defaults(func=_cmd_verify)

    emp = sub.add_parser("empirical-schedule", help="rank observed error patterns")
    emp.add_argument("--code", default="bch127")
    emp.add_argument("--ebn0", type=float, required=True)
    emp.add_argument("--blocks", type=int, default=100_000)
    emp.add_argument("--q-out", type=int, default=35, dest="q_out")
    emp.add_argument("--seed", type=int, default=1)
    emp.add_argument("--out", default=None)
    emp.set_defaults(func=_cmd_empirical)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
