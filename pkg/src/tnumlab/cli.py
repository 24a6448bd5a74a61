"""Command-line front end.

Subcommands: eval (one operator application), verify (soundness or
optimality sweeps), precision (pairwise operator comparison), bench
(operator timing), fixtures (random input/output records for external
harnesses).

Exit codes: 0 success, 1 verification/property failure, 2 usage or parse
error.  Randomized subcommands echo their seed; rerunning with it
reproduces outputs byte for byte (timing values exempt).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import bench as bench_mod
from . import precision as precision_mod
from . import verify as verify_mod
from .core import (
    BitsAboveWidth, IllFormed, ParseError, Tnum, TnumError, WidthRange,
    WidthTooLargeForEnumeration, format, format_hex, parse,
)
from .ops import OpId, apply_op

_ALL_OPS = [o.value for o in OpId]


def _tnum_dict(t: Tnum) -> dict:
    return {"v": f"{t.value:#x}", "m": f"{t.mask:#x}"}


def _parse_tnum(text: str, width: int) -> Tnum:
    return parse(text, width)


def _op_arg(name: str) -> OpId:
    try:
        return OpId.from_name(name)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="tnumlab",
        description="tristate-number operators, verification sweeps, "
                    "precision comparison, and benchmarks")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="apply one operator to parsed operands")
    p.add_argument("--op", type=_op_arg, required=True)
    p.add_argument("--width", type=int, required=True)
    p.add_argument("--p", required=True, metavar="TNUM")
    p.add_argument("--q", metavar="TNUM")
    p.add_argument("--shift", type=int)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("verify", help="soundness/optimality sweeps")
    p.add_argument("--op", default="all",
                   help="operator name or 'all' (default)")
    p.add_argument("--width", type=int, required=True)
    p.add_argument("--mode", choices=("exhaustive", "sample"),
                   default="exhaustive")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--check", choices=("soundness", "optimality"),
                   default="soundness")
    p.add_argument("--out", help="write the JSON report here instead of stdout")

    p = sub.add_parser("precision", help="compare two operators exhaustively")
    p.add_argument("--a", type=_op_arg, required=True)
    p.add_argument("--b", type=_op_arg, required=True)
    p.add_argument("--width", type=int)
    p.add_argument("--bitwidths", metavar="LO..HI",
                   help="sweep a range of widths and emit one row per width")
    p.add_argument("--long", action="store_true",
                   help="allow slow widths 9..10")
    p.add_argument("--out", help="CSV output path")
    p.add_argument("--json", dest="json_out", help="JSON output path")

    p = sub.add_parser("bench", help="time operators on random 64-bit pairs")
    p.add_argument("--ops", required=True,
                   help="comma-separated operator names")
    p.add_argument("--pairs", type=int, default=4_000_000)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--sampler", choices=bench_mod.SAMPLERS,
                   default="per_trit_uniform")
    p.add_argument("--pin", type=int, help="processor index hint")
    p.add_argument("--backend", choices=("auto", "c", "py"), default="auto")
    p.add_argument("--out", help="per-pair CSV output path")
    p.add_argument("--json", dest="json_out", help="JSON summary path")

    p = sub.add_parser("fixtures",
                       help="emit random input/output records as JSON")
    p.add_argument("--op", type=_op_arg, required=True)
    p.add_argument("--width", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    return top


def _cmd_eval(args) -> int:
    if args.op.is_shift:
        if args.shift is None:
            print("eval: shift operators need --shift", file=sys.stderr)
            return 2
        p = _parse_tnum(args.p, args.width)
        result = apply_op(args.op, p, shift=args.shift)
        q = None
    else:
        if args.q is None:
            print(f"eval: {args.op.value} needs --q", file=sys.stderr)
            return 2
        p = _parse_tnum(args.p, args.width)
        q = _parse_tnum(args.q, args.width)
        result = apply_op(args.op, p, q)
    if args.format == "json":
        record = {
            "op": args.op.value, "width": args.width,
            "p": _tnum_dict(p),
            "q": _tnum_dict(q) if q is not None else {"v": "0x0", "m": "0x0"},
            "shift": args.shift if args.op.is_shift else None,
            "r": _tnum_dict(result),
        }
        print(json.dumps(record))
    elif "=" in args.p:
        print(format_hex(result))
    else:
        print(format(result))
    return 0


def _cmd_verify(args) -> int:
    if args.op == "all":
        ops = list(OpId)
    else:
        ops = [OpId.from_name(args.op)]
    reports = []
    failed = False
    for op in ops:
        if args.check == "optimality":
            report = verify_mod.check_optimality(op, args.width)
            failed |= report.unsound_pairs > 0
        elif args.mode == "exhaustive":
            report = verify_mod.check_soundness(op, args.width)
            failed |= not report.ok
        else:
            report = verify_mod.check_soundness(
                op, args.width, mode="sampled", samples=args.samples,
                seed=args.seed)
            failed |= not report.ok
        reports.append(report.to_dict())
    payload = {"seed": args.seed if args.mode == "sample" else None,
               "reports": reports}
    text = json.dumps(payload, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 1 if failed else 0


def _parse_width_range(spec: str) -> list[int]:
    lo, sep, hi = spec.partition("..")
    if not sep:
        raise argparse.ArgumentTypeError(
            f"expected LO..HI width range, got {spec!r}")
    lo_i, hi_i = int(lo), int(hi)
    if lo_i < 1 or hi_i < lo_i:
        raise argparse.ArgumentTypeError(f"bad width range {spec!r}")
    return list(range(lo_i, hi_i + 1))


def _cmd_precision(args) -> int:
    if args.bitwidths:
        try:
            widths = _parse_width_range(args.bitwidths)
        except argparse.ArgumentTypeError as exc:
            print(f"precision: {exc}", file=sys.stderr)
            return 2
        rows = precision_mod.sweep_bitwidths(args.a, args.b, widths,
                                             long_running=args.long)
        if args.out:
            with open(args.out, "w", newline="") as fh:
                precision_mod.write_bitwidth_csv(rows, fh)
        else:
            precision_mod.write_bitwidth_csv(rows, sys.stdout)
        if args.json_out:
            with open(args.json_out, "w") as fh:
                json.dump([r.to_dict() for r in rows], fh, indent=2)
        return 0
    if args.width is None:
        print("precision: --width or --bitwidths is required", file=sys.stderr)
        return 2
    summary = precision_mod.sweep_exhaustive(args.a, args.b, args.width,
                                             long_running=args.long)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            precision_mod.write_summary_csv(summary, fh)
    else:
        precision_mod.write_summary_csv(summary, sys.stdout)
    if args.json_out:
        with open(args.json_out, "w") as fh:
            json.dump(summary.to_dict(), fh, indent=2)
    print(f"equal fraction: {summary.equal_fraction:.6f} "
          f"(distinct-inputs: {summary.equal_fraction_distinct_inputs():.6f})",
          file=sys.stderr)
    return 0


def _cmd_bench(args) -> int:
    try:
        ops = [OpId.from_name(name) for name in args.ops.split(",") if name]
    except ValueError as exc:
        print(f"bench: {exc}", file=sys.stderr)
        return 2
    if not ops:
        print("bench: --ops must name at least one operator", file=sys.stderr)
        return 2
    cfg = bench_mod.BenchConfig(
        ops=ops, n_pairs=args.pairs, trials=args.trials, seed=args.seed,
        sampler=args.sampler, pin_hint=args.pin,
        backend=None if args.backend == "auto" else args.backend)
    try:
        cfg.validate()
    except ValueError as exc:
        print(f"bench: {exc}", file=sys.stderr)
        return 2
    try:
        report = bench_mod.run_bench(cfg)
    except TnumError as exc:
        print(f"bench: {exc}", file=sys.stderr)
        return 1
    print(f"seed: {args.seed}")
    print(f"input_checksum: {report.input_checksum:#x}")
    print(f"backend: {report.backend} timer: {report.timer_name} "
          f"unit: {report.timer_unit} resolution: {report.timer_resolution}")
    for name, res in report.results.items():
        print(f"{name}: mean={res.mean:.1f} {report.timer_unit} "
              f"p50={res.percentiles['p50']:.0f} "
              f"p99={res.percentiles['p99']:.0f} "
              f"checksum={res.checksum:#x} audit_ok={res.audit_ok}")
    if args.out:
        bench_mod.write_csv(report, args.out)
    if args.json_out:
        with open(args.json_out, "w") as fh:
            json.dump(report.to_dict(), fh, indent=2)
    return 0


def _cmd_fixtures(args) -> int:
    if args.count < 0:
        print("fixtures: --count must be >= 0", file=sys.stderr)
        return 2
    records = []
    if args.count:
        pv, pm, qv, qm = bench_mod.generate_pairs(args.width, args.count,
                                                  args.seed)
        ks = (qv % np.uint64(args.width + 1)).astype(np.uint64)
        for i in range(args.count):
            p = Tnum(int(pv[i]), int(pm[i]), args.width)
            if args.op.is_shift:
                k = int(ks[i])
                r = apply_op(args.op, p, shift=k)
                q_dict = {"v": "0x0", "m": "0x0"}
                shift = k
            else:
                q = Tnum(int(qv[i]), int(qm[i]), args.width)
                r = apply_op(args.op, p, q)
                q_dict = _tnum_dict(q)
                shift = None
            records.append({
                "op": args.op.value, "width": args.width,
                "p": _tnum_dict(p), "q": q_dict, "shift": shift,
                "r": _tnum_dict(r),
            })
    with open(args.out, "w") as fh:
        json.dump(records, fh, indent=1)
        fh.write("\n")
    print(f"seed: {args.seed}")
    print(f"wrote {len(records)} records to {args.out}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handler = {
        "eval": _cmd_eval,
        "verify": _cmd_verify,
        "precision": _cmd_precision,
        "bench": _cmd_bench,
        "fixtures": _cmd_fixtures,
    }[args.command]
    try:
        return handler(args)
    except (ParseError, IllFormed, BitsAboveWidth, WidthRange,
            WidthTooLargeForEnumeration) as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return 2
    except TnumError as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
