"""Command-line front end.

Three subcommands: ``measure`` (one state, all measures, optionally the
brute-force cross-check), ``evolve`` (a trajectory under one channel),
and ``sweep`` (the Monte-Carlo audits, writing datasets, a JSON report,
and figures).  All numeric output carries 17 significant digits; sweep
byte-determinism is guaranteed for a fixed seed via ``--no-timing``,
independent of ``--workers``.

Exit codes: 0 success, 2 input error, 3 I/O error, 4 inequality
violation found.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

from .channels import ChannelKind, ChannelSpec, decoherence_schedule, evolve_c
from .dynamics import MEASURE_IDS
from .experiments import (
    hierarchy_sweep,
    invariance_scan,
    sudden_death_sweep,
    write_datasets,
)
from .measures import MeasureRecord, all_measures
from .oracle import (
    chsh_max_oracle,
    concurrence_oracle,
    q_discord_oracle,
    steering_F_oracle,
    steering_G_oracle,
)
from .states import CVector, NonphysicalStateError, density_matrix, fmt17

_SQRT2 = math.sqrt(2.0)
_SQRT3 = math.sqrt(3.0)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_IO = 3
EXIT_VIOLATION = 4


def _q_or_random(text: str):
    if text == "random":
        return None
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected a number or 'random', got {text!r}"
        ) from None


def _default_outdir() -> str:
    return os.environ.get("XQCORR_OUTDIR", "xqcorr-out")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xqcorr",
        description="Quantum-correlation measures of two-qubit X states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_measure = sub.add_parser("measure", help="all measures of one state")
    p_measure.add_argument("--c", required=True, metavar="C1,C2,C3")
    p_measure.add_argument("--q", type=float, default=1.0)
    p_measure.add_argument(
        "--oracle", action="store_true", help="also run the brute-force references"
    )
    p_measure.add_argument("--format", choices=("csv", "json"), default="csv")
    p_measure.set_defaults(func=_cmd_measure)

    p_evolve = sub.add_parser("evolve", help="trajectory under one channel")
    p_evolve.add_argument("--c", default="1,1,-1", metavar="C1,C2,C3")
    p_evolve.add_argument(
        "--channel", required=True, choices=[k.value for k in ChannelKind]
    )
    span = p_evolve.add_mutually_exclusive_group(required=True)
    span.add_argument("--t", type=float, help="final time; grid starts at 0")
    span.add_argument("--p", type=float, help="final channel parameter; grid starts at 0")
    p_evolve.add_argument("--steps", type=int, default=100, help="grid intervals")
    p_evolve.add_argument("--q", type=float, default=1.0)
    p_evolve.add_argument("--out", default=None, help="also write CSV and figure here")
    p_evolve.add_argument("--no-plots", action="store_true")
    p_evolve.set_defaults(func=_cmd_evolve)

    p_sweep = sub.add_parser("sweep", help="Monte-Carlo audits")
    mode = p_sweep.add_subparsers(dest="mode", required=True)

    def common(sp, default_n: int) -> None:
        sp.add_argument("--n", type=int, default=default_n)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--workers", type=int, default=os.cpu_count() or 1)
        sp.add_argument("--out", default=None, help="output directory (default: $XQCORR_OUTDIR or ./xqcorr-out)")
        sp.add_argument("--no-timing", action="store_true", help="omit elapsed_s from the report")
        sp.add_argument("--no-plots", action="store_true")

    sp = mode.add_parser("hierarchy", help="measure-vs-measure inequality audit")
    common(sp, 100_000)
    sp.add_argument(
        "--q",
        type=_q_or_random,
        default=None,
        help="fixed q >= 1, or 'random' for uniform on [1,4] (default)",
    )
    sp.set_defaults(func=_cmd_sweep_hierarchy)

    sp = mode.add_parser("invariance", help="local-rotation invariance scan")
    common(sp, 100_000)
    sp.add_argument("--q", type=float, default=1.0)
    sp.set_defaults(func=_cmd_sweep_invariance)

    sp = mode.add_parser("sudden-death", help="death-time chronology sweep")
    common(sp, 10_000)
    sp.add_argument("--channel", choices=[k.value for k in ChannelKind], default="pf")
    sp.add_argument("--q", type=float, default=1.0)
    sp.set_defaults(func=_cmd_sweep_sudden_death)

    return parser


def _record_json(record: MeasureRecord) -> dict:
    names = MeasureRecord.CSV_HEADER.split(",")
    return dict(zip(names, (float(v) for v in record.values())))


def _oracle_values(c: CVector, q: float) -> dict[str, float]:
    rho = density_matrix(c)
    pairs = ((1, 2), (1, 3), (2, 3))
    f2 = max(steering_F_oracle(rho, a) for a in pairs)
    f3 = steering_F_oracle(rho, (1, 2, 3))
    g2 = min(steering_G_oracle(rho, a) for a in pairs)
    g3 = steering_G_oracle(rho, (1, 2, 3))
    b_max = chsh_max_oracle(rho)
    return {
        "Dq": q_discord_oracle(rho, q),
        "E": concurrence_oracle(rho),
        "S2v": max(0.0, (f2 - _SQRT2) / (2.0 - _SQRT2)),
        "S3v": max(0.0, (f3 - _SQRT3) / (3.0 - _SQRT3)),
        "S2e": max(0.0, 1.0 - g2),
        "S3e": max(0.0, 1.0 - g3 / 2.0),
        "N": math.sqrt(max(0.0, b_max * b_max / 4.0 - 1.0)),
    }


def _cmd_measure(args) -> int:
    c = CVector.from_csv(args.c)
    record = all_measures(c, args.q)
    closed = {m: getattr(record, f) for m, f in _RECORD_FIELDS}
    oracle = _oracle_values(c, args.q) if args.oracle else None

    if args.format == "json":
        import json

        body: dict = _record_json(record)
        if oracle is not None:
            body["oracle"] = {k: float(v) for k, v in oracle.items()}
            body["delta"] = {k: float(oracle[k] - closed[k]) for k in oracle}
        print(json.dumps(body, sort_keys=True, indent=2))
        return EXIT_OK

    print(MeasureRecord.CSV_HEADER)
    print(record.csv_row())
    if oracle is not None:
        print("measure,closed,oracle,delta")
        for m, _ in _RECORD_FIELDS:
            print(
                f"{m},{fmt17(closed[m])},{fmt17(oracle[m])},"
                f"{fmt17(oracle[m] - closed[m])}"
            )
    return EXIT_OK


_RECORD_FIELDS = (
    ("Dq", "d_q"),
    ("E", "e"),
    ("S2v", "s2v"),
    ("S3v", "s3v"),
    ("S2e", "s2e"),
    ("S3e", "s3e"),
    ("N", "n_bell"),
)


def _cmd_evolve(args) -> int:
    c = CVector.from_csv(args.c)
    kind = ChannelKind(args.channel)
    if args.steps < 1:
        raise ValueError(f"--steps must be >= 1, got {args.steps}")

    if args.t is not None:
        if args.t < 0.0:
            raise ValueError(f"--t must be >= 0, got {args.t}")
        ts = [args.t * i / args.steps for i in range(args.steps + 1)] if args.t > 0 else [0.0]
        points = [(t, decoherence_schedule(t)) for t in ts]
    else:
        if not 0.0 <= args.p <= 1.0:
            raise ValueError(f"--p must be in [0, 1], got {args.p}")
        ps = [args.p * i / args.steps for i in range(args.steps + 1)] if args.p > 0 else [0.0]
        # invert the schedule so both columns are always present
        points = [
            (-2.0 * math.log1p(-p) if p < 1.0 else math.inf, p) for p in ps
        ]

    lines = ["t,p," + MeasureRecord.CSV_HEADER]
    for t, p in points:
        ct = evolve_c(c, ChannelSpec(kind, p))
        record = all_measures(ct, args.q)
        lines.append(f"{fmt17(t)},{fmt17(p)},{record.csv_row()}")
    text = "\n".join(lines) + "\n"

    sys.stdout.write(text)
    if args.out is not None:
        os.makedirs(args.out, exist_ok=True)
        path = os.path.join(args.out, "trajectory.csv")
        with open(path, "w", newline="") as fh:
            fh.write(text)
        if not args.no_plots:
            from . import plots

            plots.render_trajectory(text, args.out)
    return EXIT_OK


def _finish_sweep(args, report, datasets, renderer) -> int:
    outdir = args.out if args.out is not None else _default_outdir()
    report_text = report.to_json(include_timing=not args.no_timing)
    write_datasets(outdir, datasets)
    with open(os.path.join(outdir, "report.json"), "w", newline="") as fh:
        fh.write(report_text + "\n")
    if not args.no_plots:
        renderer(outdir)
    print(report_text)
    return EXIT_OK if report.total_violations == 0 else EXIT_VIOLATION


def _cmd_sweep_hierarchy(args) -> int:
    report, datasets = hierarchy_sweep(args.n, args.seed, q=args.q, workers=args.workers)

    def renderer(outdir: str) -> None:
        from . import plots

        plots.render_hierarchy(datasets, outdir, args.q)

    return _finish_sweep(args, report, datasets, renderer)


def _cmd_sweep_invariance(args) -> int:
    report, datasets = invariance_scan(args.n, args.seed, q=args.q, workers=args.workers)

    def renderer(outdir: str) -> None:
        from . import plots

        plots.render_invariance(datasets, outdir)

    return _finish_sweep(args, report, datasets, renderer)


def _cmd_sweep_sudden_death(args) -> int:
    report, datasets = sudden_death_sweep(
        args.n, args.seed, kind=args.channel, q=args.q, workers=args.workers
    )

    def renderer(outdir: str) -> None:
        from . import plots

        plots.render_sudden_death(datasets, outdir)

    return _finish_sweep(args, report, datasets, renderer)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NonphysicalStateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
