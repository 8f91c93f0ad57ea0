"""Command-line surface: gen, run, compare, sweep, verify, reduce.

Exit codes are a stable contract for CI: 0 success, 1 an invariant or
verification failure, 2 usage or parse errors.  Every randomized command
requires an explicit --seed; there is no wall-clock default.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .engines import ADA, DA, run_ada, run_da, run_lockstep
from .errors import MatchkitError, ParseError, TheoremViolation
from .experiments import (
    SweepSpec,
    aggregate,
    concavity_score,
    crossing_report,
    final_pair_curve,
    run_sweep,
)
from .files import (
    format_instance,
    instance_filename,
    read_instance,
    write_curve_csv,
    write_instance,
    write_records_csv,
    write_reproducer,
    write_summary_csv,
    write_sweep_sidecar,
    write_trace_jsonl,
)
from .generator import GeneratorParams, generate
from .idua import normal_form
from .oracle import MAX_EXHAUSTIVE_N, all_instances, verify_instance
from .rng import GENERATOR_ID

USAGE_ERROR = 2
CHECK_FAILED = 1


def _fmt_matching(pairs) -> str:
    return " ".join(f"{m + 1}-{w + 1}" for m, w in enumerate(pairs))


def _positive_seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit int")
    return value


def _coefficient(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"c must lie in [0, 1], got {value}")
    return value


def cmd_gen(args) -> int:
    os.makedirs(args.out, exist_ok=True)
    for k in range(args.count):
        seed = args.seed + k
        instance = generate(GeneratorParams(n=args.n, c=args.c, seed=seed))
        path = os.path.join(args.out, instance_filename(args.n, args.c, seed))
        write_instance(
            path,
            instance,
            metadata={"generator": GENERATOR_ID, "n": args.n, "c": args.c, "seed": seed},
        )
        if not args.quiet:
            print(path)
    return 0


def cmd_run(args) -> int:
    instance, _meta = read_instance(args.instance)
    engine = run_ada if args.algo == ADA else run_da
    trace = engine(instance)
    if args.trace:
        write_trace_jsonl(args.trace, trace)
    if not args.quiet:
        m = trace.metrics
        print(
            f"{trace.algorithm} {m.total_rounds} {m.total_proposals} "
            f"{m.total_rejections} {m.idle_rounds} "
            f"{_fmt_matching(trace.final_matching.pairs)}"
        )
    return 0


def cmd_compare(args) -> int:
    instance, _meta = read_instance(args.instance)
    da, ada, lockstep = run_lockstep(instance)
    from .experiments import check_pair

    problems = check_pair(da, ada)
    crossing = crossing_report(da, ada)
    rows = [
        ("rounds", da.metrics.total_rounds, ada.metrics.total_rounds),
        ("proposals", da.metrics.total_proposals, ada.metrics.total_proposals),
        ("direct_rejections", da.metrics.direct_rejections, ada.metrics.direct_rejections),
        (
            "preemptive_rejections",
            da.metrics.preemptive_rejections,
            ada.metrics.preemptive_rejections,
        ),
        ("total_rejections", da.metrics.total_rejections, ada.metrics.total_rejections),
        ("idle_rounds", da.metrics.idle_rounds, ada.metrics.idle_rounds),
    ]
    print(f"{'metric':<22}{'da':>10}{'ada':>10}")
    for name, d, a in rows:
        print(f"{name:<22}{d:>10}{a:>10}")
    print(f"matching             {_fmt_matching(da.final_matching.pairs)}")
    print(
        f"da progress at ada end: {crossing.da_progress_at_that_round:.3f} "
        f"(round {crossing.ada_final_round} of {crossing.da_final_round})"
    )
    print(
        "final-pair curve concavity: "
        f"da {concavity_score(final_pair_curve(da)):.3f} "
        f"ada {concavity_score(final_pair_curve(ada)):.3f}"
    )
    print(f"pair containment: {'OK' if lockstep.holds else 'FAIL'}")
    if problems or not lockstep.holds:
        for p in problems:
            print(f"VIOLATION: {p}", file=sys.stderr)
        return CHECK_FAILED
    return 0


def _spec_from_args(args) -> SweepSpec:
    if args.spec:
        with open(args.spec) as fh:
            raw = json.load(fh)
        return SweepSpec(
            n_values=tuple(raw["n_values"]),
            c_values=tuple(raw["c_values"]),
            reps=int(raw["reps"]),
            base_seed=int(raw["base_seed"]),
            algorithms=tuple(raw.get("algorithms", (DA, ADA))),
        )
    missing = [
        flag
        for flag, val in (
            ("--n-values", args.n_values),
            ("--c-values", args.c_values),
            ("--reps", args.reps),
            ("--seed", args.seed),
        )
        if val is None
    ]
    if missing:
        raise MatchkitError(
            f"either --spec or all of {', '.join(missing)} must be given"
        )
    return SweepSpec(
        n_values=tuple(int(x) for x in args.n_values.split(",")),
        c_values=tuple(float(x) for x in args.c_values.split(",")),
        reps=args.reps,
        base_seed=args.seed,
        algorithms=tuple(args.algos.split(",")),
    )


def cmd_sweep(args) -> int:
    spec = _spec_from_args(args)
    try:
        records = run_sweep(spec, jobs=args.jobs, measure_time=not args.no_time)
    except TheoremViolation as exc:
        out_dir = os.path.dirname(os.path.abspath(args.out)) or "."
        repro = write_reproducer(out_dir, exc.n, exc.c, exc.seed)
        print(f"SWEEP ABORTED: {exc}", file=sys.stderr)
        print(f"reproducer written to {repro}", file=sys.stderr)
        return CHECK_FAILED
    write_records_csv(args.out, records)
    write_sweep_sidecar(args.out + ".meta.json", spec, __version__)
    if args.summary_out:
        write_summary_csv(args.summary_out, aggregate(records))
    if args.curves:
        curve_dir = os.path.splitext(args.out)[0] + ".curves"
        os.makedirs(curve_dir, exist_ok=True)
        _export_curves(spec, args.curves, curve_dir)
    if not args.quiet:
        print(f"{len(records)} records -> {args.out}")
    return 0


def _export_curves(spec: SweepSpec, per_cell: int, out_dir: str) -> None:
    from .experiments import rep_seed

    for ni, n in enumerate(spec.n_values):
        for ci, c in enumerate(spec.c_values):
            for rep in range(min(per_cell, spec.reps)):
                seed = rep_seed(spec.base_seed, ni, ci, rep)
                instance = generate(GeneratorParams(n=n, c=c, seed=seed))
                for algo, engine in ((DA, run_da), (ADA, run_ada)):
                    if algo not in spec.algorithms:
                        continue
                    curve = final_pair_curve(engine(instance, collect_events=False))
                    name = f"curve_n{n}_c{c}_rep{rep}_{algo}.csv"
                    write_curve_csv(os.path.join(out_dir, name), curve)


def _verify_one(instance, label: str, repro_dir: str | None) -> list[str]:
    problems = verify_instance(instance)
    if problems:
        print(f"FAIL {label}", file=sys.stderr)
        for p in problems:
            print(f"  {p}", file=sys.stderr)
        directory = repro_dir or "."
        os.makedirs(directory, exist_ok=True)
        path = os.path.join(directory, f"repro_{label}.txt")
        with open(path, "w") as fh:
            fh.write(format_instance(instance))
        print(f"  reproducer written to {path}", file=sys.stderr)
    return problems


def cmd_verify(args) -> int:
    failures = 0
    if args.instance:
        instance, _meta = read_instance(args.instance)
        failures += bool(_verify_one(instance, "instance", args.repro_dir))
    elif args.exhaustive_n3:
        checked = 0
        for instance in all_instances(MAX_EXHAUSTIVE_N):
            failures += bool(_verify_one(instance, f"n3_{checked}", args.repro_dir))
            checked += 1
            if checked % 10000 == 0 and not args.quiet:
                print(f"checked {checked} instances", file=sys.stderr)
        if not args.quiet:
            print(f"exhaustive n=3 sweep: {checked} instances checked")
    else:
        n, reps = args.sample
        for rep in range(reps):
            params = GeneratorParams(n=n, c=args.c, seed=args.seed + rep)
            label = f"n{params.n}_c{params.c}_seed{params.seed}"
            failures += bool(_verify_one(generate(params), label, args.repro_dir))
        if not args.quiet:
            print(f"sample verification: {reps} instances at n={n} checked")
    if failures:
        print(f"{failures} instance(s) failed verification", file=sys.stderr)
        return CHECK_FAILED
    if not args.quiet:
        print("all checks passed")
    return 0


def cmd_reduce(args) -> int:
    instance, _meta = read_instance(args.instance)
    nf = normal_form(instance)
    lines = [f"# normal form after {nf.iterations} deletion sweeps", str(instance.n)]
    lines += [" ".join(str(w + 1) for w in s) for s in nf.sets.men_sets]
    lines.append("")
    lines += [" ".join(str(m + 1) for m in s) for s in nf.sets.women_sets]
    lines.append("")
    lines.append(f"mu_M: {_fmt_matching(nf.mu_M.pairs)}")
    lines.append(f"mu_W: {_fmt_matching(nf.mu_W.pairs)}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matchkit",
        description="Deferred acceptance and accelerated deferred acceptance toolkit",
    )
    parser.add_argument("--version", action="version", version=f"matchkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate random instance files")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c", type=_coefficient, required=True)
    p.add_argument("--seed", type=_positive_seed, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--out", default=".")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("run", help="run one engine on an instance file")
    p.add_argument("--algo", choices=(DA, ADA), required=True)
    p.add_argument("--instance", required=True)
    p.add_argument("--trace", help="write a JSONL trace here")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("compare", help="run both engines and print a paired report")
    p.add_argument("--instance", required=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("sweep", help="run a benchmark sweep and write results CSV")
    p.add_argument("--spec", help="JSON sweep spec file")
    p.add_argument("--n-values", help="comma-separated, e.g. 2,4,8")
    p.add_argument("--c-values", help="comma-separated, e.g. 0,0.5,0.9")
    p.add_argument("--reps", type=int)
    p.add_argument("--seed", type=_positive_seed, help="base seed")
    p.add_argument("--algos", default=f"{DA},{ADA}")
    p.add_argument("--out", required=True)
    p.add_argument("--summary-out", help="also write aggregated summary CSV")
    p.add_argument("--curves", type=int, default=0, metavar="REPS_PER_CELL",
                   help="export final-pair curves for this many reps per cell")
    p.add_argument(
        "--jobs",
        type=int,
        default=int(os.environ.get("MATCHKIT_JOBS", "1")),
        help="worker processes (default: MATCHKIT_JOBS or 1)",
    )
    p.add_argument("--no-time", action="store_true",
                   help="write wall_time_s as 0.0 for byte-reproducible output")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="cross-check engines, reduction, and oracle")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--instance")
    g.add_argument("--exhaustive-n3", action="store_true")
    g.add_argument("--sample", nargs=2, type=int, metavar=("N", "REPS"))
    p.add_argument("--seed", type=_positive_seed, default=None)
    p.add_argument("--c", type=_coefficient, default=0.0)
    p.add_argument("--repro-dir", help="where to write failing instances")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reduce", help="print the normal form and both extremes")
    p.add_argument("--instance", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_reduce)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and args.sample and args.seed is None:
        parser.error("--sample requires an explicit --seed")
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except MatchkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
