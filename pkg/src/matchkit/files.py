"""Stable on-disk formats: instance files, trace JSONL, results and curve CSV.

Instance files are line-oriented text, diff-friendly, and 1-based so they
read like the worked examples in the docs:

    # generator: ...         optional '#' metadata lines, 'key: value'
    5                        market size n
    1 2 3 4 5                n rows: men's lists, most preferred first
    ...
                             blank separator
    5 4 1 2 3                n rows: women's lists
    ...
"""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import asdict

from .core import Instance, validate_instance
from .engines import RunTrace
from .errors import ParseError
from .experiments import METRIC_FIELDS, ExperimentRecord, FinalPairCurve, Stats, SweepSpec
from .rng import GENERATOR_ID

RESULTS_HEADER = (
    "n,c,seed,algorithm,rounds,proposals,direct_rejections,"
    "preemptive_rejections,total_rejections,idle_rounds,wall_time_s"
)


def format_instance(instance: Instance, metadata: dict | None = None) -> str:
    lines = []
    for key, value in (metadata or {}).items():
        lines.append(f"# {key}: {value}")
    lines.append(str(instance.n))
    for row in instance.men_lists:
        lines.append(" ".join(str(x + 1) for x in row))
    lines.append("")
    for row in instance.women_lists:
        lines.append(" ".join(str(x + 1) for x in row))
    return "\n".join(lines) + "\n"


def write_instance(path: str, instance: Instance, metadata: dict | None = None) -> None:
    with open(path, "w") as fh:
        fh.write(format_instance(instance, metadata))


def _parse_row(path: str, lineno: int, line: str, n: int) -> list[int]:
    try:
        row = [int(tok) - 1 for tok in line.split()]
    except ValueError:
        raise ParseError(path, lineno, f"expected integers, got {line!r}")
    if len(row) != n:
        raise ParseError(path, lineno, f"expected {n} entries, got {len(row)}")
    return row


def parse_instance(text: str, path: str = "<string>") -> tuple[Instance, dict[str, str]]:
    metadata: dict[str, str] = {}
    data: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            stripped = line.lstrip("#").strip()
            if ":" in stripped:
                key, _, value = stripped.partition(":")
                metadata[key.strip()] = value.strip()
            continue
        if line:
            data.append((lineno, line))
    if not data:
        raise ParseError(path, 1, "empty instance file")
    lineno, first = data[0]
    try:
        n = int(first)
    except ValueError:
        raise ParseError(path, lineno, f"expected market size, got {first!r}")
    rows = data[1:]
    if len(rows) != 2 * n:
        last = rows[-1][0] if rows else lineno
        raise ParseError(path, last, f"expected {2 * n} preference rows, found {len(rows)}")
    men = [_parse_row(path, ln, s, n) for ln, s in rows[:n]]
    women = [_parse_row(path, ln, s, n) for ln, s in rows[n:]]
    try:
        instance = validate_instance(men, women)
    except Exception as exc:
        raise ParseError(path, lineno, str(exc))
    return instance, metadata


def read_instance(path: str) -> tuple[Instance, dict[str, str]]:
    with open(path) as fh:
        return parse_instance(fh.read(), path)


def _pairs_1based(pairs) -> list[list[int]]:
    return [[m + 1, w + 1] for m, w in enumerate(pairs)]


def trace_summary(trace: RunTrace) -> dict:
    m = trace.metrics
    return {
        "record": "summary",
        "algorithm": trace.algorithm,
        "total_rounds": m.total_rounds,
        "total_proposals": m.total_proposals,
        "direct_rejections": m.direct_rejections,
        "preemptive_rejections": m.preemptive_rejections,
        "total_rejections": m.total_rejections,
        "idle_rounds": m.idle_rounds,
        "final_pair_round": list(m.final_pair_round),
        "wall_time": m.wall_time,
        "final_matching": _pairs_1based(trace.final_matching.pairs),
        "instance_digest": trace.instance_digest,
    }


def format_trace_jsonl(trace: RunTrace) -> str:
    """One JSON record per round plus a trailing summary record, 1-based IDs."""
    out = io.StringIO()
    for ev in trace.rounds:
        rec = {
            "record": "round",
            "round": ev.round,
            "proposals": [[m + 1, w + 1] for m, w in ev.proposals],
            "acceptances": [[m + 1, w + 1] for m, w in ev.acceptances],
            "rejections": [[m + 1, w + 1, kind.value] for m, w, kind in ev.rejections],
            "idle": ev.idle,
        }
        out.write(json.dumps(rec, separators=(",", ":")) + "\n")
    out.write(json.dumps(trace_summary(trace), separators=(",", ":")) + "\n")
    return out.getvalue()


def write_trace_jsonl(path: str, trace: RunTrace) -> None:
    with open(path, "w") as fh:
        fh.write(format_trace_jsonl(trace))


def _format_float(x: float) -> str:
    return repr(float(x))


def format_records_csv(records: list[ExperimentRecord]) -> str:
    out = io.StringIO()
    out.write(RESULTS_HEADER + "\n")
    for r in records:
        out.write(
            f"{r.n},{_format_float(r.c)},{r.seed},{r.algorithm},{r.rounds},"
            f"{r.proposals},{r.direct_rejections},{r.preemptive_rejections},"
            f"{r.total_rejections},{r.idle_rounds},{_format_float(r.wall_time_s)}\n"
        )
    return out.getvalue()


def write_records_csv(path: str, records: list[ExperimentRecord]) -> None:
    with open(path, "w") as fh:
        fh.write(format_records_csv(records))


def read_records_csv(path: str) -> list[ExperimentRecord]:
    records = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            records.append(
                ExperimentRecord(
                    n=int(row["n"]),
                    c=float(row["c"]),
                    seed=int(row["seed"]),
                    algorithm=row["algorithm"],
                    rounds=int(row["rounds"]),
                    proposals=int(row["proposals"]),
                    direct_rejections=int(row["direct_rejections"]),
                    preemptive_rejections=int(row["preemptive_rejections"]),
                    total_rejections=int(row["total_rejections"]),
                    idle_rounds=int(row["idle_rounds"]),
                    wall_time_s=float(row["wall_time_s"]),
                )
            )
    return records


def write_sweep_sidecar(path: str, spec: SweepSpec, version: str) -> None:
    """Metadata sidecar so a results file is self-describing."""
    payload = {
        "spec": asdict(spec),
        "generator": GENERATOR_ID,
        "artifact_version": version,
        "results_header": RESULTS_HEADER,
    }
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_summary_csv(
    path: str,
    summary: dict[tuple, dict[str, Stats]],
    group_keys: tuple[str, ...] = ("n", "c", "algorithm"),
) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        header = list(group_keys)
        for metric in METRIC_FIELDS:
            header += [f"{metric}_{s}" for s in ("mean", "sd", "min", "max", "count")]
        writer.writerow(header)
        for key in sorted(summary):
            row = list(key)
            for metric in METRIC_FIELDS:
                st = summary[key][metric]
                row += [st.mean, st.sd, st.min, st.max, st.count]
            writer.writerow(row)


def write_curve_csv(path: str, curve: FinalPairCurve) -> None:
    with open(path, "w") as fh:
        fh.write("round,proportion\n")
        for r, p in zip(curve.rounds, curve.proportion):
            fh.write(f"{r},{_format_float(p)}\n")


def instance_filename(n: int, c: float, seed: int) -> str:
    return f"instance_n{n}_c{c}_seed{seed}.txt"


def write_reproducer(directory: str, n: int, c: float, seed: int) -> str:
    """Regenerate the instance for (n, c, seed) and drop it next to the run."""
    from .generator import GeneratorParams, generate

    instance = generate(GeneratorParams(n=n, c=c, seed=seed))
    path = os.path.join(directory, "repro_" + instance_filename(n, c, seed))
    write_instance(
        path,
        instance,
        metadata={"generator": GENERATOR_ID, "n": n, "c": c, "seed": seed},
    )
    return path
