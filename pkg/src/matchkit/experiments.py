"""Batch experiment runner, metric aggregation, and final-pair progress curves.

A sweep is a grid (n values) x (c values) x reps.  Within a rep both
algorithms run on the *same* generated instance so per-instance comparisons
are paired, and every paired rep is audited against the guaranteed
relationships (same output, ADA never behind on proposals, rounds, or pair
formation, no ADA idle rounds); a violation aborts the sweep with enough
information to regenerate the offending instance.

Per-rep seeds derive from ``derive_seed(base_seed, n_index, c_index, rep)``
so any cell or rep can be rerun in isolation and parallel execution needs no
coordination.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .engines import ADA, DA, RunTrace, run_ada, run_da
from .errors import EmptyGroup, InstanceMismatch, InvalidParams, TheoremViolation
from .generator import GeneratorParams, generate
from .rng import derive_seed

_ALGOS = {DA: run_da, ADA: run_ada}


@dataclass(frozen=True)
class SweepSpec:
    n_values: tuple[int, ...]
    c_values: tuple[float, ...]
    reps: int
    base_seed: int
    algorithms: tuple[str, ...] = (DA, ADA)

    def __post_init__(self):
        object.__setattr__(self, "n_values", tuple(int(n) for n in self.n_values))
        object.__setattr__(self, "c_values", tuple(float(c) for c in self.c_values))
        object.__setattr__(self, "algorithms", tuple(self.algorithms))
        if not self.n_values or not self.c_values:
            raise InvalidParams("sweep needs at least one n and one c value")
        if any(n < 2 for n in self.n_values):
            raise InvalidParams("every n must be >= 2")
        if any(not 0.0 <= c <= 1.0 for c in self.c_values):
            raise InvalidParams("every c must lie in [0, 1]")
        if self.reps < 1:
            raise InvalidParams("reps must be >= 1")
        if any(a not in _ALGOS for a in self.algorithms) or not self.algorithms:
            raise InvalidParams(f"algorithms must be drawn from {sorted(_ALGOS)}")


@dataclass(frozen=True)
class ExperimentRecord:
    """One (instance, algorithm) result row, flattened for CSV export."""

    n: int
    c: float
    seed: int
    algorithm: str
    rounds: int
    proposals: int
    direct_rejections: int
    preemptive_rejections: int
    total_rejections: int
    idle_rounds: int
    wall_time_s: float


def rep_seed(base_seed: int, n_index: int, c_index: int, rep: int) -> int:
    """Instance seed for one rep; documented so cells can be rerun alone."""
    return derive_seed(base_seed, n_index, c_index, rep)


def check_pair(da: RunTrace, ada: RunTrace) -> list[str]:
    """Audit one paired run; returns human-readable violations (ideally none)."""
    problems = []
    if da.instance_digest != ada.instance_digest:
        problems.append("traces come from different instances")
        return problems
    if ada.final_matching.pairs != da.final_matching.pairs:
        problems.append("final matchings differ")
    if ada.metrics.total_proposals > da.metrics.total_proposals:
        problems.append(
            f"ADA used more proposals ({ada.metrics.total_proposals} > "
            f"{da.metrics.total_proposals})"
        )
    if ada.metrics.total_rounds > da.metrics.total_rounds:
        problems.append(
            f"ADA used more rounds ({ada.metrics.total_rounds} > "
            f"{da.metrics.total_rounds})"
        )
    if any(
        a > d
        for a, d in zip(ada.metrics.final_pair_round, da.metrics.final_pair_round)
    ):
        problems.append("some final pair formed later under ADA")
    if ada.metrics.idle_rounds != 0:
        problems.append(f"ADA recorded {ada.metrics.idle_rounds} idle rounds")
    if ada.metrics.total_rejections < da.metrics.total_rejections:
        problems.append("ADA recorded fewer total rejections than DA")
    return problems


def _record(trace: RunTrace, n: int, c: float, seed: int, timed: bool) -> ExperimentRecord:
    m = trace.metrics
    return ExperimentRecord(
        n=n,
        c=c,
        seed=seed,
        algorithm=trace.algorithm,
        rounds=m.total_rounds,
        proposals=m.total_proposals,
        direct_rejections=m.direct_rejections,
        preemptive_rejections=m.preemptive_rejections,
        total_rejections=m.total_rejections,
        idle_rounds=m.idle_rounds,
        wall_time_s=m.wall_time if timed else 0.0,
    )


def _run_cell(args) -> list[ExperimentRecord]:
    spec, n_index, c_index, measure_time = args
    n = spec.n_values[n_index]
    c = spec.c_values[c_index]
    records = []
    for rep in range(spec.reps):
        seed = rep_seed(spec.base_seed, n_index, c_index, rep)
        try:
            instance = generate(GeneratorParams(n=n, c=c, seed=seed))
            traces = {
                algo: _ALGOS[algo](instance, collect_events=False)
                for algo in spec.algorithms
            }
        except TheoremViolation:
            raise
        except Exception as exc:
            raise TheoremViolation(n, c, seed, f"rep failed: {exc!r}") from exc
        if DA in traces and ADA in traces:
            problems = check_pair(traces[DA], traces[ADA])
            if problems:
                raise TheoremViolation(n, c, seed, "; ".join(problems))
        records.extend(
            _record(traces[a], n, c, seed, measure_time) for a in spec.algorithms
        )
    return records


def run_sweep(
    spec: SweepSpec, jobs: int = 1, measure_time: bool = True
) -> list[ExperimentRecord]:
    """Execute the sweep, two records per paired rep (one per algorithm).

    Record content is deterministic in the spec except for ``wall_time_s``,
    which is a measurement; pass ``measure_time=False`` to zero it for
    byte-reproducible output.  ``jobs`` > 1 fans cells out to worker
    processes; record order is preserved either way.
    """
    cells = [
        (spec, ni, ci, measure_time)
        for ni in range(len(spec.n_values))
        for ci in range(len(spec.c_values))
    ]
    if jobs <= 1 or len(cells) == 1:
        batches = map(_run_cell, cells)
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            batches = list(pool.map(_run_cell, cells))
    return [rec for batch in batches for rec in batch]


METRIC_FIELDS = (
    "rounds",
    "proposals",
    "direct_rejections",
    "preemptive_rejections",
    "total_rejections",
    "idle_rounds",
    "wall_time_s",
)


@dataclass(frozen=True)
class Stats:
    mean: float
    sd: float
    min: float
    max: float
    count: int


def aggregate(
    records: Iterable[ExperimentRecord],
    group_keys: Sequence[str] = ("n", "c", "algorithm"),
) -> dict[tuple, dict[str, Stats]]:
    """Order-independent grouped summary of every metric column.

    Returns ``{group key tuple: {metric: Stats}}``; raises
    :class:`EmptyGroup` on an empty record set.
    """
    groups: dict[tuple, list[ExperimentRecord]] = {}
    for rec in records:
        key = tuple(getattr(rec, k) for k in group_keys)
        groups.setdefault(key, []).append(rec)
    if not groups:
        raise EmptyGroup("no records to aggregate")
    out: dict[tuple, dict[str, Stats]] = {}
    for key in sorted(groups):
        rows = groups[key]
        stats = {}
        for metric in METRIC_FIELDS:
            vals = np.array([getattr(r, metric) for r in rows], dtype=np.float64)
            stats[metric] = Stats(
                mean=float(vals.mean()),
                sd=float(vals.std()),
                min=float(vals.min()),
                max=float(vals.max()),
                count=len(vals),
            )
        out[key] = stats
    return out


@dataclass(frozen=True)
class FinalPairCurve:
    """Step function: fraction of the terminal matching formed by each round."""

    rounds: tuple[int, ...]
    proportion: tuple[float, ...]


def final_pair_curve(trace: RunTrace) -> FinalPairCurve:
    """Cumulative proportion of final pairs already matched, per round."""
    n = len(trace.metrics.final_pair_round)
    total = trace.metrics.total_rounds
    counts = np.bincount(trace.metrics.final_pair_round, minlength=total + 1)
    cum = np.cumsum(counts[1:]) / n
    assert cum[-1] == 1.0, "curve must terminate at exactly 1.0"
    return FinalPairCurve(tuple(range(1, total + 1)), tuple(float(x) for x in cum))


def concavity_score(curve: FinalPairCurve) -> float:
    """Fraction of adjacent increment pairs that do not increase.

    1.0 means the discrete curve is concave throughout.  Reported for
    inspection only; nothing asserts it.
    """
    props = (0.0,) + curve.proportion
    inc = [b - a for a, b in zip(props, props[1:])]
    if len(inc) < 2:
        return 1.0
    good = sum(1 for a, b in zip(inc, inc[1:]) if b <= a)
    return good / (len(inc) - 1)


@dataclass(frozen=True)
class CrossingReport:
    """How far DA's final-pair curve had come when ADA already finished."""

    ada_final_round: int
    da_progress_at_that_round: float
    da_final_round: int


def crossing_report(da_trace: RunTrace, ada_trace: RunTrace) -> CrossingReport:
    """Evaluate the first trace's progress at the second trace's last round."""
    if da_trace.instance_digest != ada_trace.instance_digest:
        raise InstanceMismatch("traces reference different instance digests")
    ada_end = ada_trace.metrics.total_rounds
    fpr = da_trace.metrics.final_pair_round
    progress = sum(1 for r in fpr if r <= ada_end) / len(fpr)
    return CrossingReport(
        ada_final_round=ada_end,
        da_progress_at_that_round=progress,
        da_final_round=da_trace.metrics.total_rounds,
    )
