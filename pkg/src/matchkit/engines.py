"""Instrumented proposal engines: deferred acceptance and its accelerated variant.

Both engines run the same round-synchronous loop:

  1. every single man proposes to his best woman who has not yet rejected him;
  2. each woman with proposals keeps the best candidate and rejects the rest;
  3. rejected men are single again.

They differ in one place.  Under plain deferred acceptance (DA) a woman only
rejects men whose proposal is on her desk.  Under accelerated deferred
acceptance (ADA) a woman who accepts a proposer also rejects every man she
ranks below him, proposer or not; those extra rejections are *pre-emptive*
and stop sure-to-fail proposals before they happen.

A rejection is logged ``direct`` when the man had a live proposal with the
woman (made this round, or held from an earlier round and now displaced) and
``preemptive`` otherwise.  DA therefore never logs a pre-emptive rejection.

The loop runs while any man is single; a round in which no proposal is
rejected leaves nobody single, so the two stopping rules coincide.  The final
ADA round may still hand out pre-emptive rejections.  Round numbers are
1-based and count only rounds in which proposals were issued.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass

from .core import Instance, Matching


class RejectionKind(str, enum.Enum):
    DIRECT = "direct"
    PREEMPTIVE = "preemptive"


DA = "da"
ADA = "ada"

_DIRECT = RejectionKind.DIRECT
_PREEMPTIVE = RejectionKind.PREEMPTIVE


@dataclass(frozen=True)
class RoundEvents:
    """Everything that happened in one round, in processing order."""

    round: int
    proposals: list[tuple[int, int]]
    acceptances: list[tuple[int, int]]
    rejections: list[tuple[int, int, RejectionKind]]
    idle: bool


@dataclass(frozen=True)
class RunMetrics:
    total_rounds: int
    total_proposals: int
    direct_rejections: int
    preemptive_rejections: int
    total_rejections: int
    idle_rounds: int
    final_pair_round: tuple[int, ...]
    wall_time: float


@dataclass(frozen=True)
class RunTrace:
    algorithm: str
    rounds: list[RoundEvents]
    final_matching: Matching
    metrics: RunMetrics
    instance_digest: str


def _execute(instance: Instance, accelerated: bool, collect_events: bool) -> RunTrace:
    n = instance.n
    mprefs = instance.men_lists
    wprefs = instance.women_lists
    wranks = instance.women_rank_rows

    next_idx = [0] * n
    wife = [-1] * n
    husband = [-1] * n
    # cutoff[w] = rank of w's current partner; n while unmatched.  In ADA the
    # set of men w has rejected so far is exactly {m : rank_w(m) > cutoff[w]},
    # so availability is an O(1) test with no per-pair bookkeeping.
    cutoff = [n] * n
    pair_round = [0] * n

    singles = list(range(n))
    rounds: list[RoundEvents] = []
    round_no = 0
    total_proposals = 0
    direct = 0
    preemptive = 0
    idle_rounds = 0

    t0 = time.perf_counter()
    while singles:
        round_no += 1
        targets: dict[int, list[int]] = {}
        proposals: list[tuple[int, int]] = []
        for m in singles:
            lst = mprefs[m]
            i = next_idx[m]
            w = lst[i]
            if accelerated:
                while wranks[w][m] > cutoff[w]:
                    i += 1
                    w = lst[i]
            next_idx[m] = i + 1
            bucket = targets.get(w)
            if bucket is None:
                targets[w] = [m]
            else:
                bucket.append(m)
            if collect_events:
                proposals.append((m, w))
        total_proposals += len(singles)

        new_singles: list[int] = []
        acceptances: list[tuple[int, int]] = []
        rejections: list[tuple[int, int, RejectionKind]] = []
        for w in sorted(targets):
            props = targets[w]
            wr = wranks[w]
            best = props[0]
            best_rank = wr[best]
            for m in props[1:]:
                r = wr[m]
                if r < best_rank:
                    best = m
                    best_rank = r
            cur = husband[w]
            if cur >= 0 and wr[cur] < best_rank:
                # She keeps her current partner; every proposal bounces.  In
                # ADA this cannot happen: she already rejected everyone she
                # ranks below him, so any proposer must beat him.
                assert not accelerated
                direct += len(props)
                new_singles.extend(props)
                if collect_events:
                    for m in props:
                        rejections.append((m, w, _DIRECT))
                continue

            acceptances.append((best, w))
            husband[w] = best
            wife[best] = w
            pair_round[best] = round_no
            old_cutoff = cutoff[w]
            if cur >= 0:
                wife[cur] = -1
                new_singles.append(cur)
                direct += 1
                if collect_events:
                    rejections.append((cur, w, _DIRECT))
            for m in props:
                if m != best:
                    new_singles.append(m)
                    direct += 1
                    if collect_events:
                        rejections.append((m, w, _DIRECT))
            if accelerated:
                cutoff[w] = best_rank
                # Newly rejected men occupy ranks (best_rank, old_cutoff];
                # losing proposers and a displaced partner sit inside that
                # span and were already logged direct, the rest of the span
                # is swept pre-emptively.
                hi = old_cutoff if old_cutoff < n else n - 1
                swept = hi - best_rank
                direct_in_span = len(props) - 1 + (1 if cur >= 0 else 0)
                preemptive += swept - direct_in_span
                if collect_events and swept > direct_in_span:
                    wl = wprefs[w]
                    live = set(props)
                    if cur >= 0:
                        live.add(cur)
                    for r in range(best_rank + 1, hi + 1):
                        m2 = wl[r]
                        if m2 not in live:
                            rejections.append((m2, w, _PREEMPTIVE))

        if not acceptances:
            idle_rounds += 1
        if collect_events:
            rounds.append(
                RoundEvents(round_no, proposals, acceptances, rejections, not acceptances)
            )
        singles = new_singles
    wall = time.perf_counter() - t0

    assert all(w >= 0 for w in wife), "market did not clear"
    metrics = RunMetrics(
        total_rounds=round_no,
        total_proposals=total_proposals,
        direct_rejections=direct,
        preemptive_rejections=preemptive,
        total_rejections=direct + preemptive,
        idle_rounds=idle_rounds,
        final_pair_round=tuple(pair_round),
        wall_time=wall,
    )
    return RunTrace(
        algorithm=ADA if accelerated else DA,
        rounds=rounds,
        final_matching=Matching(tuple(wife)),
        metrics=metrics,
        instance_digest=instance.digest,
    )


def run_da(instance: Instance, collect_events: bool = True) -> RunTrace:
    """Run man-proposing deferred acceptance.

    Returns the man-optimal stable matching together with a full per-round
    event log (unless ``collect_events`` is off, which keeps only metrics and
    is what the benchmark harness uses).
    """
    return _execute(instance, accelerated=False, collect_events=collect_events)


def run_ada(instance: Instance, collect_events: bool = True) -> RunTrace:
    """Run man-proposing accelerated deferred acceptance.

    Same output matching as :func:`run_da`, reached with weakly fewer
    proposals and rounds; the trace additionally records pre-emptive
    rejections.
    """
    return _execute(instance, accelerated=True, collect_events=collect_events)


@dataclass(frozen=True)
class RoundContainment:
    round: int
    ada_deleted: int
    da_deleted: int
    holds: bool


@dataclass(frozen=True)
class LockstepReport:
    """Round-by-round comparison of the two engines' deleted-pair sets.

    A pair (m, w) survives round k if w has not rejected m, directly or
    pre-emptively, in rounds 1..k; past an engine's termination its pair set
    stays frozen.  ``holds`` says the ADA survivor set was contained in the
    DA survivor set after every round, equivalently that DA never deleted a
    pair strictly earlier than ADA did.
    """

    rounds: list[RoundContainment]
    holds: bool
    violations: list[tuple[int, int, int, int | None]]
    ada_deletion_round: dict[tuple[int, int], int]
    da_deletion_round: dict[tuple[int, int], int]

    def deleted_pairs(self, algorithm: str, upto_round: int) -> set[tuple[int, int]]:
        table = self.ada_deletion_round if algorithm == ADA else self.da_deletion_round
        return {p for p, r in table.items() if r <= upto_round}


def _deletion_rounds(trace: RunTrace) -> dict[tuple[int, int], int]:
    out: dict[tuple[int, int], int] = {}
    for ev in trace.rounds:
        for m, w, _kind in ev.rejections:
            assert (m, w) not in out, "pair rejected twice"
            out[(m, w)] = ev.round
    return out


def run_lockstep(instance: Instance) -> tuple[RunTrace, RunTrace, LockstepReport]:
    """Run both engines on one instance and check per-round pair containment.

    Because each pair is deleted at most once per engine, containment after
    every round reduces to a per-pair comparison of deletion rounds; the
    report still lists one row per round for inspection.
    """
    da = run_da(instance)
    ada = run_ada(instance)
    da_del = _deletion_rounds(da)
    ada_del = _deletion_rounds(ada)

    violations = []
    for pair, dr in da_del.items():
        ar = ada_del.get(pair)
        if ar is None or ar > dr:
            violations.append((pair[0], pair[1], dr, ar))

    last = max(da.metrics.total_rounds, ada.metrics.total_rounds)
    # violated[k] = 1 if some pair is DA-deleted but not yet ADA-deleted at k
    violated = [0] * (last + 2)
    for _m, _w, dr, ar in violations:
        violated[dr] += 1
        violated[(ar - 1 if ar is not None else last) + 1] -= 1
    rounds = []
    da_sorted = sorted(da_del.values())
    ada_sorted = sorted(ada_del.values())
    da_i = ada_i = 0
    open_violations = 0
    for k in range(1, last + 1):
        open_violations += violated[k]
        while da_i < len(da_sorted) and da_sorted[da_i] <= k:
            da_i += 1
        while ada_i < len(ada_sorted) and ada_sorted[ada_i] <= k:
            ada_i += 1
        rounds.append(RoundContainment(k, ada_i, da_i, open_violations == 0))

    report = LockstepReport(
        rounds=rounds,
        holds=not violations,
        violations=violations,
        ada_deletion_round=ada_del,
        da_deletion_round=da_del,
    )
    return da, ada, report
