"""Brute-force ground truth for small markets.

Everything in here works straight from the definitions: stability is a
double loop over all man-woman pairs, the stable set is found by scanning
all n! matchings, and strategy-proofness is probed by literally rerunning
the mechanism on every preference list a participant could report.  The
engines and the normal-form reduction are tested against these answers, so
this module deliberately avoids calling :func:`matchkit.core.find_blocking_pairs`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .core import Instance, Matching, _frozen, validate_instance
from .engines import run_ada, run_lockstep
from .errors import TooLarge

MAX_ENUMERATION_N = 8
MAX_MISREPORT_N = 5
MAX_EXHAUSTIVE_N = 3


def _guard(n: int, limit: int) -> None:
    if n > limit:
        raise TooLarge(n, limit)


def _is_stable_scan(mranks: list[list[int]], wranks: list[list[int]], wife) -> bool:
    # Definition check: unstable iff some (m, w) both rank each other above
    # their assigned partners.
    n = len(wife)
    husband = [0] * n
    for m in range(n):
        husband[wife[m]] = m
    for m in range(n):
        rm = mranks[m]
        own = rm[wife[m]]
        for w in range(n):
            if rm[w] < own and wranks[w][m] < wranks[w][husband[w]]:
                return False
    return True


def enumerate_stable(instance: Instance) -> list[Matching]:
    """All stable matchings, in lexicographic order of the pairs array.

    Guarded at n <= 8 (8! = 40,320 candidate matchings).  Never empty: every
    market has at least one stable matching.
    """
    _guard(instance.n, MAX_ENUMERATION_N)
    mranks = instance.men_rank_rows
    wranks = instance.women_rank_rows
    out = [
        Matching(perm)
        for perm in itertools.permutations(range(instance.n))
        if _is_stable_scan(mranks, wranks, perm)
    ]
    assert out, "no stable matching found; instance must be invalid"
    return out


def _extremal(instance: Instance, stable: list[Matching], side: str) -> Matching:
    n = instance.n
    if side == "men":
        ranks = instance.men_rank_rows
        partner_rank = lambda mu: [ranks[m][mu.pairs[m]] for m in range(n)]
    else:
        ranks = instance.women_rank_rows
        partner_rank = lambda mu: [ranks[w][mu.man_of(w)] for w in range(n)]
    table = [partner_rank(mu) for mu in stable]
    best = [min(col) for col in zip(*table)]
    hits = [mu for mu, row in zip(stable, table) if row == best]
    assert len(hits) == 1, f"{side}-optimal stable matching must exist and be unique"
    return hits[0]


def man_optimal(instance: Instance) -> Matching:
    """The stable matching every man weakly prefers to all other stable ones."""
    return _extremal(instance, enumerate_stable(instance), "men")


def woman_optimal(instance: Instance) -> Matching:
    """The symmetric extreme favouring the women."""
    return _extremal(instance, enumerate_stable(instance), "women")


@dataclass(frozen=True)
class MisreportProbe:
    """Outcome of exhaustively misreporting one man's preference list."""

    man: int
    truthful_partner: int
    profitable: list[tuple[tuple[int, ...], int]]


def probe_strategyproofness(instance: Instance, man: int) -> MisreportProbe:
    """Try every list the man could report and judge results by his true list.

    The mechanism under attack is accelerated deferred acceptance.  A report
    is profitable when it yields a partner the man truly ranks above his
    truthful outcome; the expected result is that none exists.
    """
    _guard(instance.n, MAX_MISREPORT_N)
    n = instance.n
    true_rank = instance.men_rank_rows[man]
    baseline = run_ada(instance, collect_events=False).final_matching.pairs[man]
    base_rank = true_rank[baseline]

    profitable = []
    men = np.array(instance.men_prefs)
    for report in itertools.permutations(range(n)):
        men[man] = report
        outcome = run_ada(
            validate_instance(men, instance.women_prefs), collect_events=False
        ).final_matching.pairs[man]
        if true_rank[outcome] < base_rank:
            profitable.append((report, outcome))
    return MisreportProbe(man=man, truthful_partner=baseline, profitable=profitable)


def ada_with_submitted_women_lists(
    instance: Instance, women_lists: list[list[int]]
) -> list[int]:
    """Accelerated deferred acceptance where women may submit truncated lists.

    A man missing from a woman's submitted list is behind her sentinel: she
    never accepts him, rejects him whenever he proposes, and drops him in her
    first pre-emptive sweep.  Men keep their full true lists.  Returns the
    tentative partner of each man, -1 where the market leaves him unmatched.
    This simulation exists only to exercise receiver-side manipulation; the
    main engines stay complete-list only.
    """
    n = instance.n
    mprefs = instance.men_lists
    sub_rank: list[dict[int, int]] = [
        {m: r for r, m in enumerate(lst)} for lst in women_lists
    ]
    rejected = [bytearray(n) for _ in range(n)]  # rejected[m][w]
    wife = [-1] * n
    husband = [-1] * n
    singles = list(range(n))
    while True:
        proposals: dict[int, list[int]] = {}
        proposers = []
        for m in singles:
            rej = rejected[m]
            w = next((w for w in mprefs[m] if not rej[w]), None)
            if w is None:
                continue  # exhausted his list; permanently unmatched
            proposals.setdefault(w, []).append(m)
            proposers.append(m)
        if not proposers:
            break
        new_singles = [m for m in singles if m not in proposers]
        for w in sorted(proposals):
            ranks = sub_rank[w]
            listed = [m for m in proposals[w] if m in ranks]
            for m in proposals[w]:
                if m not in ranks:
                    rejected[m][w] = 1
                    new_singles.append(m)
            if not listed:
                continue
            best = min(listed, key=ranks.__getitem__)
            cur = husband[w]
            if cur >= 0 and ranks[cur] < ranks[best]:
                for m in listed:
                    rejected[m][w] = 1
                    new_singles.append(m)
                continue
            if cur >= 0:
                wife[cur] = -1
                rejected[cur][w] = 1
                new_singles.append(cur)
            husband[w] = best
            wife[best] = w
            for m in listed:
                if m != best:
                    rejected[m][w] = 1
                    new_singles.append(m)
            # Pre-emptive sweep over her submitted list, plus every unlisted
            # man: all of them are now out of range.
            for m, r in ranks.items():
                if r > ranks[best]:
                    rejected[m][w] = 1
            for m in range(n):
                if m not in ranks:
                    rejected[m][w] = 1
        singles = new_singles
    return wife


@dataclass(frozen=True)
class TruncationReport:
    """What coordinated woman-side truncation does to the ADA outcome."""

    stable_count: int
    mu_M: Matching
    mu_W: Matching
    truncated_outcome: list[int]
    improved_women: list[int]


def woman_truncation_report(instance: Instance) -> TruncationReport:
    """Have every woman submit only her woman-optimal partner and rerun.

    With at least two stable matchings this strictly improves some woman
    relative to truthful reporting, witnessing that the mechanism is not
    strategy proof for the receiving side.
    """
    stable = enumerate_stable(instance)
    mu_m = _extremal(instance, stable, "men")
    mu_w = _extremal(instance, stable, "women")
    lists = [[mu_w.man_of(w)] for w in range(instance.n)]
    outcome = ada_with_submitted_women_lists(instance, lists)
    wranks = instance.women_rank_rows
    improved = []
    for w in range(instance.n):
        got = outcome.index(w) if w in outcome else -1
        if got >= 0 and wranks[w][got] < wranks[w][mu_m.man_of(w)]:
            improved.append(w)
    return TruncationReport(
        stable_count=len(stable),
        mu_M=mu_m,
        mu_W=mu_w,
        truncated_outcome=outcome,
        improved_women=improved,
    )


def all_instances(n: int):
    """Yield every instance of size n; tractable only for n <= 3."""
    _guard(n, MAX_EXHAUSTIVE_N)
    perms = [np.asarray(p, dtype=np.int64) for p in itertools.permutations(range(n))]
    for men_rows in itertools.product(perms, repeat=n):
        men = _frozen(np.stack(men_rows))
        for women_rows in itertools.product(perms, repeat=n):
            yield Instance(men, _frozen(np.stack(women_rows)))


def verify_instance(instance: Instance) -> list[str]:
    """Cross-module agreement suite; returns a list of violation messages.

    Engines must agree with each other and with the normal-form reduction on
    every instance, and with the brute-force extremes whenever n is small
    enough to enumerate.
    """
    from .experiments import check_pair
    from .idua import normal_form

    da, ada, lockstep = run_lockstep(instance)
    problems = check_pair(da, ada)
    if not lockstep.holds:
        problems.append(f"pair containment fails: {lockstep.violations[:5]}")
    mranks = instance.men_rank_rows
    wranks = instance.women_rank_rows
    if not _is_stable_scan(mranks, wranks, da.final_matching.pairs):
        problems.append("engine output is not stable")
    nf = normal_form(instance)
    if nf.mu_M.pairs != da.final_matching.pairs:
        problems.append(
            f"normal-form man-optimal {nf.mu_M.pairs} != engine output "
            f"{da.final_matching.pairs}"
        )
    if instance.n <= MAX_ENUMERATION_N:
        stable = enumerate_stable(instance)
        mo = _extremal(instance, stable, "men")
        wo = _extremal(instance, stable, "women")
        if mo.pairs != da.final_matching.pairs:
            problems.append(
                f"brute-force man-optimal {mo.pairs} != engine output "
                f"{da.final_matching.pairs}"
            )
        if wo.pairs != nf.mu_W.pairs:
            problems.append(
                f"brute-force woman-optimal {wo.pairs} != normal form {nf.mu_W.pairs}"
            )
    return problems
