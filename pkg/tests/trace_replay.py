"""Independent replay of an engine trace against the matching rules.

This deliberately re-derives every obligation from scratch (who was single,
who each man had to propose to next, who a woman was allowed to reject) so
that engine bugs cannot hide behind their own bookkeeping.
"""

from matchkit.engines import ADA, RejectionKind, RunTrace
from matchkit.core import Instance


def replay_and_check(instance: Instance, trace: RunTrace) -> None:
    n = instance.n
    mprefs = instance.men_lists
    mranks = instance.men_rank_rows
    wranks = instance.women_rank_rows
    accelerated = trace.algorithm == ADA

    rejected = [[False] * n for _ in range(n)]  # rejected[m][w]
    wife = [-1] * n
    husband = [-1] * n
    pair_round = [0] * n
    last_prop_rank = [-1] * n
    broke_final_pair = False
    final = trace.final_matching.pairs

    totals = {"proposals": 0, "direct": 0, "preemptive": 0, "idle": 0}

    for k, ev in enumerate(trace.rounds, start=1):
        assert ev.round == k, "rounds must be numbered consecutively from 1"
        assert ev.proposals, "every recorded round must contain proposals"

        husband_start = husband[:]
        single_start = {m for m in range(n) if wife[m] == -1}

        proposers: dict[int, int] = {}
        for m, w in ev.proposals:
            assert m in single_start, f"man {m} proposed while matched"
            assert m not in proposers, f"man {m} proposed twice in round {k}"
            proposers[m] = w
            expected = next(x for x in mprefs[m] if not rejected[m][x])
            assert w == expected, (
                f"man {m} proposed to {w}, but his best open choice is {expected}"
            )
            assert mranks[m][w] > last_prop_rank[m], "proposals must move down the list"
            last_prop_rank[m] = mranks[m][w]
            if accelerated and husband_start[w] != -1:
                assert wranks[w][m] < wranks[w][husband_start[w]], (
                    "a matched woman may only hear from men she would trade up to"
                )
        assert set(proposers) == single_start, "every single man proposes each round"
        totals["proposals"] += len(ev.proposals)

        accepted_of: dict[int, int] = {}
        for m, w in ev.acceptances:
            assert proposers.get(m) == w, "acceptance without a matching proposal"
            assert w not in accepted_of, f"woman {w} accepted twice in round {k}"
            accepted_of[w] = m
            if husband_start[w] != -1:
                assert wranks[w][m] < wranks[w][husband_start[w]], (
                    "women only ever trade up"
                )

        assert ev.idle == (not ev.acceptances), "idle flag is wrong"
        if ev.idle:
            totals["idle"] += 1
            assert not accelerated, "accelerated runs cannot contain idle rounds"

        # Apply acceptances before judging rejections against the new state.
        for w, m in accepted_of.items():
            old = husband_start[w]
            if old != -1:
                wife[old] = -1
                if final[old] == w:
                    broke_final_pair = True
            husband[w] = m
            wife[m] = w
            pair_round[m] = k

        direct_seen = set()
        for m, w, kind in ev.rejections:
            assert not rejected[m][w], f"pair ({m}, {w}) rejected twice"
            rejected[m][w] = True
            if kind is RejectionKind.DIRECT:
                totals["direct"] += 1
                direct_seen.add((m, w))
                assert proposers.get(m) == w or husband_start[w] == m, (
                    "direct rejection without a live proposal"
                )
            else:
                totals["preemptive"] += 1
                assert accelerated, "plain deferred acceptance swept pre-emptively"
                assert proposers.get(m) != w and husband_start[w] != m
                assert w in accepted_of, "pre-emptive sweep outside an acceptance"
                assert wranks[w][m] > wranks[w][accepted_of[w]], (
                    "pre-emptive rejections only hit men below the new partner"
                )

        for m, w in ev.proposals:
            if accepted_of.get(w) != m:
                assert (m, w) in direct_seen, "losing proposer was not rejected"
        for w, m in accepted_of.items():
            if husband_start[w] != -1:
                assert (husband_start[w], w) in direct_seen, (
                    "displaced partner was not rejected"
                )
        if ev.idle:
            assert all((m, w) in direct_seen for m, w in ev.proposals)

        for m in range(n):
            if wife[m] == -1:
                assert any(not rejected[m][x] for x in mprefs[m]), (
                    f"man {m} has nobody left to propose to"
                )

    assert trace.rounds, "a market with n >= 2 needs at least one round"
    last = trace.rounds[-1]
    assert not any(k is RejectionKind.DIRECT for _m, _w, k in last.rejections), (
        "the run must end with a round in which no proposal is rejected"
    )
    assert all(w != -1 for w in wife), "market did not clear"
    assert tuple(wife) == final
    assert not broke_final_pair, "a final pair broke and re-formed"

    m = trace.metrics
    assert m.total_rounds == len(trace.rounds)
    assert m.total_proposals == totals["proposals"]
    assert m.direct_rejections == totals["direct"]
    assert m.preemptive_rejections == totals["preemptive"]
    assert m.total_rejections == totals["direct"] + totals["preemptive"]
    assert m.idle_rounds == totals["idle"]
    assert m.final_pair_round == tuple(pair_round)
    assert max(m.final_pair_round) == m.total_rounds
