import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matchkit import (
    ADA,
    DA,
    GeneratorParams,
    generate,
    is_stable,
    run_ada,
    run_da,
    run_lockstep,
    validate_instance,
)
from matchkit.engines import RejectionKind

from conftest import IDENTITY5
from test_core import random_instance
from trace_replay import replay_and_check

D = RejectionKind.DIRECT
P = RejectionKind.PREEMPTIVE


class TestDaGolden:
    """Frozen round-by-round expectations for the worked 5x5 market."""

    def test_metrics(self, example1):
        m = run_da(example1).metrics
        assert m.total_rounds == 4
        assert m.total_proposals == 10
        assert m.direct_rejections == 5
        assert m.preemptive_rejections == 0
        assert m.total_rejections == 5
        assert m.idle_rounds == 1
        assert m.final_pair_round == (1, 4, 3, 1, 1)

    def test_final_matching(self, example1):
        trace = run_da(example1)
        assert trace.final_matching.pairs == IDENTITY5
        assert is_stable(example1, trace.final_matching)

    def test_rounds(self, example1):
        r1, r2, r3, r4 = run_da(example1).rounds
        assert r1.proposals == [(0, 0), (1, 0), (2, 0), (3, 3), (4, 4)]
        assert r1.acceptances == [(0, 0), (3, 3), (4, 4)]
        assert r1.rejections == [(1, 0, D), (2, 0, D)]
        assert not r1.idle

        # Round 2: both single men hit the same already-well-matched woman.
        assert r2.proposals == [(1, 3), (2, 3)]
        assert r2.acceptances == []
        assert r2.rejections == [(1, 3, D), (2, 3, D)]
        assert r2.idle

        assert r3.proposals == [(1, 4), (2, 2)]
        assert r3.acceptances == [(2, 2)]
        assert r3.rejections == [(1, 4, D)]

        assert r4.proposals == [(1, 1)]
        assert r4.acceptances == [(1, 1)]
        assert r4.rejections == []

    def test_replay(self, example1):
        replay_and_check(example1, run_da(example1))


class TestAdaGolden:
    def test_metrics(self, example1):
        m = run_ada(example1).metrics
        assert m.total_rounds == 2
        assert m.total_proposals == 7
        assert m.direct_rejections == 2
        assert m.preemptive_rejections == 12
        assert m.total_rejections == 14
        assert m.idle_rounds == 0
        assert m.final_pair_round == (1, 2, 2, 1, 1)

    def test_final_matching(self, example1):
        trace = run_ada(example1)
        assert trace.final_matching.pairs == IDENTITY5
        assert is_stable(example1, trace.final_matching)

    def test_round1_preemptive_sweeps(self, example1):
        r1 = run_ada(example1).rounds[0]
        assert r1.proposals == [(0, 0), (1, 0), (2, 0), (3, 3), (4, 4)]
        assert r1.acceptances == [(0, 0), (3, 3), (4, 4)]
        # w1 rejects her two losing proposers directly; w4 and w5 sweep out
        # everyone below their top men, in their own preference order.
        assert [e for e in r1.rejections if e[2] is D] == [(1, 0, D), (2, 0, D)]
        w4_sweep = [m for m, w, k in r1.rejections if w == 3 and k is P]
        w5_sweep = [m for m, w, k in r1.rejections if w == 4 and k is P]
        assert w4_sweep == [1, 0, 2, 4]
        assert w5_sweep == [0, 2, 3, 1]

    def test_round2_skips_preemptive_rejecters(self, example1):
        r2 = run_ada(example1).rounds[1]
        # m2 skips w4 and w5 (both swept him in round 1) straight to w2;
        # m3 skips w4 to w3.
        assert r2.proposals == [(1, 1), (2, 2)]
        assert r2.acceptances == [(1, 1), (2, 2)]
        # The closing round still sweeps: no *proposal* was rejected, which
        # is the termination condition, but w2 and w3 drop their tails.
        assert [e for e in r2.rejections if e[2] is D] == []
        assert [(m, w) for m, w, k in r2.rejections if k is P] == [
            (3, 1),
            (4, 1),
            (1, 2),
            (0, 2),
        ]

    def test_replay(self, example1):
        replay_and_check(example1, run_ada(example1))


class TestSmallMarkets:
    def test_disjoint_tops_one_round(self):
        inst = validate_instance([[0, 1], [1, 0]], [[0, 1], [0, 1]])
        da = run_da(inst).metrics
        assert da.total_rounds == 1
        assert da.total_proposals == 2
        assert da.total_rejections == 0
        # The accelerated run also finishes immediately, but w0 still sweeps
        # the man she ranks below her accepted top choice.
        ada = run_ada(inst).metrics
        assert ada.total_rounds == 1
        assert ada.total_proposals == 2
        assert ada.direct_rejections == 0
        assert ada.preemptive_rejections == 1

    def test_universal_ranking_cascade(self):
        # Identical lists on both sides: one woman is filled per round and
        # the algorithms coincide exactly.
        for n in (2, 5, 8):
            inst = generate(GeneratorParams(n=n, c=1.0, seed=3))
            da = run_da(inst).metrics
            ada = run_ada(inst).metrics
            assert da.total_proposals == ada.total_proposals == n * (n + 1) // 2
            assert da.total_rounds == ada.total_rounds == n
            assert ada.preemptive_rejections == 0

    def test_collect_events_off_keeps_metrics(self, example1):
        full = run_ada(example1)
        bare = run_ada(example1, collect_events=False)
        assert bare.rounds == []
        assert bare.final_matching.pairs == full.final_matching.pairs
        for field in (
            "total_rounds",
            "total_proposals",
            "direct_rejections",
            "preemptive_rejections",
            "total_rejections",
            "idle_rounds",
            "final_pair_round",
        ):
            assert getattr(bare.metrics, field) == getattr(full.metrics, field)


class TestLockstep:
    def test_example1_containment_and_deleted_sets(self, example1):
        da, ada, report = run_lockstep(example1)
        assert report.holds
        assert all(r.holds for r in report.rounds)
        assert report.deleted_pairs(DA, 1) == {(1, 0), (2, 0)}
        ada_r1 = report.deleted_pairs(ADA, 1)
        assert (1, 0) in ada_r1 and (2, 0) in ada_r1
        assert len(ada_r1) == 10  # the two direct ones plus eight swept pairs
        assert report.deleted_pairs(DA, 4) <= report.deleted_pairs(ADA, 4)

    def test_n2_trivial(self):
        inst = validate_instance([[0, 1], [0, 1]], [[0, 1], [1, 0]])
        _da, _ada, report = run_lockstep(inst)
        assert report.holds

    def test_generated_markets_hold_containment(self):
        # A spread of moderately sized markets across the bias range.
        reps = 334
        for c in (0.0, 0.5, 0.9):
            for rep in range(reps):
                inst = generate(GeneratorParams(n=16, c=c, seed=10_000 + rep))
                _da, _ada, report = run_lockstep(inst)
                assert report.holds, (c, rep, report.violations[:3])


class TestRelations:
    @given(st.integers(2, 7), st.integers(0, 2**32))
    @settings(max_examples=60, deadline=None)
    def test_paired_invariants_random(self, n, seed):
        inst = random_instance(n, seed)
        da = run_da(inst)
        ada = run_ada(inst)
        assert ada.final_matching.pairs == da.final_matching.pairs
        assert ada.metrics.total_proposals <= da.metrics.total_proposals
        assert ada.metrics.total_rounds <= da.metrics.total_rounds
        assert all(
            a <= d
            for a, d in zip(ada.metrics.final_pair_round, da.metrics.final_pair_round)
        )
        assert ada.metrics.idle_rounds == 0
        assert ada.metrics.total_rejections >= da.metrics.total_rejections
        replay_and_check(inst, da)
        replay_and_check(inst, ada)

    def test_first_round_equivalence(self):
        for seed in range(20):
            inst = generate(GeneratorParams(n=12, c=0.5, seed=seed))
            da_r1 = run_da(inst).rounds[0]
            ada_r1 = run_ada(inst).rounds[0]
            assert da_r1.proposals == ada_r1.proposals
            da_direct = [e for e in da_r1.rejections if e[2] is D]
            ada_direct = [e for e in ada_r1.rejections if e[2] is D]
            assert da_direct == ada_direct

    def test_wall_time_positive(self, example1):
        assert run_da(example1).metrics.wall_time > 0.0
