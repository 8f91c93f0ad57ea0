import itertools

import pytest

from matchkit import (
    GeneratorParams,
    delete_unattractive_step,
    enumerate_stable,
    generate,
    man_optimal,
    normal_form,
    run_ada,
    run_da,
    validate_instance,
    woman_optimal,
)
from matchkit.core import Matching
from matchkit.idua import CandidateSets

from test_core import random_instance


def sets_of(instance):
    return CandidateSets.full(instance)


class TestStep:
    def test_example1_first_sweep(self, example1):
        after = delete_unattractive_step(example1, sets_of(example1))
        # w4 keeps only her top man m4 (his first choice is her), w5 only m5;
        # the same sweep already collapses w1 to m1 because both better men
        # have first choices elsewhere and their rules bite symmetrically.
        assert after.women_sets[3] == (3,)
        assert after.women_sets[4] == (4,)
        assert after.women_sets[0] == (0,)
        assert after.women_sets[1] == (0, 2, 1)
        assert after.women_sets[2] == (2, 1)
        assert after.men_sets == ((0, 1), (1, 2), (2, 1), (3,), (4,))
        assert after.is_symmetric()

    def test_idempotent_at_fixed_point(self, example1):
        sets = sets_of(example1)
        while True:
            nxt = delete_unattractive_step(example1, sets)
            if nxt == sets:
                break
            sets = nxt
        assert delete_unattractive_step(example1, sets) == sets

    def test_n2_direct_deletion(self):
        # Both men rank w0 first and w0 prefers m0, so (m1, w0) is gone.
        inst = validate_instance([[0, 1], [0, 1]], [[0, 1], [0, 1]])
        after = delete_unattractive_step(inst, sets_of(inst))
        assert 1 not in after.women_sets[0]
        assert 0 not in after.men_sets[1]
        assert after.is_symmetric()

    def test_monotone_shrink(self):
        inst = random_instance(6, seed=11)
        sets = sets_of(inst)
        steps = 0
        while True:
            nxt = delete_unattractive_step(inst, sets)
            for before, now in zip(sets.men_sets + sets.women_sets,
                                   nxt.men_sets + nxt.women_sets):
                assert set(now) <= set(before)
            if nxt == sets:
                break
            sets = nxt
            steps += 1
        assert steps <= inst.n * inst.n


class TestNormalForm:
    def test_example1_collapses_to_identity(self, example1):
        nf = normal_form(example1)
        assert nf.mu_M.pairs == (0, 1, 2, 3, 4)
        assert nf.mu_W.pairs == (0, 1, 2, 3, 4)
        assert all(len(s) == 1 for s in nf.sets.men_sets)
        assert all(len(s) == 1 for s in nf.sets.women_sets)
        assert nf.iterations == 2

    def test_extremes_are_stable_and_extremal(self):
        for seed in range(40):
            inst = random_instance(5, seed=seed)
            nf = normal_form(inst)
            stable = enumerate_stable(inst)
            pair_sets = {mu.pairs for mu in stable}
            assert nf.mu_M.pairs in pair_sets
            assert nf.mu_W.pairs in pair_sets
            mr = inst.men_rank_rows
            wr = inst.women_rank_rows
            for mu in stable:
                for m in range(inst.n):
                    assert mr[m][nf.mu_M.pairs[m]] <= mr[m][mu.pairs[m]]
                for w in range(inst.n):
                    assert wr[w][nf.mu_W.man_of(w)] <= wr[w][mu.man_of(w)]

    def test_agrees_with_engines_and_oracle(self):
        for seed in range(30):
            inst = generate(GeneratorParams(n=6, c=0.5, seed=seed))
            nf = normal_form(inst)
            assert nf.mu_M.pairs == run_da(inst).final_matching.pairs
            assert nf.mu_M.pairs == run_ada(inst).final_matching.pairs
            assert nf.mu_M.pairs == man_optimal(inst).pairs
            assert nf.mu_W.pairs == woman_optimal(inst).pairs

    def test_unique_stable_matching_means_singletons(self):
        found = 0
        for seed in range(200):
            inst = random_instance(4, seed=seed)
            if len(enumerate_stable(inst)) == 1:
                nf = normal_form(inst)
                assert all(len(s) == 1 for s in nf.sets.men_sets)
                assert all(len(s) == 1 for s in nf.sets.women_sets)
                found += 1
        assert found > 0

    def test_universal_ranking_is_assortative(self):
        # With identical lists on each side the k-th ranked man ends up with
        # the k-th ranked woman, and that matching is the unique stable one.
        for n, seed in ((4, 0), (6, 5)):
            inst = generate(GeneratorParams(n=n, c=1.0, seed=seed))
            men_order = inst.men_lists[0]      # shared ranking of women
            women_order = inst.women_lists[0]  # shared ranking of men
            expected = [0] * n
            for k in range(n):
                expected[women_order[k]] = men_order[k]
            nf = normal_form(inst)
            assert nf.mu_M.pairs == tuple(expected)
            assert nf.mu_W.pairs == tuple(expected)
            assert enumerate_stable(inst) == [Matching(tuple(expected))]


class TestStableSetPreservation:
    def _stable_within(self, instance, sets):
        """Stable matchings of the reduced market, by exhaustive scan."""
        n = instance.n
        allowed = [set(s) for s in sets.men_sets]
        mr = instance.men_rank_rows
        wr = instance.women_rank_rows
        out = []
        for perm in itertools.permutations(range(n)):
            if any(perm[m] not in allowed[m] for m in range(n)):
                continue
            inv = {w: m for m, w in enumerate(perm)}
            blocked = any(
                mr[m][w] < mr[m][perm[m]] and wr[w][m] < wr[w][inv[w]]
                for m in range(n)
                for w in sets.men_sets[m]
            )
            if not blocked:
                out.append(perm)
        return out

    @pytest.mark.parametrize("n,seeds", [(3, range(120)), (4, range(60))])
    def test_reduction_preserves_stable_set(self, n, seeds):
        for seed in seeds:
            inst = random_instance(n, seed=seed)
            nf = normal_form(inst)
            original = [mu.pairs for mu in enumerate_stable(inst)]
            reduced = self._stable_within(inst, nf.sets)
            assert sorted(original) == sorted(reduced)
