"""Random growth: determinism, trace replay, backend equivalence, and
statistical agreement with the exact laws."""

import math

import numpy as np
import pytest
from scipy import stats

from cherryforks import (
    Model,
    count_subtrees,
    grow,
    replay,
    sample_counts,
    step_choice_counts,
    table_value,
    topology_key,
)
from cherryforks import _kernels
from cherryforks.growth import _draw_choices, counts_for_choices
from cherryforks.trees import TreeError, growth_edge_lists

MODELS = (Model.YHK, Model.PDA)


class TestGrow:
    @pytest.mark.parametrize("model", MODELS)
    @pytest.mark.parametrize("rooted", [False, True])
    def test_deterministic(self, model, rooted):
        t1, tr1 = grow(model, 15, rooted=rooted, seed=123)
        t2, tr2 = grow(model, 15, rooted=rooted, seed=123)
        assert tr1 == tr2
        assert t1 == t2

    def test_different_seeds_differ(self):
        t1, _ = grow(Model.YHK, 30, seed=1)
        t2, _ = grow(Model.YHK, 30, seed=2)
        assert topology_key(t1) != topology_key(t2)

    @pytest.mark.parametrize("model", MODELS)
    def test_replay_is_bit_identical(self, model):
        for seed in range(20):
            tree, trace = grow(model, 12, rooted=(seed % 2 == 0), seed=seed)
            assert replay(trace) == tree

    def test_yhk_samples_a_permutation(self):
        _, trace = grow(Model.YHK, 8, seed=5)
        assert sorted(trace.permutation) == list(range(1, 9))
        # some seed must shuffle; seed 5 happens to
        assert trace.permutation != tuple(range(1, 9))

    def test_yhk_fixed_order_is_opt_in(self):
        _, trace = grow(Model.YHK, 8, seed=5, sample_permutation=False)
        assert trace.permutation == tuple(range(1, 9))

    def test_pda_uses_fixed_order(self):
        _, trace = grow(Model.PDA, 8, seed=5)
        assert trace.permutation == tuple(range(1, 9))

    def test_pda6_support(self):
        for seed in range(50):
            tree, _ = grow(Model.PDA, 6, seed=seed)
            c = count_subtrees(tree)
            assert (c.a, c.b) in {(2, 2), (0, 3)}

    def test_yhk4_always_two_cherries(self):
        for seed in range(50):
            tree, _ = grow(Model.YHK, 4, seed=seed)
            c = count_subtrees(tree)
            assert (c.a, c.b) == (0, 2)

    def test_minimum_n(self):
        with pytest.raises(TreeError):
            grow(Model.YHK, 1, seed=0)

    def test_step_choice_counts(self):
        assert step_choice_counts(Model.PDA, 6, False) == [1, 3, 5, 7]
        assert step_choice_counts(Model.PDA, 6, True) == [3, 5, 7, 9]
        assert step_choice_counts(Model.YHK, 6, False) == [1, 3, 4, 5]
        assert step_choice_counts(Model.YHK, 6, True) == [2, 3, 4, 5]


class TestKernels:
    @pytest.mark.parametrize("model", MODELS)
    @pytest.mark.parametrize("rooted", [False, True])
    def test_backends_match_reference(self, model, rooted):
        n, reps = 13, 400
        rng = np.random.default_rng(99)
        choices = _draw_choices(model, n, rooted, rng, reps)
        pendant = model is Model.YHK
        a_nb, b_nb = _kernels.simulate_counts(n, rooted, pendant, choices,
                                              backend="numba")
        a_np, b_np = _kernels.simulate_counts(n, rooted, pendant, choices,
                                              backend="numpy")
        ref = [counts_for_choices(model, n, rooted, choices[r])
               for r in range(reps)]
        assert a_nb.tolist() == [r[0] for r in ref]
        assert b_nb.tolist() == [r[1] for r in ref]
        assert a_np.tolist() == a_nb.tolist()
        assert b_np.tolist() == b_nb.tolist()

    def test_env_flag_validation(self, monkeypatch):
        monkeypatch.setenv("CHERRYFORKS_BACKEND", "fortran")
        with pytest.raises(ValueError):
            _kernels.resolve_backend()

    def test_env_flag_selects_numpy(self, monkeypatch):
        monkeypatch.setenv("CHERRYFORKS_BACKEND", "numpy")
        assert _kernels.resolve_backend() == "numpy"


class TestSampleCounts:
    def test_histogram_total_and_determinism(self):
        h1 = sample_counts(Model.PDA, 10, reps=5000, seed=4)
        h2 = sample_counts(Model.PDA, 10, reps=5000, seed=4)
        assert h1 == h2
        assert sum(h1.values()) == 5000

    def test_single_rep(self):
        h = sample_counts(Model.YHK, 8, reps=1, seed=0)
        assert sum(h.values()) == 1 and len(h) == 1

    @pytest.mark.parametrize("model", MODELS)
    @pytest.mark.parametrize("rooted", [False, True])
    def test_backends_agree_end_to_end(self, model, rooted):
        kw = dict(reps=4000, seed=17)
        h_nb = sample_counts(model, 16, rooted=rooted, backend="numba", **kw)
        h_np = sample_counts(model, 16, rooted=rooted, backend="numpy", **kw)
        assert h_nb == h_np

    def test_worker_partition_invariance(self):
        # chunks are independently seeded by (seed, chunk_index), so
        # replaying them out of order, as parallel workers would, merges
        # to the same histogram
        import cherryforks.growth as growth
        reps = 3 * growth.SAMPLE_CHUNK + 517
        h_serial = sample_counts(Model.YHK, 9, reps=reps, seed=8)
        merged: dict = {}
        sizes = [growth.SAMPLE_CHUNK] * 3 + [517]
        for chunk_index in (2, 0, 3, 1):
            ss = np.random.SeedSequence(entropy=8, spawn_key=(chunk_index,))
            rng = np.random.default_rng(ss)
            choices = _draw_choices(Model.YHK, 9, False, rng,
                                    sizes[chunk_index])
            a, b = _kernels.simulate_counts(9, False, True, choices)
            for ai, bi in zip(a.tolist(), b.tolist()):
                merged[(ai, bi)] = merged.get((ai, bi), 0) + 1
        assert merged == h_serial

    def test_pda6_matches_base_distribution(self):
        reps = 100_000
        h = sample_counts(Model.PDA, 6, reps=reps, seed=2024)
        p = 6 / 7
        se = math.sqrt(p * (1 - p) / reps)
        assert abs(h[(2, 2)] / reps - p) < 3 * se

    def test_yhk6_matches_base_distribution(self):
        reps = 100_000
        h = sample_counts(Model.YHK, 6, reps=reps, seed=2024)
        p = 1 / 5
        se = math.sqrt(p * (1 - p) / reps)
        assert abs(h[(0, 3)] / reps - p) < 3 * se

    @pytest.mark.parametrize("model", MODELS)
    @pytest.mark.parametrize("n", [10, 20, 50])
    def test_means_within_four_se(self, model, n):
        reps = 100_000
        h = sample_counts(model, n, reps=reps, seed=20240801)
        tot = sum(h.values())
        mean_a = sum(a * c for (a, b), c in h.items()) / tot
        mean_b = sum(b * c for (a, b), c in h.items()) / tot
        for mean, field in ((mean_a, "mean_a"), (mean_b, "mean_b")):
            expected = float(table_value(model, False, field, n))
            var = float(table_value(model, False, field.replace("mean", "var"), n))
            assert abs(mean - expected) < 4 * math.sqrt(var / tot), field


class TestPdaUniformity:
    """PDA = the uniform law on labeled trees.

    With the fixed insertion order, distinct choice paths give distinct
    labeled trees (checked exactly below), so uniformity over trees is
    uniformity over paths; the latter is chi-square tested on a million
    mixed-radix path ids.
    """

    @pytest.mark.parametrize("n", [5, 6])
    def test_growth_paths_biject_onto_trees(self, n):
        keys = set()
        total = 0
        for edges in growth_edge_lists(n, False):
            keys.add(tuple(sorted(tuple(sorted(e)) for e in edges)))
            total += 1
        expected = math.prod(2 * k - 3 for k in range(2, n))
        assert total == expected
        assert len(keys) == total

    @pytest.mark.parametrize("n", [5, 6])
    def test_chi_square_uniform(self, n):
        reps = 1_000_000
        moduli = step_choice_counts(Model.PDA, n, False)
        n_trees = math.prod(moduli)
        # identical stream discipline to sample_counts: per-chunk spawn keys
        import cherryforks.growth as growth
        ids = []
        done = 0
        chunk = 0
        while done < reps:
            todo = min(growth.SAMPLE_CHUNK, reps - done)
            ss = np.random.SeedSequence(entropy=31337, spawn_key=(chunk,))
            rng = np.random.default_rng(ss)
            choices = _draw_choices(Model.PDA, n, False, rng, todo)
            path_id = np.zeros(todo, dtype=np.int64)
            for j, m in enumerate(moduli):
                path_id = path_id * m + choices[:, j]
            ids.append(path_id)
            done += todo
            chunk += 1
        counts = np.bincount(np.concatenate(ids), minlength=n_trees)
        _, pvalue = stats.chisquare(counts)
        assert pvalue > 0.001
