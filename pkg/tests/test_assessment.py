import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ioaco import build_aroi, get_problem, indicators, sample_true_front
from ioaco.assessment import ARoI, borda_ranking, compare, compare_problem, holm_bonferroni, wilcoxon_rank_sum
from ioaco.optimizer import normalize

import oracles
from conftest import random_dm, simple_dm


class TestAroi:
    def test_single_point(self):
        a = build_aroi([[0.3, 0.7]], simple_dm(2))
        assert a.points.tolist() == [[0.3, 0.7]] and len(a) == 1

    def test_dominated_duplicates_excluded(self, rng):
        best = np.array([0.2, 0.2, 0.2])
        cluster = 0.5 + 1e-4 * rng.random((10, 3))
        sample = np.vstack([cluster, best])
        a = build_aroi(sample, simple_dm(3), normalized=False)
        assert a.indices.tolist() == [10]

    def test_oracle(self, rng):
        for _ in range(5):
            dm = random_dm(rng, 3)
            F = sample_true_front(get_problem("dtlz2", 3), 120, int(rng.integers(1 << 30)))
            a = build_aroi(F, dm)
            assert a.indices.tolist() == oracles.best_compromise(normalize(F).tolist(), dm)
            assert np.array_equal(a.points, F[a.indices])

    def test_dm_location(self):
        F = sample_true_front(get_problem("dtlz1", 3), 500, 11)
        first = simple_dm(3, w=[0.8, 0.1, 0.1])
        last = simple_dm(3, w=[0.1, 0.1, 0.8])
        c1 = build_aroi(F, first).points.mean(axis=0)
        c2 = build_aroi(F, last).points.mean(axis=0)
        assert np.linalg.norm(c1 - c2) > 0
        assert c1[0] < c2[0] and c2[2] < c1[2]

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            build_aroi(np.zeros((0, 2)), simple_dm(2))


class TestIndicators:
    def test_hand_value(self):
        b = indicators([[0.0, 0.0]], [[3.0, 4.0]])
        assert (b.min_euclid, b.avg_euclid, b.min_cheby, b.avg_cheby) == (5.0, 5.0, 4.0, 4.0)

    def test_identical_sets(self, rng):
        P = rng.random((6, 3))
        assert indicators(P, ARoI(P, np.arange(6))).as_dict() == dict.fromkeys(
            ("min_euclid", "avg_euclid", "min_cheby", "avg_cheby"), 0.0)

    def test_worse_point_monotone(self, rng):
        X, R = rng.random((5, 3)), rng.random((4, 3))
        before = indicators(X, R)
        after = indicators(np.vstack([X, [10.0, 10.0, 10.0]]), R)
        assert after.min_euclid == before.min_euclid and after.min_cheby == before.min_cheby
        assert after.avg_euclid >= before.avg_euclid and after.avg_cheby >= before.avg_cheby

    def test_all_pairs(self):
        b = indicators([[0.0, 0.0]], [[3.0, 4.0], [0.0, 1.0]], average="all-pairs")
        assert b.avg_euclid == pytest.approx(3.0)
        assert b.min_euclid == 1.0

    @settings(max_examples=50)
    @given(st.integers(0, 2**32 - 1))
    def test_properties(self, seed):
        rng = np.random.default_rng(seed)
        X, R = rng.random((int(rng.integers(1, 8)), 4)), rng.random((int(rng.integers(1, 8)), 4))
        b = indicators(X, R)
        assert 0 <= b.min_euclid <= b.avg_euclid and 0 <= b.min_cheby <= b.avg_cheby
        assert b.min_cheby <= b.min_euclid
        shuffled = indicators(rng.permutation(X), rng.permutation(R))
        assert shuffled.min_euclid == b.min_euclid
        assert shuffled.avg_euclid == pytest.approx(b.avg_euclid, rel=1e-12)

    def test_errors(self):
        with pytest.raises(ValueError, match="objective"):
            indicators([[0, 0]], [[0, 0, 0]])
        with pytest.raises(ValueError):
            indicators(np.zeros((0, 2)), [[0, 0]])


class TestWilcoxon:
    def test_separated(self):
        a, b = np.arange(1, 31), np.arange(101, 131)
        res = wilcoxon_rank_sum(a, b)
        assert res.significant
        assert res.p_value == pytest.approx(oracles.rank_sum_permutation_p(a, b, 10_000), abs=0.02)

    def test_identical(self):
        a = np.arange(10.0)
        assert not wilcoxon_rank_sum(a, a).significant
        assert wilcoxon_rank_sum(np.ones(6), np.ones(8)).p_value == 1.0

    def test_symmetric(self, rng):
        a, b = rng.random(12), rng.random(9) + 0.2
        assert wilcoxon_rank_sum(a, b).p_value == wilcoxon_rank_sum(b, a).p_value

    def test_too_small(self):
        with pytest.raises(ValueError):
            wilcoxon_rank_sum([1, 2, 3], [4, 5, 6, 7, 8])

    def test_against_permutation(self, rng):
        worst = 0.0
        for _ in range(25):
            n1, n2 = rng.integers(8, 13, size=2)
            shift = rng.uniform(0.0, 1.5)
            a = np.round(rng.normal(size=n1), 1)
            b = np.round(rng.normal(shift, size=n2), 1)
            p_perm = oracles.rank_sum_permutation_p_fast(a, b, seed=int(rng.integers(1 << 30)))
            worst = max(worst, abs(wilcoxon_rank_sum(a, b).p_value - p_perm))
        assert worst <= 0.02

    def test_against_enumeration(self):
        a, b = [0.1, 0.5, 0.9, 1.3, 1.4], [0.2, 1.0, 1.6, 1.7, 2.0, 2.2]
        assert wilcoxon_rank_sum(a, b).p_value == pytest.approx(oracles.exact_rank_sum_p(a, b), abs=0.03)


class TestHolm:
    def test_examples(self):
        assert holm_bonferroni([0.01]) == [True]
        assert holm_bonferroni([0.01, 0.02, 0.04]) == [True, True, True]
        assert holm_bonferroni([0.04, 0.04, 0.04]) == [False, False, False]
        assert holm_bonferroni([0.04, 0.001, 0.03]) == [False, True, False]
        assert holm_bonferroni([]) == []

    def test_rejects_bad(self):
        with pytest.raises(ValueError):
            holm_bonferroni([0.1, 1.2])

    @given(st.lists(st.floats(0, 1), min_size=1, max_size=20))
    def test_monotone(self, p):
        rej = holm_bonferroni(p)
        for i in range(len(p)):
            for j in range(len(p)):
                if rej[i] and p[j] <= p[i]:
                    assert rej[j]


class TestBorda:
    def test_examples(self):
        assert borda_ranking([{"A": 1, "B": 2, "C": 3}]) == ({"A": 1.0, "B": 2.0, "C": 3.0}, ["A", "B", "C"])
        sums, _ = borda_ranking([{"A": 1.5, "B": 1.5, "C": 3}])
        assert sums == {"A": 1.5, "B": 1.5, "C": 3.0}

    def test_inconsistent(self):
        with pytest.raises(ValueError):
            borda_ranking([{"A": 1, "B": 2}, {"A": 1, "C": 2}])

    def test_table_identity(self, rng):
        # any 3-algorithm campaign over 72 problems sums to 72 * 6
        samples = {}
        for p in range(72):
            shifts = rng.permutation([0.0, 0.0, 3.0])
            samples[f"p{p:02d}"] = {alg: {"min_euclid": rng.normal(s, 1.0, 10)}
                                    for alg, s in zip("ABC", shifts)}
        verdict = compare(samples, indicators_=("min_euclid",))
        assert sum(verdict.borda["min_euclid"].values()) == pytest.approx(432.0)
        assert 120.0 + 143.0 + 169.0 == 432.0

    @given(st.permutations(range(6)))
    def test_order_invariant(self, perm):
        table = [{"A": 1, "B": 2, "C": 3}, {"A": 2, "B": 1, "C": 3}, {"A": 1.5, "B": 1.5, "C": 3},
                 {"A": 3, "B": 2, "C": 1}, {"A": 1, "B": 3, "C": 2}, {"A": 2, "B": 2, "C": 2}]
        assert borda_ranking([table[i] for i in perm]) == borda_ranking(table)


class TestCompare:
    def test_clear_winner(self):
        pos, pairs = compare_problem({"io": np.arange(1.0, 11.0), "bl": np.arange(101.0, 111.0)})
        assert pos == {"bl": 2.0, "io": 1.0}
        assert pairs[0].winner == "io" and pairs[0].reject

    def test_draw(self):
        pos, pairs = compare_problem({"a": np.arange(10.0), "b": np.arange(10.0), "c": np.arange(50.0, 60.0)})
        assert pos == {"a": 1.5, "b": 1.5, "c": 3.0}

    def test_positions_permutation(self, rng):
        s = {alg: rng.normal(i * 0.3, 1.0, 15) for i, alg in enumerate("ABCD")}
        pos, _ = compare_problem(s)
        assert sum(pos.values()) == pytest.approx(10.0)

    def test_wins(self):
        v = compare({"p": {"io": {"min_euclid": np.arange(10.0)}, "bl": {"min_euclid": np.arange(50.0, 60.0)}}},
                    indicators_=("min_euclid",))
        assert v.wins("min_euclid", "io", "bl") == ["p"]
        assert v.wins("min_euclid", "bl", "io") == []
