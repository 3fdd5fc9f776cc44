import json

import numpy as np
import pytest

from ioaco import OptimizerConfig, get_problem, run
from ioaco.outranking import best_compromise_indices
from ioaco.optimizer import FunctionProblem, initialize, normalize, rank_population, step

import oracles
from conftest import simple_dm


def toy_problem():
    def f(X):
        x = X[:, 0]
        return np.column_stack([x ** 2, (x - 1.0) ** 2])
    return FunctionProblem(f, np.array([-1.0]), np.array([2.0]), n_obj=2, id="toy")


def small(mode="preference", seed=1, **kw):
    base = dict(kappa=12, n_ants=8, iter_max=15, mode=mode, seed=seed)
    base.update(kw)
    return OptimizerConfig(**base)


class TestNormalize:
    def test_hand_example(self):
        assert normalize([[0, 10], [5, 20]]).tolist() == [[0, 0], [1, 1]]

    def test_degenerate_range(self):
        assert np.all(normalize([[3.0, 1.0]] * 4) == 0.0)

    def test_unit_identity(self, rng):
        F = rng.random((20, 3))
        F[0], F[1] = 0.0, 1.0
        assert normalize(F) == pytest.approx(F, abs=1e-12)

    def test_epsilon_floor(self):
        out = normalize([[0.0], [1e-5]], epsilon=1e-3)
        assert out[1, 0] == pytest.approx(0.01)


class TestConfig:
    @pytest.mark.parametrize("kw", [dict(iter_max=0), dict(kappa=1), dict(mode="nsga"), dict(xi=0.0),
                                    dict(zeta=-1.0), dict(seed=-3)])
    def test_rejects(self, kw):
        with pytest.raises(ValueError):
            OptimizerConfig(**kw)

    def test_defaults(self):
        c = OptimizerConfig()
        assert (c.zeta, c.xi, c.epsilon, c.alpha) == (0.1, 0.5, 1e-3, 0.5)
        assert c.n_ants == c.kappa

    def test_preference_needs_dm(self):
        with pytest.raises(ValueError, match="DM"):
            run(get_problem("dtlz2", 3), None, small())

    def test_dm_size_mismatch(self):
        with pytest.raises(ValueError, match="objectives"):
            run(get_problem("dtlz2", 3), simple_dm(5), small())


class TestLoop:
    problem = get_problem("dtlz2", 3)
    dm = simple_dm(3)

    def test_initial_archive(self):
        cfg = small()
        a = initialize(self.problem, cfg, np.random.default_rng(0), self.dm).archive
        b = initialize(self.problem, cfg, np.random.default_rng(0), self.dm).archive
        assert np.array_equal(a.x, b.x)
        assert np.all((a.x >= 0) & (a.x <= 1))
        assert a.fronts.min() == 1
        ref = oracles.fronts(normalize(a.f).tolist(), self.dm)
        assert sorted(ref) == a.fronts.tolist()

    @pytest.mark.parametrize("iters", [1, 4])
    def test_evaluation_accounting(self, iters):
        res = run(self.problem, self.dm, small(iter_max=iters))
        assert res.evaluations == 12 + iters * 8

    @pytest.mark.parametrize("mode", ["preference", "pareto-baseline"])
    def test_archive_invariants(self, mode):
        cfg = small(mode=mode, trace=True)
        rng = np.random.default_rng(3)
        state = initialize(self.problem, cfg, rng, self.dm)
        for _ in range(10):
            state = step(state, self.problem, self.dm, cfg, rng)
            a = state.archive
            assert len(a.x) == cfg.kappa
            assert np.all(np.diff(a.fronts) >= 0)
            assert np.all(np.diff(a.weights) <= 0)
        assert len(state.trace) == 11

    def test_step_deterministic(self):
        cfg = small()
        state = initialize(self.problem, cfg, np.random.default_rng(5), self.dm)
        s1 = step(state, self.problem, self.dm, cfg, np.random.default_rng(8))
        s2 = step(state, self.problem, self.dm, cfg, np.random.default_rng(8))
        assert np.array_equal(s1.archive.x, s2.archive.x)

    def test_dominating_solution_survives(self):
        # objectives equal the decision vector, so the origin dominates every other point
        problem = FunctionProblem(lambda X: X.copy(), np.zeros(3), np.ones(3), n_obj=3)
        cfg = small()
        for seed in range(5):
            rng = np.random.default_rng(seed)
            state = initialize(problem, cfg, rng, self.dm)
            a = state.archive
            a.x[-1] = a.f[-1] = 0.0
            nxt = step(state, problem, self.dm, cfg, rng)
            assert np.any(np.all(nxt.archive.f == 0.0, axis=1))

    def test_global_dominator_ranked_first(self, rng):
        F = rng.random((15, 3)) + 0.1
        F[7] = 0.0
        r = rank_population(F, np.zeros(15), self.dm, "preference", 1e-3)
        assert r.fronts[7] == 1 and r.weakness[7] == 0

    def test_rerank_idempotent(self):
        for mode in ("preference", "pareto-baseline"):
            res = run(self.problem, self.dm, small(mode=mode, iter_max=10))
            a = res.archive
            again = rank_population(a.f, a.violation, self.dm, mode, 1e-3)
            assert np.array_equal(again.fronts, a.fronts)
            assert np.array_equal(res.best_indices, np.flatnonzero(a.fronts == 1))

    def test_baseline_ignores_dm(self):
        r1 = run(self.problem, simple_dm(3, w=[0.6, 0.2, 0.2]), small(mode="pareto-baseline"))
        r2 = run(self.problem, simple_dm(3), small(mode="pareto-baseline"))
        assert np.array_equal(r1.archive.x, r2.archive.x)
        assert r1.to_dict()["dm"] is None

    def test_run_deterministic_and_serializable(self):
        r1 = run(self.problem, self.dm, small(seed=11))
        r2 = run(self.problem, self.dm, small(seed=11))
        assert json.dumps(r1.to_dict()) == json.dumps(r2.to_dict())
        d = json.loads(json.dumps(r1.to_dict()))
        assert d["evaluations"] == r1.evaluations and d["seed"] == 11
        assert set(d["archive"]) >= {"x", "f", "f_norm", "fronts"}

    def test_constrained_feasibility_first(self):
        F = np.array([[0.0, 0.0], [1.0, 1.0], [0.5, 0.5], [2.0, 2.0]])
        viol = np.array([0.3, 0.0, 0.1, 0.0])
        r = rank_population(F, viol, simple_dm(2), "preference", 1e-3)
        assert r.fronts[1] < r.fronts[2] < r.fronts[0]
        assert r.fronts[3] < r.fronts[2]


def test_weighted_dm_moves_toward_objective_one():
    # dense-grid reference: where each DM's best compromise sits
    grid = np.linspace(0.0, 1.0, 201)
    F = np.column_stack([grid ** 2, (grid - 1) ** 2])
    favour = simple_dm(2, w=[0.8, 0.2], q=(0.0, 0.01), v=(0.3, 0.5))
    equal = simple_dm(2, q=(0.0, 0.01), v=(0.3, 0.5))
    x_fav = grid[best_compromise_indices(normalize(F), favour)]
    x_eq = grid[best_compromise_indices(normalize(F), equal)]
    assert x_fav.mean() < x_eq.mean()

    problem = toy_problem()
    cfg = dict(kappa=20, n_ants=20, iter_max=40)
    means = {}
    for name, dm in (("favour", favour), ("equal", equal)):
        centres = [run(problem, dm, OptimizerConfig(seed=s, **cfg)).best_x[:, 0].mean() for s in range(30)]
        means[name] = float(np.mean(centres))
    assert means["favour"] < means["equal"]
    assert abs(means["favour"]) < abs(means["equal"])
