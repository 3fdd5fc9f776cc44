"""IO-ACO main loop and its preference-free baseline.

Each iteration the colony builds ``n_ants`` solutions from the archive,
merges them with the archive, normalizes the merged objectives, ranks the
merged set and keeps the ``kappa`` best as the new archive.

Ranking modes:

``preference``
    Outranking strength/weakness fronts under a :class:`~ioaco.outranking.DmModel`;
    archive weights follow the front index.
``pareto-baseline``
    Non-dominated sorting fronts, crowding distance inside a front, and the
    positional archive weights. The DM model is ignored.

Constrained problems use a feasibility-first rule: every feasible solution
ranks ahead of every infeasible one, and infeasible solutions are ordered by
their constraint violation.
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np
from scipy.stats import rankdata

from .aco import PheromoneArchive, SearchSpace, construct_solutions, rank_weights, rank_weights_positional
from .outranking import DmModel, fronts_from_counts, relation_matrices
from .pareto import crowding_distance, nondominated_sort

log = logging.getLogger(__name__)

MODES = ("preference", "pareto-baseline")


@dataclass
class OptimizerConfig:
    kappa: int = 50
    n_ants: int | None = None
    iter_max: int = 300
    zeta: float = 0.1
    xi: float = 0.5
    mode: str = "preference"
    epsilon: float = 1e-3
    # kept for configuration compatibility; min-max normalization does not use it
    alpha: float = 0.5
    seed: int = 0
    trace: bool = False

    def __post_init__(self):
        if self.n_ants is None:
            self.n_ants = self.kappa
        self.validate()

    @property
    def ants(self) -> int:
        return int(self.n_ants)

    def validate(self):
        if int(self.iter_max) < 1:
            raise ValueError(f"iter_max must be >= 1, got {self.iter_max}")
        if int(self.kappa) < 2:
            raise ValueError(f"kappa must be >= 2, got {self.kappa}")
        if int(self.n_ants) < 1:
            raise ValueError(f"n_ants must be >= 1, got {self.n_ants}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if not self.zeta > 0:
            raise ValueError(f"zeta must be positive, got {self.zeta}")
        if not 0 < self.xi <= 1:
            raise ValueError(f"xi must lie in (0, 1], got {self.xi}")
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if int(self.seed) < 0:
            raise ValueError("seed must be a non-negative integer")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class FunctionProblem:
    """Adapter turning a vectorized callable into an optimizable problem.

    ``func`` maps an ``(N, dim)`` batch to ``(N, n_obj)`` objectives, or to an
    ``(F, violation)`` pair for constrained problems.
    """

    func: Callable
    lower: np.ndarray
    upper: np.ndarray
    n_obj: int
    id: str = "custom"

    def evaluate(self, X):
        out = self.func(np.atleast_2d(X))
        if isinstance(out, tuple):
            return np.asarray(out[0], dtype=float), np.asarray(out[1], dtype=float)
        F = np.asarray(out, dtype=float)
        return F, np.zeros(F.shape[0])


def normalize(F, epsilon: float = 1e-3) -> np.ndarray:
    """Per-objective min-max scaling over the set, with the range floored at ``epsilon``."""
    F = np.asarray(F, dtype=float)
    lo = F.min(axis=0)
    span = np.maximum(F.max(axis=0) - lo, epsilon)
    return (F - lo) / span


@dataclass
class Ranking:
    fronts: np.ndarray
    strength: np.ndarray
    weakness: np.ndarray
    f_norm: np.ndarray
    secondary: np.ndarray  # larger is better inside a front


def rank_population(F, violation, dm: DmModel | None, mode: str, epsilon: float) -> Ranking:
    """Normalize and rank a set of solutions.

    Normalization uses the feasible members' extremes when any exist. Fronts
    are 1-based; infeasible members get the fronts after the last feasible one.
    """
    F = np.asarray(F, dtype=float)
    violation = np.asarray(violation, dtype=float)
    N = F.shape[0]
    feasible = violation <= 0.0
    ref = F[feasible] if feasible.any() else F
    lo = ref.min(axis=0)
    span = np.maximum(ref.max(axis=0) - lo, epsilon)
    f_norm = (F - lo) / span

    fronts = np.zeros(N, dtype=np.int64)
    strength = np.zeros(N, dtype=np.int64)
    weakness = np.zeros(N, dtype=np.int64)
    secondary = np.zeros(N)
    idx = np.flatnonzero(feasible)
    if idx.size:
        G = f_norm[idx]
        if mode == "preference":
            rel = relation_matrices(G, dm)
            s = rel.outranks.copy()
            np.fill_diagonal(s, False)
            pr = rel.prefers.copy()
            np.fill_diagonal(pr, False)
            strength[idx] = s.sum(axis=1)
            weakness[idx] = pr.sum(axis=0)
            fronts[idx] = fronts_from_counts(weakness[idx], strength[idx])
            secondary[idx] = strength[idx]
        else:
            fronts[idx] = nondominated_sort(G)
            for level in np.unique(fronts[idx]):
                members = idx[fronts[idx] == level]
                secondary[members] = crowding_distance(f_norm[members])
    bad = np.flatnonzero(~feasible)
    if bad.size:
        offset = fronts[idx].max() if idx.size else 0
        fronts[bad] = offset + rankdata(violation[bad], method="min").astype(np.int64)
    return Ranking(fronts, strength, weakness, f_norm, secondary)


def _order(ranking: Ranking, birth: np.ndarray) -> np.ndarray:
    """Front ascending; then secondary key descending, older first, insertion order."""
    N = ranking.fronts.shape[0]
    return np.lexsort((np.arange(N), birth, -ranking.secondary, ranking.fronts))


@dataclass
class RunState:
    archive: PheromoneArchive
    iteration: int = 0
    evaluations: int = 0
    trace: list = field(default_factory=list)


def _space(problem) -> SearchSpace:
    return SearchSpace(np.asarray(problem.lower, dtype=float), np.asarray(problem.upper, dtype=float))


def _build_archive(x, f, violation, birth, dm, config: OptimizerConfig) -> PheromoneArchive:
    ranking = rank_population(f, violation, dm, config.mode, config.epsilon)
    order = _order(ranking, birth)
    fronts = ranking.fronts[order]
    if config.mode == "preference":
        weights = rank_weights(fronts, config.zeta)
    else:
        weights = rank_weights_positional(len(order), config.zeta)
    return PheromoneArchive(
        x=x[order], f=f[order], fronts=fronts, weights=weights, zeta=config.zeta, xi=config.xi,
        violation=violation[order], f_norm=ranking.f_norm[order], strength=ranking.strength[order],
        weakness=ranking.weakness[order], birth=birth[order],
    )


def _check_inputs(problem, dm, config):
    config.validate()
    if config.mode == "preference":
        if dm is None:
            raise ValueError("preference mode requires a DM model")
        if dm.n != problem.n_obj:
            raise ValueError(f"DM model has {dm.n} objectives, problem has {problem.n_obj}")


def initialize(problem, config: OptimizerConfig, rng: np.random.Generator, dm: DmModel | None = None) -> RunState:
    """Random archive of ``kappa`` solutions, evaluated, normalized, ranked and sorted."""
    _check_inputs(problem, dm, config)
    space = _space(problem)
    x = space.uniform(rng, config.kappa)
    f, violation = problem.evaluate(x)
    birth = np.zeros(config.kappa, dtype=np.int64)
    archive = _build_archive(x, np.asarray(f, dtype=float), np.asarray(violation, dtype=float), birth, dm, config)
    state = RunState(archive=archive, iteration=0, evaluations=config.kappa)
    if config.trace:
        state.trace.append(_trace_entry(state))
    return state


def step(state: RunState, problem, dm: DmModel | None, config: OptimizerConfig,
         rng: np.random.Generator) -> RunState:
    """One colony iteration; returns a new state and leaves ``state`` untouched."""
    tau = state.archive
    space = _space(problem)
    new_x = construct_solutions(tau, space, rng, config.ants)
    new_f, new_v = problem.evaluate(new_x)
    it = state.iteration + 1

    x = np.vstack([tau.x, new_x])
    f = np.vstack([tau.f, np.asarray(new_f, dtype=float)])
    violation = np.concatenate([tau.violation, np.asarray(new_v, dtype=float)])
    birth = np.concatenate([tau.birth, np.full(config.ants, it, dtype=np.int64)])

    ranking = rank_population(f, violation, dm, config.mode, config.epsilon)
    keep = _order(ranking, birth)[:config.kappa]
    archive = _build_archive(x[keep], f[keep], violation[keep], birth[keep], dm, config)

    new_state = RunState(archive=archive, iteration=it, evaluations=state.evaluations + config.ants,
                         trace=list(state.trace))
    if config.trace:
        new_state.trace.append(_trace_entry(new_state))
    return new_state


def _trace_entry(state: RunState) -> dict:
    fronts, counts = np.unique(state.archive.fronts, return_counts=True)
    a = state.archive
    first = a.fronts == 1
    return {
        "iteration": state.iteration,
        "front_histogram": {int(k): int(v) for k, v in zip(fronts, counts)},
        "best_weakness": int(a.weakness[first].min()) if first.any() else None,
        "best_strength": int(a.strength[first].max()) if first.any() else None,
    }


@dataclass
class RunResult:
    archive: PheromoneArchive
    best_indices: np.ndarray
    evaluations: int
    config: OptimizerConfig
    dm: DmModel | None
    problem_id: str
    n_obj: int
    trace: list = field(default_factory=list)

    @property
    def best_x(self) -> np.ndarray:
        return self.archive.x[self.best_indices]

    @property
    def best_f(self) -> np.ndarray:
        return self.archive.f[self.best_indices]

    def to_dict(self) -> dict:
        a = self.archive
        return {
            "problem": self.problem_id,
            "n_obj": self.n_obj,
            "seed": int(self.config.seed),
            "config": self.config.to_dict(),
            "dm": self.dm.to_dict() if self.dm is not None and self.config.mode == "preference" else None,
            "evaluations": int(self.evaluations),
            "archive": {
                "x": a.x.tolist(),
                "f": a.f.tolist(),
                "f_norm": a.f_norm.tolist(),
                "violation": a.violation.tolist(),
                "fronts": a.fronts.tolist(),
                "weights": a.weights.tolist(),
            },
            "best_indices": [int(i) for i in self.best_indices],
            "trace": self.trace,
        }


def run(problem, dm: DmModel | None, config: OptimizerConfig) -> RunResult:
    """Execute ``iter_max`` iterations from a seeded random archive.

    Evaluations used: ``kappa + iter_max * n_ants``.
    """
    if config.mode == "pareto-baseline":
        dm = None
    _check_inputs(problem, dm, config)
    rng = np.random.default_rng(config.seed)
    state = initialize(problem, config, rng, dm)
    for _ in range(config.iter_max):
        state = step(state, problem, dm, config, rng)
    best = np.flatnonzero(state.archive.fronts == 1)
    log.debug("run %s finished: %d evaluations, |F1|=%d", getattr(problem, "id", "?"),
              state.evaluations, best.size)
    return RunResult(
        archive=state.archive, best_indices=best, evaluations=state.evaluations, config=config, dm=dm,
        problem_id=getattr(problem, "id", "custom"), n_obj=int(problem.n_obj), trace=state.trace,
    )
