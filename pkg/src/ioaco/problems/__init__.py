"""DTLZ and WFG benchmark problems with the standard many-objective dimensions.

Dimension settings per problem family (``m`` objectives):

======================  ===============  ================
problems                position ``k``   variables ``n``
======================  ===============  ================
DTLZ1                   5                m + k - 1
DTLZ2-DTLZ6             10               m + k - 1
DTLZ7                   20               m + k - 1
DTLZ8, DTLZ9            m - 1            10 m
WFG1-WFG9               2 (m - 1)        24, 47, 70, 105 for m = 3, 5, 7, 10
======================  ===============  ================
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass

import numpy as np

from ..pareto import nondominated_mask
from . import dtlz, wfg

BENCHMARK_N_OBJ = (3, 5, 7, 10)
WFG_N_VARS = {3: 24, 5: 47, 7: 70, 10: 105}
DTLZ_K = {1: 5, 2: 10, 3: 10, 4: 10, 5: 10, 6: 10, 7: 20}


@dataclass(frozen=True)
class ProblemSpec:
    family: str
    index: int
    n_obj: int
    n_vars: int
    k: int
    lower: np.ndarray
    upper: np.ndarray
    has_constraints: bool = False
    benchmark_setting: bool = True

    @property
    def id(self) -> str:
        return f"{self.family.lower()}{self.index}"

    def __str__(self):
        return f"{self.id}(m={self.n_obj}, n={self.n_vars}, k={self.k})"

    def evaluate(self, x):
        return evaluate(self, x)


def parse_problem_id(problem_id: str) -> tuple[str, int]:
    match = re.fullmatch(r"(dtlz|wfg)([1-9])", problem_id.strip().lower())
    if not match:
        raise ValueError(f"unknown problem id {problem_id!r}; expected dtlz1..dtlz9 or wfg1..wfg9")
    return match.group(1).upper(), int(match.group(2))


def make_problem(family: str, index: int, n_obj: int) -> ProblemSpec:
    """Problem with the standard dimension settings for ``n_obj`` objectives.

    Objective counts outside {3, 5, 7, 10} are accepted for DTLZ (and for WFG
    with ``n = k + 20``) but flagged with ``benchmark_setting=False``.
    """
    family = family.upper()
    if family not in ("DTLZ", "WFG"):
        raise ValueError(f"unknown problem family {family!r}")
    if not 1 <= int(index) <= 9:
        raise ValueError(f"problem index must be in 1..9, got {index}")
    index = int(index)
    n_obj = int(n_obj)
    if n_obj < 3:
        raise ValueError(f"n_obj must be >= 3, got {n_obj}")
    tabulated = n_obj in BENCHMARK_N_OBJ
    if not tabulated:
        warnings.warn(f"{family}{index} with {n_obj} objectives is not a standard setting", stacklevel=2)

    if family == "DTLZ":
        if index <= 7:
            k = DTLZ_K[index]
            n_vars = n_obj + k - 1
        else:
            k = n_obj - 1
            n_vars = 10 * n_obj
        lower = np.zeros(n_vars)
        upper = np.ones(n_vars)
        constrained = index in (8, 9)
    else:
        k = 2 * (n_obj - 1)
        n_vars = WFG_N_VARS.get(n_obj, k + 20)
        lower = np.zeros(n_vars)
        upper = 2.0 * np.arange(1, n_vars + 1)
        constrained = False
    lower.setflags(write=False)
    upper.setflags(write=False)
    return ProblemSpec(family, index, n_obj, n_vars, k, lower, upper, constrained, tabulated)


def get_problem(problem_id: str, n_obj: int) -> ProblemSpec:
    family, index = parse_problem_id(problem_id)
    return make_problem(family, index, n_obj)


def evaluate(spec: ProblemSpec, x):
    """Objectives (minimized) and constraint violation of one or many decision vectors.

    Returns ``(F, violation)``; shapes follow the input (1-D in, 1-D out).
    ``violation`` is the sum of constraint excesses and is 0 for feasible or
    unconstrained points.
    """
    X = np.asarray(x, dtype=float)
    single = X.ndim == 1
    X = np.atleast_2d(X)
    if X.shape[1] != spec.n_vars:
        raise ValueError(f"{spec.id} expects {spec.n_vars} variables, got {X.shape[1]}")
    tol = 1e-12 * np.maximum(1.0, spec.upper)
    if np.any(X < spec.lower - tol) or np.any(X > spec.upper + tol):
        raise ValueError(f"decision vector outside the bounds of {spec.id}")
    X = np.clip(X, spec.lower, spec.upper)
    if spec.family == "DTLZ":
        out = dtlz.EVALUATORS[spec.index](X, spec.n_obj)
        if spec.has_constraints:
            F, violation = out
        else:
            F, violation = out, np.zeros(X.shape[0])
    else:
        F = wfg.EVALUATORS[spec.index](X / spec.upper, spec.k, spec.n_obj)
        violation = np.zeros(X.shape[0])
    if single:
        return F[0], float(violation[0])
    return F, violation


def _draw_front(spec: ProblemSpec, count: int, rng: np.random.Generator) -> np.ndarray:
    if spec.family == "DTLZ":
        return dtlz.FRONTS[spec.index](spec.n_obj, count, rng)
    positions = rng.random((count, spec.k))
    if spec.index == 1:
        # compensates the polynomial bias on position variables
        positions = positions ** 50.0
    y = wfg.optimal_distance(spec.index, positions, spec.n_vars)
    return wfg.EVALUATORS[spec.index](y, spec.k, spec.n_obj)


def sample_true_front(spec: ProblemSpec, count: int, rng, max_rounds: int = 50) -> np.ndarray:
    """``count`` mutually non-dominated points on the Pareto front of ``spec``.

    Points come from the analytic front description (DTLZ) or from optimal
    distance parameters with random position parameters (WFG). Dominated
    draws are dropped and replaced; a surplus is subsampled without
    replacement, so the result survives non-dominated filtering unchanged.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(rng)
    pts = _draw_front(spec, count, rng)
    for _ in range(max_rounds):
        pts = pts[nondominated_mask(pts)]
        if pts.shape[0] >= count:
            break
        missing = count - pts.shape[0]
        pts = np.vstack([pts, _draw_front(spec, 2 * missing + 16, rng)])
    else:
        raise RuntimeError(f"could not gather {count} non-dominated front points for {spec}")
    if pts.shape[0] > count:
        keep = np.sort(rng.choice(pts.shape[0], size=count, replace=False))
        pts = pts[keep]
    return pts
