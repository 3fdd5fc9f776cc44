"""Region-of-interest construction, distance indicators and statistical comparison."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np
from scipy.spatial.distance import cdist
from scipy.stats import mannwhitneyu, rankdata

from .optimizer import normalize
from .outranking import DmModel, best_compromise_indices

INDICATORS = ("min_euclid", "avg_euclid", "min_cheby", "avg_cheby")


@dataclass
class ARoI:
    """Approximated region of interest: best-compromise points of a front sample."""

    points: np.ndarray
    indices: np.ndarray
    provenance: dict = field(default_factory=dict)

    def __len__(self):
        return self.points.shape[0]


def build_aroi(front_sample, dm: DmModel, *, normalized: bool = True, epsilon: float = 1e-3,
               provenance: dict | None = None) -> ARoI:
    """Best-compromise subset of a Pareto-front sample under ``dm``.

    With ``normalized`` the DM model sees the sample min-max scaled, matching
    the normalized units the optimizer ranks in; the returned points keep
    their raw coordinates. Cost is O(N^2 n).
    """
    F = np.asarray(front_sample, dtype=float)
    if F.ndim != 2 or F.shape[0] == 0:
        raise ValueError("front sample must be a non-empty 2-D array")
    G = normalize(F, epsilon) if normalized else F
    idx = best_compromise_indices(G, dm)
    return ARoI(points=F[idx], indices=idx, provenance=dict(provenance or {}))


@dataclass(frozen=True)
class IndicatorBlock:
    min_euclid: float
    avg_euclid: float
    min_cheby: float
    avg_cheby: float

    def as_dict(self) -> dict:
        return {name: getattr(self, name) for name in INDICATORS}


def indicators(final_set, aroi, average: str = "nearest") -> IndicatorBlock:
    """Euclidean and Chebyshev closeness of a solution set to the A-RoI.

    ``min_*`` is the smallest distance over all pairs. ``avg_*`` averages,
    over the solutions, the distance to the nearest A-RoI point
    (``average="nearest"``) or to every A-RoI point (``average="all-pairs"``).
    """
    X = np.atleast_2d(np.asarray(final_set, dtype=float))
    R = aroi.points if isinstance(aroi, ARoI) else np.atleast_2d(np.asarray(aroi, dtype=float))
    if X.shape[0] == 0 or R.shape[0] == 0:
        raise ValueError("both sets must be non-empty")
    if X.shape[1] != R.shape[1]:
        raise ValueError(f"objective counts differ: {X.shape[1]} vs {R.shape[1]}")
    if average not in ("nearest", "all-pairs"):
        raise ValueError(f"unknown averaging {average!r}")
    out = {}
    for tag, metric in (("euclid", "euclidean"), ("cheby", "chebyshev")):
        D = cdist(X, R, metric=metric)
        out[f"min_{tag}"] = float(D.min())
        out[f"avg_{tag}"] = float(D.min(axis=1).mean() if average == "nearest" else D.mean())
    return IndicatorBlock(**out)


@dataclass(frozen=True)
class RankSumResult:
    statistic: float
    p_value: float
    significant: bool


def wilcoxon_rank_sum(a, b, alpha: float = 0.05) -> RankSumResult:
    """Two-sided Wilcoxon rank-sum test for independent samples.

    Normal approximation with mid-ranks for ties, tie-corrected variance and
    continuity correction. Samples that are all equal give ``p = 1``.
    """
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    if a.size < 5 or b.size < 5:
        raise ValueError("each sample needs at least 5 observations")
    pooled = np.concatenate([a, b])
    if np.all(pooled == pooled[0]):
        return RankSumResult(statistic=a.size * b.size / 2.0, p_value=1.0, significant=False)
    res = mannwhitneyu(a, b, alternative="two-sided", method="asymptotic", use_continuity=True)
    p = float(min(1.0, res.pvalue))
    return RankSumResult(statistic=float(res.statistic), p_value=p, significant=p < alpha)


def holm_bonferroni(p_values, alpha: float = 0.05) -> list[bool]:
    """Step-down Holm decisions (True = reject), in the order of ``p_values``."""
    p = np.asarray(p_values, dtype=float)
    if np.any((p < 0) | (p > 1)):
        raise ValueError("p-values must lie in [0, 1]")
    m = p.size
    reject = np.zeros(m, dtype=bool)
    for i, j in enumerate(np.argsort(p, kind="stable")):
        if p[j] <= alpha / (m - i):
            reject[j] = True
        else:
            break
    return reject.tolist()


@dataclass
class PairOutcome:
    first: str
    second: str
    p_value: float
    reject: bool
    winner: str | None


def compare_problem(samples: dict, alpha: float = 0.05) -> tuple[dict, list[PairOutcome]]:
    """Positions of the algorithms on one problem for one indicator (lower is better).

    Every pair is tested with the rank-sum test; Holm corrects over the pairs.
    A significant pair is won by the sample with the lower median. Each
    algorithm scores wins minus losses, and positions rank the scores with
    draws averaged.
    """
    algs = sorted(samples)
    pairs = list(combinations(algs, 2))
    pvals = [wilcoxon_rank_sum(samples[x], samples[y], alpha).p_value for x, y in pairs]
    decisions = holm_bonferroni(pvals, alpha) if pairs else []
    score = {alg: 0 for alg in algs}
    outcomes = []
    for (x, y), p, rej in zip(pairs, pvals, decisions):
        winner = None
        if rej:
            mx, my = np.median(samples[x]), np.median(samples[y])
            if mx != my:
                winner = x if mx < my else y
            else:
                mean_rank = rankdata(np.concatenate([samples[x], samples[y]]))
                nx = len(samples[x])
                winner = x if mean_rank[:nx].mean() < mean_rank[nx:].mean() else y
            loser = y if winner == x else x
            score[winner] += 1
            score[loser] -= 1
        outcomes.append(PairOutcome(x, y, float(p), bool(rej), winner))
    pos = rankdata([-score[a] for a in algs], method="average")
    return {alg: float(v) for alg, v in zip(algs, pos)}, outcomes


def borda_ranking(positions) -> tuple[dict, list[str]]:
    """Sum per-problem positions; a lower sum ranks first.

    ``positions`` is an iterable of ``{algorithm: position}`` mappings, one per
    problem, all over the same algorithm set.
    """
    positions = list(positions)
    if not positions:
        return {}, []
    algs = set(positions[0])
    sums = {alg: 0.0 for alg in sorted(algs)}
    for entry in positions:
        if set(entry) != algs:
            raise ValueError(f"inconsistent algorithm sets: {sorted(entry)} vs {sorted(algs)}")
        for alg, value in entry.items():
            sums[alg] += float(value)
    order = sorted(sums, key=lambda a: (sums[a], a))
    return sums, order


@dataclass
class ComparisonVerdict:
    algorithms: list[str]
    problems: list[tuple]
    positions: dict  # indicator -> problem -> {alg: position}
    pairs: dict  # indicator -> problem -> [PairOutcome]
    borda: dict  # indicator -> {alg: sum}
    order: dict  # indicator -> [alg, ...]

    def wins(self, indicator: str, winner: str, loser: str) -> list[tuple]:
        """Problems where ``winner`` beats ``loser`` significantly on ``indicator``."""
        out = []
        for prob in self.problems:
            for pair in self.pairs[indicator][prob]:
                if {pair.first, pair.second} == {winner, loser} and pair.winner == winner:
                    out.append(prob)
        return out


def compare(samples: dict, alpha: float = 0.05, indicators_: tuple = INDICATORS) -> ComparisonVerdict:
    """Full comparison over problems.

    ``samples[problem][algorithm][indicator]`` is the array of indicator values
    over the runs. Every problem must list the same algorithms.
    """
    problems = sorted(samples)
    algs = sorted({alg for prob in problems for alg in samples[prob]})
    positions, pairs, borda, order = {}, {}, {}, {}
    for ind in indicators_:
        positions[ind], pairs[ind] = {}, {}
        for prob in problems:
            per_alg = {alg: np.asarray(samples[prob][alg][ind], dtype=float) for alg in samples[prob]}
            positions[ind][prob], pairs[ind][prob] = compare_problem(per_alg, alpha)
        borda[ind], order[ind] = borda_ranking(positions[ind][p] for p in problems)
    return ComparisonVerdict(algs, problems, positions, pairs, borda, order)
