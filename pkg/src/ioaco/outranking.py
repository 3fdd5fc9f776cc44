"""Interval outranking preference model.

A decision maker (DM) is described by interval weights, indifference and veto
thresholds, a majority threshold ``lam`` and a credibility cutoff ``beta``.
For two objective vectors ``fx`` and ``fy`` (all objectives minimized) the
model yields a credibility ``sigma(x, y)`` for the statement "x is at least
as good as y"; from it follow the crisp outranking ``S`` and the strict
preference ``Pr`` relations, and the strength/weakness counts that rank a
population.

Every pairwise quantity is computed by one broadcasting kernel, so the scalar
functions (``credibility(fx, fy, dm)``) and the population functions
(``relation_matrices(F, dm)``) agree bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.stats import rankdata

from .intervals import Interval, as_interval, interval_gt, possibility_array
from .pareto import _dominates

__all__ = [
    "DmModel",
    "DmValidationError",
    "CredibilityRecord",
    "StrengthWeakness",
    "Relations",
    "pareto_dominates",
    "concordance_coalition",
    "concordance_index",
    "concordance_from_coalition",
    "discordance_index",
    "credibility",
    "outranks",
    "prefers",
    "relation_matrices",
    "strength_weakness",
    "strength_weakness_all",
    "fronts_from_counts",
    "surrogate_rank",
    "best_compromise",
    "best_compromise_indices",
]


class DmValidationError(ValueError):
    """A DM parameter set violates one of the model's constraints."""


@dataclass(frozen=True)
class DmModel:
    """Outranking parameters of one decision maker.

    Thresholds are expressed in the units of the objective vectors handed to
    the model. Inside the optimizer those are min-max normalized objectives.
    """

    weights: tuple[Interval, ...]
    indifference: tuple[Interval, ...]
    veto: tuple[Interval, ...]
    lam: Interval
    beta: float
    name: str = "dm"

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(as_interval(w) for w in self.weights))
        object.__setattr__(self, "indifference", tuple(as_interval(q) for q in self.indifference))
        object.__setattr__(self, "veto", tuple(as_interval(v) for v in self.veto))
        object.__setattr__(self, "lam", as_interval(self.lam))
        object.__setattr__(self, "beta", float(self.beta))
        self.validate()
        arrays = {
            "w_lo": [w.lo for w in self.weights],
            "w_hi": [w.hi for w in self.weights],
            "q_lo": [q.lo for q in self.indifference],
            "q_hi": [q.hi for q in self.indifference],
            "v_lo": [v.lo for v in self.veto],
            "v_hi": [v.hi for v in self.veto],
        }
        for key, values in arrays.items():
            arr = np.array(values, dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, "_" + key, arr)

    @property
    def n(self) -> int:
        return len(self.weights)

    def validate(self) -> None:
        n = len(self.weights)
        if n < 1:
            raise DmValidationError("weights: at least one objective is required")
        if len(self.indifference) != n:
            raise DmValidationError(
                f"indifference: expected {n} thresholds, got {len(self.indifference)}"
            )
        if len(self.veto) != n:
            raise DmValidationError(f"veto: expected {n} thresholds, got {len(self.veto)}")
        for k, w in enumerate(self.weights):
            if not w.lo > 0:
                raise DmValidationError(f"weights[{k}]: lower limit must be > 0, got {w.lo}")
        lo_sum = sum(w.lo for w in self.weights)
        hi_sum = sum(w.hi for w in self.weights)
        if lo_sum > 1 + 1e-12:
            raise DmValidationError(f"weights: sum of lower limits must be <= 1, got {lo_sum:.6g}")
        if hi_sum < 1 - 1e-12:
            raise DmValidationError(f"weights: sum of upper limits must be >= 1, got {hi_sum:.6g}")
        for k, (q, v) in enumerate(zip(self.indifference, self.veto)):
            if not interval_gt(v, q):
                raise DmValidationError(
                    f"veto[{k}]: must exceed indifference[{k}] "
                    f"(P(v > q) > 0.5), got v={v.to_list()} q={q.to_list()}"
                )
        if self.lam.lo < 0.5:
            raise DmValidationError(f"lambda: lower limit must be >= 0.5, got {self.lam.lo}")
        if self.lam.hi > 1:
            raise DmValidationError(f"lambda: upper limit must be <= 1, got {self.lam.hi}")
        if not 0.5 <= self.beta <= 1:
            raise DmValidationError(f"beta: must lie in [0.5, 1], got {self.beta}")

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "weights": [w.to_list() for w in self.weights],
            "indifference": [q.to_list() for q in self.indifference],
            "veto": [v.to_list() for v in self.veto],
            "lambda": self.lam.to_list(),
            "beta": self.beta,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DmModel":
        try:
            n = int(data["n"]) if "n" in data else len(data["weights"])
            dm = cls(
                weights=data["weights"],
                indifference=data["indifference"],
                veto=data["veto"],
                lam=data["lambda"],
                beta=data["beta"],
                name=data.get("name", "dm"),
            )
        except KeyError as exc:
            raise DmValidationError(f"missing DM field: {exc.args[0]}") from None
        except (TypeError, ValueError) as exc:
            if isinstance(exc, DmValidationError):
                raise
            raise DmValidationError(str(exc)) from None
        if dm.n != n:
            raise DmValidationError(f"n: declared {n} objectives but weights has {dm.n}")
        return dm


@dataclass(frozen=True)
class CredibilityRecord:
    concordance: Interval
    discordance: float
    sigma: float


class StrengthWeakness(NamedTuple):
    strength: int
    weakness: int


@dataclass
class Relations:
    """Pairwise matrices over a population; entry ``[i, j]`` is about (x_i, x_j)."""

    sigma: np.ndarray
    outranks: np.ndarray
    dominates: np.ndarray
    prefers: np.ndarray


def _as_vector(f, n: int | None = None) -> np.ndarray:
    arr = np.asarray(f, dtype=float)
    if arr.ndim != 1:
        raise ValueError("objective vector must be one-dimensional")
    if n is not None and arr.shape[0] != n:
        raise ValueError(f"objective vector has {arr.shape[0]} components, expected {n}")
    return arr


def _pair(fx, fy, dm: DmModel | None = None) -> tuple[np.ndarray, np.ndarray]:
    fx = _as_vector(fx)
    fy = _as_vector(fy)
    if fx.shape != fy.shape:
        raise ValueError(f"objective vectors differ in length: {fx.shape[0]} vs {fy.shape[0]}")
    if dm is not None and fx.shape[0] != dm.n:
        raise ValueError(f"objective vectors have {fx.shape[0]} components, DM expects {dm.n}")
    return fx, fy


_dominance = _dominates


def _point_geq(e: np.ndarray, lo: float, hi: float) -> np.ndarray:
    """Possibility that the real ``e`` is at least the interval ``[lo, hi]``."""
    if hi == lo:
        return (e >= lo).astype(float)
    return np.clip((e - lo) / (hi - lo), 0.0, 1.0)


def _concordance_limits(cw_lo, cw_hi, dw_lo, dw_hi):
    # tightest interval for the coalition weight when all weights sum to one
    c_lo = np.where(cw_lo + dw_hi >= 1.0, cw_lo, 1.0 - dw_hi)
    c_hi = np.where(cw_hi + dw_lo <= 1.0, cw_hi, 1.0 - dw_lo)
    return c_lo, c_hi


def concordance_from_coalition(w_lo, w_hi, coalition) -> tuple[np.ndarray, np.ndarray]:
    """Concordance limits from interval weights and a coalition mask.

    All arguments broadcast with objectives on the last axis; ``coalition``
    is boolean. Returns the lower and upper concordance limits.
    """
    w_lo = np.asarray(w_lo, dtype=float)
    w_hi = np.asarray(w_hi, dtype=float)
    c = np.asarray(coalition, dtype=bool)
    return _concordance_limits((w_lo * c).sum(axis=-1), (w_hi * c).sum(axis=-1),
                               (w_lo * ~c).sum(axis=-1), (w_hi * ~c).sum(axis=-1))


def _kernel(fx: np.ndarray, fy: np.ndarray, dm: DmModel):
    """Concordance, discordance and credibility for broadcast pairs.

    ``fx`` and ``fy`` broadcast against each other with objectives on the last
    axis. Objectives are processed one at a time, in index order, so weight
    sums accumulate in a fixed order.
    """
    shape = np.broadcast_shapes(fx.shape, fy.shape)[:-1]
    cw_lo = np.zeros(shape)
    cw_hi = np.zeros(shape)
    dw_lo = np.zeros(shape)
    dw_hi = np.zeros(shape)
    veto = np.zeros(shape)
    in_c = np.empty(shape + (dm.n,), dtype=bool)
    for k in range(dm.n):
        dk = fy[..., k] - fx[..., k]
        ck = _point_geq(dk, -dm._q_hi[k], -dm._q_lo[k]) >= 0.5
        nk = ~ck
        in_c[..., k] = ck
        cw_lo += ck * dm._w_lo[k]
        cw_hi += ck * dm._w_hi[k]
        dw_lo += nk * dm._w_lo[k]
        dw_hi += nk * dm._w_hi[k]
        vk = _point_geq(-dk, dm._v_lo[k], dm._v_hi[k])
        veto = np.maximum(veto, np.where(ck, 0.0, vk))
    c_lo, c_hi = _concordance_limits(cw_lo, cw_hi, dw_lo, dw_hi)
    d = 1.0 - veto
    sigma = np.minimum(possibility_array(c_lo, c_hi, dm.lam.lo, dm.lam.hi), d)
    return in_c, c_lo, c_hi, d, sigma


def pareto_dominates(fx, fy) -> bool:
    """True when ``fx`` is no worse everywhere and strictly better somewhere."""
    fx, fy = _pair(fx, fy)
    return bool(_dominance(fx, fy))


def concordance_coalition(fx, fy, dm: DmModel) -> frozenset[int]:
    """Zero-based indices of the objectives supporting "x is at least as good as y"."""
    fx, fy = _pair(fx, fy, dm)
    in_c = _kernel(fx, fy, dm)[0]
    return frozenset(int(k) for k in np.flatnonzero(in_c))


def concordance_index(fx, fy, dm: DmModel) -> Interval:
    fx, fy = _pair(fx, fy, dm)
    _, c_lo, c_hi, _, _ = _kernel(fx, fy, dm)
    return Interval(float(c_lo), float(c_hi))


def discordance_index(fx, fy, dm: DmModel) -> float:
    fx, fy = _pair(fx, fy, dm)
    return float(_kernel(fx, fy, dm)[3])


def credibility(fx, fy, dm: DmModel) -> CredibilityRecord:
    fx, fy = _pair(fx, fy, dm)
    _, c_lo, c_hi, d, sigma = _kernel(fx, fy, dm)
    return CredibilityRecord(Interval(float(c_lo), float(c_hi)), float(d), float(sigma))


def outranks(fx, fy, dm: DmModel) -> bool:
    return credibility(fx, fy, dm).sigma >= dm.beta


def prefers(fx, fy, dm: DmModel) -> bool:
    """Strict preference: Pareto dominance, or x outranks y while y does not outrank x."""
    if pareto_dominates(fx, fy):
        return True
    return outranks(fx, fy, dm) and not outranks(fy, fx, dm)


def _as_population(pop) -> np.ndarray:
    F = np.asarray(pop, dtype=float)
    if F.ndim != 2:
        raise ValueError("population must be a 2-D array (solutions x objectives)")
    return F


def relation_matrices(pop, dm: DmModel, block: int = 128) -> Relations:
    """Pairwise ``sigma``, ``S``, dominance and ``Pr`` matrices of a population.

    Cost is O(N^2 n). Pairs are processed in ``block`` x ``block`` tiles, so
    the working set stays cache sized whatever the population size.
    """
    F = _as_population(pop)
    N, n = F.shape
    if n != dm.n:
        raise ValueError(f"population has {n} objectives, DM expects {dm.n}")
    sigma = np.empty((N, N))
    dom = np.empty((N, N), dtype=bool)
    for i in range(0, N, block):
        rows = F[i:i + block, None, :]
        for j in range(0, N, block):
            cols = F[None, j:j + block, :]
            sigma[i:i + block, j:j + block] = _kernel(rows, cols, dm)[4]
            dom[i:i + block, j:j + block] = _dominance(rows, cols)
    s = sigma >= dm.beta
    pr = dom | (s & ~s.T)
    return Relations(sigma=sigma, outranks=s, dominates=dom, prefers=pr)


def _counts(rel: Relations) -> tuple[np.ndarray, np.ndarray]:
    s = rel.outranks.copy()
    np.fill_diagonal(s, False)
    pr = rel.prefers.copy()
    np.fill_diagonal(pr, False)
    return s.sum(axis=1), pr.sum(axis=0)


def strength_weakness_all(pop, dm: DmModel) -> tuple[np.ndarray, np.ndarray]:
    """Strength and weakness of every member, self-comparisons excluded."""
    return _counts(relation_matrices(pop, dm))


def strength_weakness(pop, x_index: int, dm: DmModel) -> StrengthWeakness:
    F = _as_population(pop)
    if not 0 <= x_index < F.shape[0]:
        raise IndexError(f"x_index {x_index} out of range for population of {F.shape[0]}")
    x = F[x_index]
    others = np.delete(F, x_index, axis=0)
    if others.shape[0] == 0:
        return StrengthWeakness(0, 0)
    s_xy = _kernel(x[None, :], others, dm)[4] >= dm.beta
    s_yx = _kernel(others, x[None, :], dm)[4] >= dm.beta
    pr_yx = _dominance(others, x[None, :]) | (s_yx & ~s_xy)
    return StrengthWeakness(int(s_xy.sum()), int(pr_yx.sum()))


def fronts_from_counts(weakness, strength) -> np.ndarray:
    """Front index ``1 + #(strictly better)`` under lexicographic (weakness, -strength)."""
    weakness = np.asarray(weakness, dtype=np.int64)
    strength = np.asarray(strength, dtype=np.int64)
    if weakness.size == 0:
        return np.zeros(0, dtype=np.int64)
    span = int(strength.max()) - int(strength.min()) + 1
    key = weakness * span + (int(strength.max()) - strength)
    return rankdata(key, method="min").astype(np.int64)


def surrogate_rank(pop, dm: DmModel) -> np.ndarray:
    """Front index of every member of ``pop`` (1 = best compromise)."""
    F = _as_population(pop)
    if F.shape[0] == 0:
        raise ValueError("population must not be empty")
    strength, weakness = strength_weakness_all(F, dm)
    return fronts_from_counts(weakness, strength)


def best_compromise_indices(pop, dm: DmModel) -> np.ndarray:
    return np.flatnonzero(surrogate_rank(pop, dm) == 1)


def best_compromise(pop, dm: DmModel) -> np.ndarray:
    """Members achieving the lexicographic optimum of (weakness, -strength); ties kept."""
    F = _as_population(pop)
    return F[best_compromise_indices(F, dm)]
