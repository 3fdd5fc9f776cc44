"""Continuous ant-colony machinery: archive weights and Gaussian-kernel sampling.

The pheromone is an archive of ranked solutions. Each ant picks one archive
row as its guide, with probability proportional to the row weight, and then
draws every decision variable from a normal distribution centred on the
guide's value whose spread is the mean absolute distance of that column to
the guide, scaled by ``xi``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

SQRT_2PI = math.sqrt(2.0 * math.pi)
MAX_RESAMPLE = 10


@dataclass(frozen=True)
class SearchSpace:
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.asarray(self.lower, dtype=float).ravel()
        upper = np.asarray(self.upper, dtype=float).ravel()
        if lower.shape != upper.shape:
            raise ValueError("lower and upper bounds differ in length")
        if np.any(lower >= upper):
            raise ValueError("every lower bound must be strictly below its upper bound")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @property
    def dim(self) -> int:
        return self.lower.shape[0]

    def uniform(self, rng: np.random.Generator, count: int) -> np.ndarray:
        return self.lower + rng.random((count, self.dim)) * (self.upper - self.lower)

    def contains(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.all((x >= self.lower) & (x <= self.upper), axis=-1)


@dataclass
class PheromoneArchive:
    """Ranked solutions acting as the colony's learned sampling distribution.

    Rows are sorted by ascending front index; ``weights[l]`` is the selection
    weight of row ``l``.
    """

    x: np.ndarray
    f: np.ndarray
    fronts: np.ndarray
    weights: np.ndarray
    zeta: float = 0.1
    xi: float = 0.5
    violation: np.ndarray | None = None
    f_norm: np.ndarray | None = None
    strength: np.ndarray | None = None
    weakness: np.ndarray | None = None
    birth: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        self.x = np.atleast_2d(np.asarray(self.x, dtype=float))
        self.fronts = np.asarray(self.fronts, dtype=np.int64)
        self.weights = np.asarray(self.weights, dtype=float)
        if self.x.shape[0] < 2:
            raise ValueError("archive needs at least two solutions (kernel spread divides by kappa - 1)")
        if not 0 < self.xi <= 1:
            raise ValueError(f"xi must lie in (0, 1], got {self.xi}")
        if not self.zeta > 0:
            raise ValueError(f"zeta must be positive, got {self.zeta}")
        if self.weights.shape[0] != self.kappa or self.fronts.shape[0] != self.kappa:
            raise ValueError("weights and fronts must have one entry per archive row")
        if np.any(np.diff(self.fronts) < 0):
            raise ValueError("archive rows must be sorted by ascending front")

    @property
    def kappa(self) -> int:
        return self.x.shape[0]

    @property
    def dim(self) -> int:
        return self.x.shape[1]


def rank_weights(fronts, zeta: float) -> np.ndarray:
    """Gaussian weights over front indices, scaled by the worst front in the archive.

    ``fronts`` must be sorted ascending; the last entry plays the role of the
    archive size in the positional formula.
    """
    fronts = np.asarray(fronts, dtype=float)
    worst = fronts[-1]
    if worst < 1:
        raise ValueError("front indices start at 1")
    if not zeta > 0:
        raise ValueError("zeta must be positive")
    scale = zeta * worst
    return np.exp(-((fronts - 1.0) ** 2) / (2.0 * scale * scale)) / (scale * SQRT_2PI)


def rank_weights_positional(kappa: int, zeta: float) -> np.ndarray:
    """Weights of the single-objective archive: Gaussian in the row position."""
    if kappa < 1:
        raise ValueError("kappa must be >= 1")
    if not zeta > 0:
        raise ValueError("zeta must be positive")
    positions = np.arange(1, kappa + 1, dtype=float)
    scale = zeta * kappa
    return np.exp(-((positions - 1.0) ** 2) / (2.0 * scale * scale)) / (scale * SQRT_2PI)


def selection_probabilities(weights) -> np.ndarray:
    weights = np.asarray(weights, dtype=float)
    return weights / weights.sum()


def select_guide(weights, rng: np.random.Generator, size: int | None = None):
    """Index of the archive row guiding an ant (or ``size`` ants)."""
    p = selection_probabilities(weights)
    return rng.choice(p.shape[0], size=size, p=p)


def kernel_std(archive: PheromoneArchive, l: int, j: int | None = None):
    """Spread of the kernel centred on row ``l``.

    Returns the value for variable ``j`` or, when ``j`` is None, the whole row
    of per-variable spreads.
    """
    x = archive.x
    spread = archive.xi * np.abs(x - x[l]).sum(axis=0) / (archive.kappa - 1)
    return float(spread[j]) if j is not None else spread


def kernel_std_matrix(archive: PheromoneArchive) -> np.ndarray:
    """Kernel spreads for every row at once, shape ``(kappa, dim)``."""
    x = archive.x
    dist = np.abs(x[:, None, :] - x[None, :, :]).sum(axis=1)
    return archive.xi * dist / (archive.kappa - 1)


def _sample_bounded(mean, std, lower, upper, rng):
    draws = rng.normal(mean, std)
    for _ in range(MAX_RESAMPLE):
        bad = (draws < lower) | (draws > upper)
        if not bad.any():
            break
        draws[bad] = rng.normal(mean[bad], std[bad])
    return np.clip(draws, lower, upper)


def construct_solutions(archive: PheromoneArchive, space: SearchSpace, rng: np.random.Generator,
                        count: int) -> np.ndarray:
    """Build ``count`` new decision vectors from the archive.

    One guide is drawn per ant; every variable is sampled from the guide's
    kernel. Draws outside the box are redrawn up to ten times, then clamped.
    """
    if archive.dim != space.dim:
        raise ValueError("archive and search space dimensions differ")
    guides = select_guide(archive.weights, rng, size=count)
    std = kernel_std_matrix(archive)[guides]
    mean = archive.x[guides]
    lower = np.broadcast_to(space.lower, mean.shape)
    upper = np.broadcast_to(space.upper, mean.shape)
    return _sample_bounded(mean, std, lower, upper, rng)


def construct_solution(archive: PheromoneArchive, space: SearchSpace,
                       rng: np.random.Generator) -> np.ndarray:
    return construct_solutions(archive, space, rng, 1)[0]
