"""Pareto dominance utilities: non-dominated filtering, sorting and crowding."""

from __future__ import annotations

import numpy as np


def _dominates(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Broadcast dominance test with one pass per objective."""
    no_worse = None
    better = None
    for k in range(a.shape[-1]):
        ak, bk = a[..., k], b[..., k]
        le, lt = ak <= bk, ak < bk
        no_worse = le if no_worse is None else no_worse & le
        better = lt if better is None else better | lt
    return no_worse & better


def dominance_matrix(F: np.ndarray, block: int = 512) -> np.ndarray:
    """``D[i, j]`` is True when row ``i`` Pareto-dominates row ``j`` (minimization)."""
    F = np.asarray(F, dtype=float)
    N = F.shape[0]
    D = np.empty((N, N), dtype=bool)
    for start in range(0, N, block):
        D[start:start + block] = _dominates(F[start:start + block, None, :], F[None, :, :])
    return D


def nondominated_mask(F: np.ndarray, block: int = 256) -> np.ndarray:
    """True for the rows no other row dominates."""
    F = np.asarray(F, dtype=float)
    N = F.shape[0]
    dominated = np.zeros(N, dtype=bool)
    for start in range(0, N, block):
        dominated |= _dominates(F[start:start + block, None, :], F[None, :, :]).any(axis=0)
    return ~dominated


def nondominated_sort(F: np.ndarray) -> np.ndarray:
    """Front index per row (1 = non-dominated), by repeated peeling."""
    D = dominance_matrix(F)
    n_dominators = D.sum(axis=0)
    fronts = np.zeros(D.shape[0], dtype=np.int64)
    current = np.flatnonzero(n_dominators == 0)
    level = 1
    while current.size:
        fronts[current] = level
        n_dominators = n_dominators - D[current].sum(axis=0)
        n_dominators[fronts > 0] = -1
        current = np.flatnonzero(n_dominators == 0)
        level += 1
    return fronts


def crowding_distance(F: np.ndarray) -> np.ndarray:
    """NSGA-II crowding distance; boundary rows get ``inf``."""
    F = np.asarray(F, dtype=float)
    N, m = F.shape
    dist = np.zeros(N)
    if N <= 2:
        dist[:] = np.inf
        return dist
    for k in range(m):
        order = np.argsort(F[:, k], kind="stable")
        col = F[order, k]
        span = col[-1] - col[0]
        dist[order[0]] = dist[order[-1]] = np.inf
        if span > 0:
            dist[order[1:-1]] += (col[2:] - col[:-2]) / span
    return dist
