"""DTLZ1-DTLZ9 scalable test problems (Deb, Thiele, Laumanns and Zitzler).

All functions take a batch ``X`` of shape ``(N, n_vars)`` with variables in
``[0, 1]`` and return objectives of shape ``(N, n_obj)``. The first
``n_obj - 1`` variables are position variables, the rest distance variables
(DTLZ1-7). DTLZ8 and DTLZ9 average or sum blocks of ``n_vars / n_obj``
variables and carry side constraints; their evaluators also return the
aggregate constraint violation.
"""

from __future__ import annotations

import numpy as np
from scipy.optimize import brentq, minimize_scalar

HALF_PI = 0.5 * np.pi


def _g_rastrigin(xm: np.ndarray) -> np.ndarray:
    k = xm.shape[1]
    return 100.0 * (k + np.sum((xm - 0.5) ** 2 - np.cos(20.0 * np.pi * (xm - 0.5)), axis=1))


def _g_sphere(xm: np.ndarray) -> np.ndarray:
    return np.sum((xm - 0.5) ** 2, axis=1)


def _linear_front(xp: np.ndarray, scale: np.ndarray) -> np.ndarray:
    N, M1 = xp.shape
    M = M1 + 1
    F = np.empty((N, M))
    for j in range(M):
        f = scale.copy()
        f *= np.prod(xp[:, :M - 1 - j], axis=1)
        if j > 0:
            f *= 1.0 - xp[:, M - 1 - j]
        F[:, j] = f
    return F


def _spherical_front(theta: np.ndarray, radius: np.ndarray) -> np.ndarray:
    """Objectives on a sphere of the given radius from angles in ``[0, pi/2]``."""
    N, M1 = theta.shape
    M = M1 + 1
    F = np.empty((N, M))
    for j in range(M):
        f = radius.copy()
        f *= np.prod(np.cos(theta[:, :M - 1 - j]), axis=1)
        if j > 0:
            f *= np.sin(theta[:, M - 1 - j])
        F[:, j] = f
    return F


def dtlz1(X, n_obj):
    xp, xm = X[:, :n_obj - 1], X[:, n_obj - 1:]
    return _linear_front(xp, 0.5 * (1.0 + _g_rastrigin(xm)))


def dtlz2(X, n_obj):
    xp, xm = X[:, :n_obj - 1], X[:, n_obj - 1:]
    return _spherical_front(xp * HALF_PI, 1.0 + _g_sphere(xm))


def dtlz3(X, n_obj):
    xp, xm = X[:, :n_obj - 1], X[:, n_obj - 1:]
    return _spherical_front(xp * HALF_PI, 1.0 + _g_rastrigin(xm))


def dtlz4(X, n_obj, alpha=100.0):
    xp, xm = X[:, :n_obj - 1], X[:, n_obj - 1:]
    return _spherical_front(xp ** alpha * HALF_PI, 1.0 + _g_sphere(xm))


def _degenerate_theta(xp, g):
    theta = np.empty_like(xp)
    theta[:, 0] = xp[:, 0] * HALF_PI
    if xp.shape[1] > 1:
        theta[:, 1:] = (np.pi / (4.0 * (1.0 + g)))[:, None] * (1.0 + 2.0 * g[:, None] * xp[:, 1:])
    return theta


def dtlz5(X, n_obj):
    xp, xm = X[:, :n_obj - 1], X[:, n_obj - 1:]
    g = _g_sphere(xm)
    return _spherical_front(_degenerate_theta(xp, g), 1.0 + g)


def dtlz6(X, n_obj):
    xp, xm = X[:, :n_obj - 1], X[:, n_obj - 1:]
    g = np.sum(xm ** 0.1, axis=1)
    return _spherical_front(_degenerate_theta(xp, g), 1.0 + g)


def dtlz7(X, n_obj):
    xp, xm = X[:, :n_obj - 1], X[:, n_obj - 1:]
    g = 1.0 + 9.0 / xm.shape[1] * np.sum(xm, axis=1)
    h = n_obj - np.sum(xp / (1.0 + g[:, None]) * (1.0 + np.sin(3.0 * np.pi * xp)), axis=1)
    return np.column_stack([xp, (1.0 + g) * h])


def _blocks(n_vars, n_obj):
    edges = [(j * n_vars) // n_obj for j in range(n_obj + 1)]
    return list(zip(edges[:-1], edges[1:]))


def dtlz8(X, n_obj):
    """Objectives and violation; feasible iff every constraint value is >= 0."""
    F = np.column_stack([X[:, a:b].mean(axis=1) for a, b in _blocks(X.shape[1], n_obj)])
    fm = F[:, -1]
    head = F[:, :-1]
    cons = [fm + 4.0 * head[:, j] - 1.0 for j in range(n_obj - 1)]
    two_smallest = np.sort(head, axis=1)[:, :2].sum(axis=1)
    cons.append(2.0 * fm + two_smallest - 1.0)
    violation = np.sum(np.maximum(0.0, -np.column_stack(cons)), axis=1)
    return F, violation


def dtlz9(X, n_obj):
    F = np.column_stack([np.sum(X[:, a:b] ** 0.1, axis=1) for a, b in _blocks(X.shape[1], n_obj)])
    fm = F[:, -1]
    cons = fm[:, None] ** 2 + F[:, :-1] ** 2 - 1.0
    violation = np.sum(np.maximum(0.0, -cons), axis=1)
    return F, violation


EVALUATORS = {1: dtlz1, 2: dtlz2, 3: dtlz3, 4: dtlz4, 5: dtlz5, 6: dtlz6, 7: dtlz7, 8: dtlz8, 9: dtlz9}


# --- true Pareto fronts ---------------------------------------------------


def _dtlz7_profile(t):
    return t * (1.0 + np.sin(3.0 * np.pi * t))


def dtlz7_optimal_intervals() -> tuple[tuple[float, float], tuple[float, float]]:
    """Per-variable ranges whose points are Pareto optimal for DTLZ7.

    A position value is optimal where the profile ``t (1 + sin 3 pi t)``
    reaches its running maximum over ``[0, t]``: a first rising branch up to
    the first local maximum, then the part of the second branch above that
    level, up to the second local maximum.
    """
    first = minimize_scalar(lambda t: -_dtlz7_profile(t), bounds=(0.0, 0.5), method="bounded",
                            options={"xatol": 1e-12}).x
    second = minimize_scalar(lambda t: -_dtlz7_profile(t), bounds=(0.5, 1.0), method="bounded",
                             options={"xatol": 1e-12}).x
    level = _dtlz7_profile(first)
    trough = minimize_scalar(_dtlz7_profile, bounds=(first, second), method="bounded").x
    rise = brentq(lambda t: _dtlz7_profile(t) - level, trough, second, xtol=1e-14)
    return (0.0, float(first)), (float(rise), float(second))


def _sample_union(rng, size, intervals):
    lengths = np.array([b - a for a, b in intervals])
    u = rng.random(size) * lengths.sum()
    out = np.empty(size)
    first_len = lengths[0]
    in_first = u < first_len
    out[in_first] = intervals[0][0] + u[in_first]
    out[~in_first] = intervals[1][0] + (u[~in_first] - first_len)
    return out


def front_dtlz1(n_obj, count, rng):
    return 0.5 * rng.dirichlet(np.ones(n_obj), size=count)


def front_sphere(n_obj, count, rng):
    z = np.abs(rng.standard_normal((count, n_obj)))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def front_degenerate(n_obj, count, rng):
    theta = np.full((count, n_obj - 1), 0.25 * np.pi)
    theta[:, 0] = rng.random(count) * HALF_PI
    return _spherical_front(theta, np.ones(count))


def front_dtlz7(n_obj, count, rng):
    intervals = dtlz7_optimal_intervals()
    xp = np.column_stack([_sample_union(rng, count, intervals) for _ in range(n_obj - 1)])
    h = n_obj - np.sum(_dtlz7_profile(xp) / 2.0, axis=1)
    return np.column_stack([xp, 2.0 * h])


def front_dtlz8(n_obj, count, rng, line_fraction=0.2):
    """Line where the first ``n_obj - 1`` constraints meet, plus the ``g_M`` boundary.

    On the line all leading objectives equal ``t`` in ``[0, 1/6]`` and the last
    is ``1 - 4t``. Below the level ``f_M = 1/3`` the optimal points have one
    leading objective ``s`` and all others ``1 - 2 f_M - s``.
    """
    n_line = int(round(line_fraction * count))
    t = rng.random(n_line) / 6.0
    line = np.column_stack([np.repeat(t[:, None], n_obj - 1, axis=1), 1.0 - 4.0 * t])
    n_plane = count - n_line
    c = rng.random(n_plane) / 3.0
    a = (1.0 - c) / 4.0
    b = 1.0 - 2.0 * c
    s = a + rng.random(n_plane) * (b / 2.0 - a)
    plane = np.repeat((b - s)[:, None], n_obj - 1, axis=1)
    idx = rng.integers(0, n_obj - 1, size=n_plane)
    plane[np.arange(n_plane), idx] = s
    plane = np.column_stack([plane, c])
    return np.vstack([line, plane])


def front_dtlz9(n_obj, count, rng):
    theta = rng.random(count) * HALF_PI
    lead = np.repeat(np.cos(theta)[:, None], n_obj - 1, axis=1)
    return np.column_stack([lead, np.sin(theta)])


FRONTS = {
    1: front_dtlz1,
    2: front_sphere,
    3: front_sphere,
    4: front_sphere,
    5: front_degenerate,
    6: front_degenerate,
    7: front_dtlz7,
    8: front_dtlz8,
    9: front_dtlz9,
}
