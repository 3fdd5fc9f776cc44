"""WFG1-WFG9 toolkit problems (Huband, Hingston, Barone and While).

Variables ``z_i`` live in ``[0, 2i]``. The first ``k`` are position-related,
the remaining ``l = n - k`` distance-related. Each problem is a chain of
transformations of the normalized variables into ``M`` underlying parameters,
followed by a shape function: ``f_m = x_M + 2m * h_m(x_1..x_{M-1})``.

WFG2 and WFG3 reduce distance variables in pairs; when ``l`` is odd the last
distance variable forms a group of its own.
"""

from __future__ import annotations

import numpy as np

PARAM_A = 0.98 / 49.98


def _clip01(y):
    return np.clip(y, 0.0, 1.0)


# --- transformations -----------------------------------------------------


def s_linear(y, a):
    return _clip01(np.abs(y - a) / np.abs(np.floor(a - y) + a))


def s_decept(y, a, b, c):
    t1 = np.floor(y - a + b) * (1.0 - c + (a - b) / b) / (a - b)
    t2 = np.floor(a + b - y) * (1.0 - c + (1.0 - a - b) / b) / (1.0 - a - b)
    return _clip01(1.0 + (np.abs(y - a) - b) * (t1 + t2 + 1.0 / b))


def s_multi(y, a, b, c):
    t = np.abs(y - c) / (2.0 * (np.floor(c - y) + c))
    return _clip01((1.0 + np.cos((4.0 * a + 2.0) * np.pi * (0.5 - t)) + 4.0 * b * t * t) / (b + 2.0))


def b_poly(y, alpha):
    return _clip01(y ** alpha)


def b_flat(y, a, b, c):
    out = (a + np.minimum(0.0, np.floor(y - b)) * a * (b - y) / b
           - np.minimum(0.0, np.floor(c - y)) * (1.0 - a) * (y - c) / (1.0 - c))
    return _clip01(out)


def _param_exponent(u, a=PARAM_A, b=0.02, c=50.0):
    return b + (c - b) * (a - (1.0 - 2.0 * u) * np.abs(np.floor(0.5 - u) + a))


def b_param(y, u, a=PARAM_A, b=0.02, c=50.0):
    return _clip01(y ** _param_exponent(u, a, b, c))


def r_sum(y, w):
    w = np.asarray(w, dtype=float)
    return _clip01(y @ w / w.sum())


def r_nonsep(y, a):
    N, m = y.shape
    total = np.zeros(N)
    for j in range(m):
        total += y[:, j]
        for k in range(a - 1):
            total += np.abs(y[:, j] - y[:, (j + 1 + k) % m])
    half = np.ceil(a / 2.0)
    return _clip01(total / (m / a * half * (1.0 + 2.0 * a - 2.0 * half)))


# --- shapes ----------------------------------------------------------------


def _shape(x, n_obj, head, tail, last):
    """Generic WFG shape: products of ``head`` terms times a ``tail`` term."""
    N = x.shape[0]
    H = np.empty((N, n_obj))
    M1 = n_obj - 1
    for m in range(1, n_obj + 1):
        h = np.prod(head(x[:, :M1 - m + 1]), axis=1) if m < n_obj else np.ones(N)
        if m > 1:
            h = h * tail(x[:, M1 - m + 1])
        H[:, m - 1] = h
    if last is not None:
        H[:, -1] = last(x[:, 0])
    return H


def shape_linear(x, n_obj):
    return _shape(x, n_obj, lambda v: v, lambda v: 1.0 - v, None)


def shape_convex(x, n_obj, last=None):
    return _shape(x, n_obj, lambda v: 1.0 - np.cos(0.5 * np.pi * v),
                  lambda v: 1.0 - np.sin(0.5 * np.pi * v), last)


def shape_concave(x, n_obj):
    return _shape(x, n_obj, lambda v: np.sin(0.5 * np.pi * v), lambda v: np.cos(0.5 * np.pi * v), None)


def mixed(x1, alpha=1.0, a=5.0):
    return (1.0 - x1 - np.cos(2.0 * a * np.pi * x1 + 0.5 * np.pi) / (2.0 * a * np.pi)) ** alpha


def disc(x1, alpha=1.0, beta=1.0, a=5.0):
    return 1.0 - x1 ** alpha * np.cos(a * x1 ** beta * np.pi) ** 2


# --- reductions shared by several problems -------------------------------


def _position_groups(k, n_obj):
    gap = k // (n_obj - 1)
    return [(i * gap, (i + 1) * gap) for i in range(n_obj - 1)]


def _reduce_sum(y, k, n_obj, weights=None):
    n = y.shape[1]
    w = np.ones(n) if weights is None else weights
    cols = [r_sum(y[:, a:b], w[a:b]) for a, b in _position_groups(k, n_obj)]
    cols.append(r_sum(y[:, k:], w[k:]))
    return np.column_stack(cols)


def _reduce_nonsep(y, k, n_obj):
    gap = k // (n_obj - 1)
    cols = [r_nonsep(y[:, a:b], gap) for a, b in _position_groups(k, n_obj)]
    cols.append(r_nonsep(y[:, k:], y.shape[1] - k))
    return np.column_stack(cols)


def _pair_distance(y, k):
    """WFG2/3: non-separable reduction of distance variables two by two."""
    n = y.shape[1]
    cols = [y[:, :k]]
    for a in range(k, n, 2):
        group = y[:, a:min(a + 2, n)]
        cols.append(r_nonsep(group, group.shape[1])[:, None])
    return np.hstack(cols)


def _post(t, degenerate):
    x = np.empty_like(t)
    x[:, -1] = t[:, -1]
    a = np.ones(t.shape[1] - 1)
    if degenerate:
        a[1:] = 0.0
    x[:, :-1] = np.maximum(t[:, -1:], a) * (t[:, :-1] - 0.5) + 0.5
    return x


def _finish(x, h):
    scales = 2.0 * np.arange(1, h.shape[1] + 1)
    return x[:, -1:] + scales * h


# --- problems ----------------------------------------------------------------


def _wfg1_t(y, k, n_obj):
    y = y.copy()
    y[:, k:] = s_linear(y[:, k:], 0.35)
    y[:, k:] = b_flat(y[:, k:], 0.8, 0.75, 0.85)
    y = b_poly(y, 0.02)
    return _reduce_sum(y, k, n_obj, weights=2.0 * np.arange(1, y.shape[1] + 1))


def wfg1(y, k, n_obj):
    x = _post(_wfg1_t(y, k, n_obj), False)
    return _finish(x, shape_convex(x[:, :-1], n_obj, last=mixed))


def _wfg2_t(y, k, n_obj):
    y = y.copy()
    y[:, k:] = s_linear(y[:, k:], 0.35)
    y = _pair_distance(y, k)
    return _reduce_sum(y, k, n_obj)


def wfg2(y, k, n_obj):
    x = _post(_wfg2_t(y, k, n_obj), False)
    return _finish(x, shape_convex(x[:, :-1], n_obj, last=disc))


def wfg3(y, k, n_obj):
    x = _post(_wfg2_t(y, k, n_obj), True)
    return _finish(x, shape_linear(x[:, :-1], n_obj))


def _concave(t):
    x = _post(t, False)
    return _finish(x, shape_concave(x[:, :-1], t.shape[1]))


def wfg4(y, k, n_obj):
    return _concave(_reduce_sum(s_multi(y, 30.0, 10.0, 0.35), k, n_obj))


def wfg5(y, k, n_obj):
    return _concave(_reduce_sum(s_decept(y, 0.35, 0.001, 0.05), k, n_obj))


def wfg6(y, k, n_obj):
    y = y.copy()
    y[:, k:] = s_linear(y[:, k:], 0.35)
    return _concave(_reduce_nonsep(y, k, n_obj))


def _tail_means(y):
    """Mean of ``y[:, i+1:]`` for every column ``i`` (0 for the last)."""
    n = y.shape[1]
    tail = np.cumsum(y[:, ::-1], axis=1)[:, ::-1]
    out = np.zeros_like(y)
    out[:, :-1] = tail[:, 1:] / np.arange(n - 1, 0, -1)
    return out


def _head_means(y):
    """Mean of ``y[:, :i]`` for every column ``i`` (0 for the first)."""
    n = y.shape[1]
    head = np.cumsum(y, axis=1)
    out = np.zeros_like(y)
    out[:, 1:] = head[:, :-1] / np.arange(1, n)
    return out


def wfg7(y, k, n_obj):
    u = _tail_means(y)
    y = y.copy()
    y[:, :k] = b_param(y[:, :k], u[:, :k])
    y[:, k:] = s_linear(y[:, k:], 0.35)
    return _concave(_reduce_sum(y, k, n_obj))


def wfg8(y, k, n_obj):
    u = _head_means(y)
    y = y.copy()
    y[:, k:] = b_param(y[:, k:], u[:, k:])
    y[:, k:] = s_linear(y[:, k:], 0.35)
    return _concave(_reduce_sum(y, k, n_obj))


def wfg9(y, k, n_obj):
    u = _tail_means(y)
    y = y.copy()
    y[:, :-1] = b_param(y[:, :-1], u[:, :-1])
    y[:, :k] = s_decept(y[:, :k], 0.35, 0.001, 0.05)
    y[:, k:] = s_multi(y[:, k:], 30.0, 95.0, 0.35)
    return _concave(_reduce_nonsep(y, k, n_obj))


EVALUATORS = {1: wfg1, 2: wfg2, 3: wfg3, 4: wfg4, 5: wfg5, 6: wfg6, 7: wfg7, 8: wfg8, 9: wfg9}


# --- optimal distance parameters --------------------------------------------


def optimal_distance(index, positions, n_vars):
    """Normalized decision vectors on the Pareto set for the given position values."""
    positions = np.atleast_2d(positions)
    N, k = positions.shape
    y = np.empty((N, n_vars))
    y[:, :k] = positions
    if index == 8:
        for i in range(k, n_vars):
            u = y[:, :i].mean(axis=1)
            y[:, i] = 0.35 ** (1.0 / _param_exponent(u))
    elif index == 9:
        y[:, -1] = 0.35
        for i in range(n_vars - 2, k - 1, -1):
            u = y[:, i + 1:].mean(axis=1)
            y[:, i] = 0.35 ** (1.0 / _param_exponent(u))
    else:
        y[:, k:] = 0.35
    return y
