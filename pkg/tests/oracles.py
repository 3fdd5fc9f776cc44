"""Independent brute-force references used by the tests.

Everything here is scalar Python written straight from the definitions, with
no shared code from the package beyond reading DM parameters.
"""

from __future__ import annotations

import itertools
import math
import random


def poss(e_lo, e_hi, d_lo, d_hi):
    """P(E >= D) from the piecewise definition."""
    if e_lo == e_hi and d_lo == d_hi:
        return 1.0 if e_lo >= d_lo else 0.0
    p = (e_hi - d_lo) / ((e_hi - e_lo) + (d_hi - d_lo))
    if p > 1.0:
        return 1.0
    if p >= 0.0:
        return p
    return 0.0


def _params(dm):
    w = [(iv.lo, iv.hi) for iv in dm.weights]
    q = [(iv.lo, iv.hi) for iv in dm.indifference]
    v = [(iv.lo, iv.hi) for iv in dm.veto]
    return w, q, v, (dm.lam.lo, dm.lam.hi), dm.beta


def coalition(fx, fy, dm):
    _, q, _, _, _ = _params(dm)
    out = []
    for k in range(len(fx)):
        diff = fy[k] - fx[k]
        # -q_k = [-q_hi, -q_lo]
        if poss(diff, diff, -q[k][1], -q[k][0]) >= 0.5:
            out.append(k)
    return out


def concordance(fx, fy, dm):
    w, _, _, _, _ = _params(dm)
    C = set(coalition(fx, fy, dm))
    sc_lo = sc_hi = sd_lo = sd_hi = 0.0
    for k in range(len(fx)):
        if k in C:
            sc_lo += w[k][0]
            sc_hi += w[k][1]
        else:
            sd_lo += w[k][0]
            sd_hi += w[k][1]
    c_lo = sc_lo if sc_lo + sd_hi >= 1.0 else 1.0 - sd_hi
    c_hi = sc_hi if sc_hi + sd_lo <= 1.0 else 1.0 - sd_lo
    return c_lo, c_hi


def discordance(fx, fy, dm):
    _, _, v, _, _ = _params(dm)
    C = set(coalition(fx, fy, dm))
    worst = 0.0
    for k in range(len(fx)):
        if k in C:
            continue
        diff = fx[k] - fy[k]
        worst = max(worst, poss(diff, diff, v[k][0], v[k][1]))
    return 1.0 - worst


def sigma(fx, fy, dm):
    lam = (dm.lam.lo, dm.lam.hi)
    c_lo, c_hi = concordance(fx, fy, dm)
    return min(poss(c_lo, c_hi, lam[0], lam[1]), discordance(fx, fy, dm))


def dominates(fx, fy):
    return all(a <= b for a, b in zip(fx, fy)) and any(a < b for a, b in zip(fx, fy))


def outranks(fx, fy, dm):
    return sigma(fx, fy, dm) >= dm.beta


def prefers(fx, fy, dm):
    return dominates(fx, fy) or (outranks(fx, fy, dm) and not outranks(fy, fx, dm))


def strength_weakness(pop, dm):
    n = len(pop)
    strength = [sum(1 for j in range(n) if j != i and outranks(pop[i], pop[j], dm)) for i in range(n)]
    weakness = [sum(1 for j in range(n) if j != i and prefers(pop[j], pop[i], dm)) for i in range(n)]
    return strength, weakness


def fronts(pop, dm):
    strength, weakness = strength_weakness(pop, dm)
    n = len(pop)
    out = []
    for i in range(n):
        better = 0
        for j in range(n):
            if weakness[j] < weakness[i] or (weakness[j] == weakness[i] and strength[j] > strength[i]):
                better += 1
        out.append(1 + better)
    return out


def best_compromise(pop, dm):
    """Indices minimizing weakness, then maximizing strength."""
    strength, weakness = strength_weakness(pop, dm)
    w_min = min(weakness)
    s_max = max(s for s, w in zip(strength, weakness) if w == w_min)
    return [i for i in range(len(pop)) if weakness[i] == w_min and strength[i] == s_max]


def rank_sum_permutation_p(a, b, shuffles=10_000, seed=0):
    """Two-sided permutation p-value of the rank-sum statistic (mid-ranks)."""
    data = list(a) + list(b)
    order = sorted(range(len(data)), key=lambda i: data[i])
    ranks = [0.0] * len(data)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and data[order[j + 1]] == data[order[i]]:
            j += 1
        mid = (i + j) / 2.0 + 1.0
        for t in range(i, j + 1):
            ranks[order[t]] = mid
        i = j + 1
    n1 = len(a)
    expected = n1 * (len(data) + 1) / 2.0
    observed = abs(sum(ranks[:n1]) - expected)
    rng = random.Random(seed)
    hits = 0
    for _ in range(shuffles):
        rng.shuffle(ranks)
        if abs(sum(ranks[:n1]) - expected) >= observed - 1e-9:
            hits += 1
    return (hits + 1) / (shuffles + 1)


def exact_rank_sum_p(a, b):
    """Exact two-sided p-value by enumerating every split (small samples only)."""
    data = list(a) + list(b)
    n1 = len(a)
    srt = sorted(data)
    rank_of = {}
    for value in set(data):
        first = srt.index(value)
        last = len(srt) - 1 - srt[::-1].index(value)
        rank_of[value] = (first + last) / 2.0 + 1.0
    ranks = [rank_of[x] for x in data]
    expected = n1 * (len(data) + 1) / 2.0
    observed = abs(sum(ranks[:n1]) - expected)
    hits = total = 0
    for combo in itertools.combinations(range(len(data)), n1):
        total += 1
        if abs(sum(ranks[i] for i in combo) - expected) >= observed - 1e-9:
            hits += 1
    return hits / total


def positional_weight(l, kappa, zeta):
    s = zeta * kappa
    return math.exp(-((l - 1) ** 2) / (2 * s * s)) / (s * math.sqrt(2 * math.pi))


def rank_sum_permutation_p_fast(a, b, shuffles=100_000, seed=0):
    """Vectorized variant of :func:`rank_sum_permutation_p` for large shuffle counts."""
    import numpy as np
    from scipy.stats import rankdata

    n1, n = len(a), len(a) + len(b)
    ranks = rankdata(np.concatenate([a, b]))
    expected = n1 * (n + 1) / 2.0
    observed = abs(ranks[:n1].sum() - expected)
    rng = np.random.default_rng(seed)
    picks = np.argsort(rng.random((shuffles, n)), axis=1)[:, :n1]
    return float(np.mean(np.abs(ranks[picks].sum(axis=1) - expected) >= observed - 1e-9))
