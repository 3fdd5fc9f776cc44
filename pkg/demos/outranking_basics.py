"""
Comparing solutions with an interval outranking model
=====================================================

A decision maker rarely states exact weights. Here the weights, thresholds
and majority level are intervals, and the model turns pairwise comparisons
into a credibility score, a crisp outranking relation and a ranking.
"""

import numpy as np

from ioaco import DmModel, Interval, best_compromise, possibility, surrogate_rank
from ioaco.outranking import concordance_coalition, credibility, prefers

# how credible is "E >= D" when both are only known up to an interval?
print(possibility(Interval(2, 4), Interval(1, 3)))  # 0.75
print(possibility(Interval(3, 3), Interval(3, 3)))  # plain reals: 1.0

# a DM that cares mostly about the first of three objectives
dm = DmModel(
    weights=[(0.50, 0.60), (0.15, 0.25), (0.20, 0.30)],
    indifference=[(0.02, 0.05)] * 3,
    veto=[(0.30, 0.45)] * 3,
    lam=(0.55, 0.65),
    beta=0.67,
)

x = np.array([0.10, 0.50, 0.40])
y = np.array([0.30, 0.35, 0.30])
rec = credibility(x, y, dm)
print("coalition", sorted(concordance_coalition(x, y, dm)), "concordance", rec.concordance)
print("discordance", rec.discordance, "sigma", rec.sigma)
# x wins only on the first objective; that weight barely reaches the majority
# level, so sigma stays low and neither solution is strictly preferred
print("x preferred to y:", prefers(x, y, dm), " y preferred to x:", prefers(y, x, dm))

# rank a small population; front 1 is the best-compromise set
rng = np.random.default_rng(0)
theta = rng.uniform(0, np.pi / 2, (12, 2))
pop = np.column_stack([np.cos(theta[:, 0]) * np.cos(theta[:, 1]),
                       np.cos(theta[:, 0]) * np.sin(theta[:, 1]),
                       np.sin(theta[:, 0])])
print("fronts", surrogate_rank(pop, dm))
print("best compromise", best_compromise(pop, dm).round(3))
