"""
One preference-guided run against the Pareto baseline
=====================================================

Both runs share the colony machinery. The preference run ranks the merged
set with the DM's outranking model, the baseline with non-dominated sorting.
Distances are measured to the region of interest of a sampled true front.
"""

import numpy as np

from ioaco import OptimizerConfig, build_aroi, get_problem, indicators, run, sample_true_front
from ioaco.config import generate_dm_settings

problem = get_problem("dtlz1", 3)
dm = generate_dm_settings(1, master_seed=7, n_obj=3)[0]
print(problem, dm.name, [f"{w.lo:.2f}-{w.hi:.2f}" for w in dm.weights])

# region of interest: the best-compromise points of a 2000-point front sample
front = sample_true_front(problem, 2000, rng=1)
aroi = build_aroi(front, dm)
print("A-RoI points:", len(aroi), "centre", aroi.points.mean(axis=0).round(3))

for mode in ("preference", "pareto-baseline"):
    result = run(problem, dm, OptimizerConfig(kappa=50, iter_max=150, mode=mode, seed=3))
    block = indicators(result.best_f, aroi)
    print(f"{mode:16s} |F1| = {len(result.best_indices):2d}  evaluations = {result.evaluations}  "
          f"min_euclid = {block.min_euclid:.4f}  avg_euclid = {block.avg_euclid:.4f}")

# the best-compromise set is the front-1 slice of the final archive
print(np.array_equal(result.best_f, result.archive.f[result.archive.fronts == 1]))
