"""
A small experiment campaign
===========================

A plan file lists problems, algorithms, seeds and the colony budget. The
campaign writes one file per run, so an interrupted campaign resumes where
it stopped, and collects the indicators into a CSV that the report turns
into win/loss counts and Borda sums.

The same steps are available from the shell::

    ioaco campaign plan.ini out/
    ioaco report out/results.csv
"""

import tempfile
from pathlib import Path

from ioaco.campaign import format_report, run_campaign, write_report
from ioaco.config import parse_plan_text

plan = parse_plan_text("""
[plan]
problems = dtlz1:3, dtlz2:3
algorithms = ioaco, baseline
seeds_per_cell = 6
master_seed = 11
aroi_size = 500
kappa = 20
n_ants = 20
iter_max = 30
dms = generate 1
""")

with tempfile.TemporaryDirectory() as tmp:
    out = Path(tmp)
    summary = run_campaign(plan, out)
    print(f"{summary.computed} runs computed")

    # a second call finds every run on disk and only rebuilds the CSV
    print(f"{run_campaign(plan, out).skipped} runs reused")

    report = write_report(summary.csv_path, out)
    print(format_report(report))
