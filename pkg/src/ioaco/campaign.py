"""Experiment campaigns: cached A-RoIs, resumable runs, result tables and reports.

Layout of an output directory::

    aroi/<problem>-m<m>-<dm>-n<size>.json      cached A-RoI per (problem, m, DM)
    cells/<problem>-m<m>/<dm>/<alg>-r<idx>.json one file per finished run
    results.csv                                 rebuilt from the cell files
    report.txt, report.json                     written by ``report``

Each run is a cell. A cell whose file exists is skipped, so an interrupted
campaign resumes where it stopped, and deleting one cell file recomputes
exactly that run. Every file is written to a temporary name and renamed, so
concurrent workers never expose partial output.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
import os
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .assessment import INDICATORS, ARoI, build_aroi, compare, indicators
from .config import ExperimentPlan, derive_seed
from .optimizer import OptimizerConfig, run
from .outranking import DmModel
from .problems import get_problem, sample_true_front

log = logging.getLogger(__name__)

CSV_COLUMNS = ("problem", "m", "dm_id", "algorithm", "seed", *INDICATORS, "evaluations", "wall_ms")
SCHEMA_VERSION = 1
SCHEMA_HASH = hashlib.sha256(f"{SCHEMA_VERSION}:{','.join(CSV_COLUMNS)}".encode()).hexdigest()[:12]
MODE_OF = {"ioaco": "preference", "baseline": "pareto-baseline"}


# --- files -------------------------------------------------------------------


def atomic_write_text(path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def write_json(path, obj) -> None:
    atomic_write_text(path, dumps(obj))


def aroi_to_dict(aroi: ARoI) -> dict:
    return {"provenance": aroi.provenance, "indices": [int(i) for i in aroi.indices],
            "points": aroi.points.tolist()}


def aroi_from_dict(data: dict) -> ARoI:
    points = np.asarray(data["points"], dtype=float)
    if points.ndim != 2 or points.shape[0] == 0:
        raise ValueError("A-RoI file holds no points")
    return ARoI(points=points, indices=np.asarray(data.get("indices", []), dtype=np.int64),
                provenance=dict(data.get("provenance", {})))


def load_aroi(path) -> ARoI:
    with open(path, encoding="utf-8") as fh:
        return aroi_from_dict(json.load(fh))


# --- A-RoI --------------------------------------------------------------------


def front_seed(master_seed: int, problem: str, n_obj: int) -> int:
    return derive_seed(master_seed, "front", problem, n_obj)


def compute_aroi(problem: str, n_obj: int, dm: DmModel, size: int, seed: int) -> ARoI:
    spec = get_problem(problem, n_obj)
    front = sample_true_front(spec, size, seed)
    provenance = {"problem": problem, "m": n_obj, "dm_id": dm.name, "sample_size": size, "seed": seed}
    return build_aroi(front, dm, provenance=provenance)


def aroi_path(out_dir, problem: str, n_obj: int, dm_id: str, size: int) -> Path:
    return Path(out_dir) / "aroi" / f"{problem}-m{n_obj}-{dm_id}-n{size}.json"


def ensure_aroi(out_dir, problem: str, n_obj: int, dm: DmModel, size: int, master_seed: int) -> ARoI:
    """Cached A-RoI; computed and stored on first use."""
    path = aroi_path(out_dir, problem, n_obj, dm.name, size)
    if path.exists():
        return load_aroi(path)
    aroi = compute_aroi(problem, n_obj, dm, size, front_seed(master_seed, problem, n_obj))
    write_json(path, aroi_to_dict(aroi))
    return aroi


# --- cells ---------------------------------------------------------------------


@dataclass(frozen=True)
class Cell:
    problem: str
    n_obj: int
    dm_id: str
    algorithm: str
    run_index: int

    def path(self, out_dir) -> Path:
        return (Path(out_dir) / "cells" / f"{self.problem}-m{self.n_obj}" / self.dm_id
                / f"{self.algorithm}-r{self.run_index:03d}.json")

    def seed(self, master_seed: int) -> int:
        return derive_seed(master_seed, self.problem, self.n_obj, self.dm_id, self.run_index)


def plan_cells(plan: ExperimentPlan) -> list[tuple[Cell, DmModel]]:
    cells = []
    for problem, n_obj in plan.problems:
        for dm in plan.dms_for(n_obj):
            for alg in plan.algorithms:
                for r in range(plan.seeds_per_cell):
                    cells.append((Cell(problem, n_obj, dm.name, alg, r), dm))
    return cells


def run_cell(cell: Cell, dm: DmModel, plan: ExperimentPlan, aroi: ARoI, timing: bool = False) -> dict:
    spec = get_problem(cell.problem, cell.n_obj)
    seed = cell.seed(plan.master_seed)
    config = OptimizerConfig(kappa=plan.kappa, n_ants=plan.n_ants, iter_max=plan.iter_max,
                             zeta=plan.zeta, xi=plan.xi, mode=MODE_OF[cell.algorithm], seed=seed)
    start = time.perf_counter()
    result = run(spec, dm, config)
    wall_ms = (time.perf_counter() - start) * 1e3 if timing else 0.0
    block = indicators(result.best_f, aroi)
    row = {"problem": cell.problem, "m": cell.n_obj, "dm_id": cell.dm_id, "algorithm": cell.algorithm,
           "seed": seed, **block.as_dict(), "evaluations": result.evaluations, "wall_ms": wall_ms}
    return {"row": row, "best_f": result.best_f.tolist(), "config": config.to_dict()}


def _cell_job(args):
    cell, dm, plan, aroi, out_dir, timing = args
    write_json(cell.path(out_dir), run_cell(cell, dm, plan, aroi, timing))
    return cell


def _aroi_job(args):
    out_dir, problem, n_obj, dm, size, master_seed = args
    ensure_aroi(out_dir, problem, n_obj, dm, size, master_seed)
    return problem, n_obj, dm.name


@dataclass
class CampaignSummary:
    total: int
    computed: int
    skipped: int
    csv_path: Path


def run_campaign(plan: ExperimentPlan, out_dir, threads: int = 1, timing: bool = False) -> CampaignSummary:
    """Run every missing cell of ``plan`` and rebuild ``results.csv``."""
    plan.validate()
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    cells = plan_cells(plan)

    keys = sorted({(c.problem, c.n_obj, c.dm_id) for c, _ in cells})
    dms = {(c.problem, c.n_obj, c.dm_id): dm for c, dm in cells}
    aroi_jobs = [(out_dir, p, m, dms[(p, m, d)], plan.aroi_size, plan.master_seed) for p, m, d in keys]
    _map(_aroi_job, aroi_jobs, threads)
    arois = {(p, m, d): load_aroi(aroi_path(out_dir, p, m, d, plan.aroi_size)) for p, m, d in keys}

    todo = [(c, dm) for c, dm in cells if not c.path(out_dir).exists()]
    log.info("campaign: %d cells, %d to compute", len(cells), len(todo))
    jobs = [(c, dm, plan, arois[(c.problem, c.n_obj, c.dm_id)], out_dir, timing) for c, dm in todo]
    _map(_cell_job, jobs, threads)

    csv_path = out_dir / "results.csv"
    rows = []
    for cell, _ in cells:
        with open(cell.path(out_dir), encoding="utf-8") as fh:
            rows.append(json.load(fh)["row"])
    atomic_write_text(csv_path, rows_to_csv(rows))
    return CampaignSummary(len(cells), len(todo), len(cells) - len(todo), csv_path)


def _map(func, jobs, threads: int):
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(func, jobs, chunksize=1))
    return [func(job) for job in jobs]


# --- result table ---------------------------------------------------------------


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([*CSV_COLUMNS, "schema"])
    for row in rows:
        writer.writerow([_fmt(row[c]) for c in CSV_COLUMNS] + [SCHEMA_HASH])
    return buf.getvalue()


@dataclass
class ResultTable:
    rows: list
    rejected: list  # (line number, reason)


def read_results(path) -> ResultTable:
    """Parse a results CSV; malformed rows and rows of another schema are set aside."""
    rows, rejected = [], []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            return ResultTable([], [])
        missing = [c for c in CSV_COLUMNS if c not in header]
        if missing:
            raise ValueError(f"{path}: missing columns {', '.join(missing)}")
        pos = {name: i for i, name in enumerate(header)}
        for lineno, rec in enumerate(reader, start=2):
            if not rec:
                continue
            if len(rec) != len(header):
                rejected.append((lineno, f"expected {len(header)} fields, got {len(rec)}"))
                continue
            if "schema" in pos and rec[pos["schema"]] != SCHEMA_HASH:
                rejected.append((lineno, f"schema {rec[pos['schema']]!r} does not match {SCHEMA_HASH}"))
                continue
            try:
                row = {"problem": rec[pos["problem"]], "m": int(rec[pos["m"]]),
                       "dm_id": rec[pos["dm_id"]], "algorithm": rec[pos["algorithm"]],
                       "seed": int(rec[pos["seed"]]), "evaluations": int(rec[pos["evaluations"]]),
                       "wall_ms": float(rec[pos["wall_ms"]])}
                for name in INDICATORS:
                    row[name] = float(rec[pos[name]])
                    if not np.isfinite(row[name]) or row[name] < 0:
                        raise ValueError(f"{name} = {row[name]}")
            except ValueError as exc:
                rejected.append((lineno, f"unreadable value: {exc}"))
                continue
            rows.append(row)
    return ResultTable(rows, rejected)


# --- report ---------------------------------------------------------------------


def group_samples(rows, by_dm: bool = False) -> dict:
    """``samples[problem key][algorithm][indicator]`` -> list of values."""
    out = {}
    for row in rows:
        key = (row["problem"], row["m"], row["dm_id"]) if by_dm else (row["problem"], row["m"])
        per_alg = out.setdefault(key, {}).setdefault(row["algorithm"], {name: [] for name in INDICATORS})
        for name in INDICATORS:
            per_alg[name].append(row[name])
    return out


def _label(key) -> str:
    return ":".join(str(k) for k in key)


def build_report(table: ResultTable, alpha: float = 0.05, by_dm: bool = False) -> dict:
    """Per-indicator win/loss lists and Borda sums over the problems of a result table.

    Problems where some algorithm has fewer than 5 runs, or where not every
    algorithm is present, are listed as skipped.
    """
    samples = group_samples(table.rows, by_dm)
    algorithms = sorted({alg for per in samples.values() for alg in per})
    usable, skipped = {}, []
    for key, per in sorted(samples.items()):
        sizes = [len(per.get(alg, {}).get(INDICATORS[0], [])) for alg in algorithms]
        if min(sizes) < 5:
            skipped.append({"problem": _label(key), "reason": "fewer than 5 runs for some algorithm"})
        else:
            usable[key] = per
    report = {"alpha": alpha, "algorithms": algorithms, "problems": [_label(k) for k in sorted(usable)],
              "skipped": skipped, "rejected_rows": [{"line": n, "reason": r} for n, r in table.rejected],
              "indicators": {}}
    if not usable or len(algorithms) < 2:
        return report
    verdict = compare(usable, alpha)
    for name in INDICATORS:
        pairs = {}
        for a in algorithms:
            for b in algorithms:
                if a == b:
                    continue
                better = [_label(p) for p in verdict.wins(name, a, b)]
                worse = [_label(p) for p in verdict.wins(name, b, a)]
                ties = [_label(p) for p in verdict.problems if _label(p) not in better + worse]
                pairs[f"{a} vs {b}"] = {"better": better, "worse": worse, "no_difference": ties}
        p_values = {_label(p): {f"{o.first} vs {o.second}": {"p": o.p_value, "reject": o.reject, "winner": o.winner}
                                for o in verdict.pairs[name][p]} for p in verdict.problems}
        report["indicators"][name] = {
            "pairs": pairs,
            "p_values": p_values,
            "positions": {_label(p): verdict.positions[name][p] for p in verdict.problems},
            "borda": verdict.borda[name],
            "order": verdict.order[name],
        }
    return report


def format_report(report: dict) -> str:
    lines = [f"algorithms: {', '.join(report['algorithms']) or '-'}",
             f"problems: {len(report['problems'])}  (alpha = {report['alpha']})"]
    for item in report["skipped"]:
        lines.append(f"skipped {item['problem']}: {item['reason']}")
    for item in report["rejected_rows"]:
        lines.append(f"rejected row {item['line']}: {item['reason']}")
    for name, block in report["indicators"].items():
        lines.append("")
        lines.append(f"== {name} ==")
        for pair, res in block["pairs"].items():
            lines.append(f"{pair}: better {len(res['better'])}, worse {len(res['worse'])}, "
                         f"no difference {len(res['no_difference'])}")
            if res["better"]:
                lines.append(f"  better on: {', '.join(res['better'])}")
            if res["worse"]:
                lines.append(f"  worse on: {', '.join(res['worse'])}")
        borda = block["borda"]
        lines.append("Borda sums: " + ", ".join(f"{alg} {borda[alg]:.1f}" for alg in block["order"])
                     + f"  (total {sum(borda.values()):.1f})")
    return "\n".join(lines) + "\n"


def write_report(csv_path, out_dir=None, alpha: float = 0.05, by_dm: bool = False) -> dict:
    table = read_results(csv_path)
    report = build_report(table, alpha, by_dm)
    if out_dir is not None:
        write_json(Path(out_dir) / "report.json", report)
        atomic_write_text(Path(out_dir) / "report.txt", format_report(report))
    return report
