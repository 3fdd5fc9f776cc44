"""Plain-text configuration files for DM models and experiment plans.

The format is line oriented::

    # comment
    [dm d0]
    weights = 0.30,0.36; 0.25,0.31; 0.38,0.46
    indifference = 0.02,0.05; 0.02,0.05; 0.02,0.05
    veto = 0.2,0.4; 0.2,0.4; 0.2,0.4
    lambda = 0.6,0.7
    beta = 0.67

An interval is written ``lo,hi`` (a bare number is a degenerate interval)
and a vector of intervals separates its entries with ``;``. Thresholds are in
normalized objective units.

A plan file adds a ``[plan]`` section::

    [plan]
    problems = dtlz1:3, dtlz2:3, wfg4:5
    algorithms = ioaco, baseline
    seeds_per_cell = 30
    master_seed = 2024
    aroi_size = 2000
    kappa = 50
    n_ants = 50
    iter_max = 300
    dms = generate 3        # or: dms = file  (uses the [dm ...] sections)

``dms = generate N`` builds N synthetic models per objective count with
:func:`generate_dm_settings`; ``dms = file`` uses the ``[dm ...]`` sections,
which must match the objective count of every problem.
"""

from __future__ import annotations

import configparser
import hashlib
from dataclasses import dataclass, field

import numpy as np

from .intervals import Interval
from .outranking import DmModel, DmValidationError
from .problems import parse_problem_id

ALGORITHMS = ("ioaco", "baseline")


class ConfigError(ValueError):
    """Malformed configuration text."""


def _parser() -> configparser.ConfigParser:
    cp = configparser.ConfigParser(inline_comment_prefixes=("#",), interpolation=None)
    cp.optionxform = str
    return cp


def parse_interval(text: str) -> Interval:
    parts = [p.strip() for p in text.split(",")]
    try:
        values = [float(p) for p in parts]
    except ValueError:
        raise ConfigError(f"not an interval: {text!r}") from None
    if len(values) == 1:
        return Interval(values[0], values[0])
    if len(values) != 2:
        raise ConfigError(f"an interval needs one or two numbers: {text!r}")
    try:
        return Interval(values[0], values[1])
    except ValueError as exc:
        raise ConfigError(f"bad interval {text!r}: {exc}") from None


def parse_interval_vector(text: str) -> list[Interval]:
    return [parse_interval(item) for item in text.split(";") if item.strip()]


def format_interval(iv: Interval) -> str:
    return f"{iv.lo!r},{iv.hi!r}"


def format_interval_vector(items) -> str:
    return "; ".join(format_interval(iv) for iv in items)


def _dm_from_section(name: str, sec) -> DmModel:
    missing = [key for key in ("weights", "indifference", "veto", "lambda", "beta") if key not in sec]
    if missing:
        raise ConfigError(f"DM {name!r} lacks keys: {', '.join(missing)}")
    try:
        beta = float(sec["beta"])
    except ValueError:
        raise ConfigError(f"DM {name!r}: beta must be a number") from None
    return DmModel(
        weights=parse_interval_vector(sec["weights"]),
        indifference=parse_interval_vector(sec["indifference"]),
        veto=parse_interval_vector(sec["veto"]),
        lam=parse_interval(sec["lambda"]),
        beta=beta,
        name=name,
    )


def parse_dm_text(text: str) -> list[DmModel]:
    """All ``[dm NAME]`` sections of ``text``, in file order.

    Raises :class:`ConfigError` on syntax problems and
    :class:`~ioaco.outranking.DmValidationError` on invalid parameters.
    """
    cp = _parser()
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from None
    out = []
    for section in cp.sections():
        head, _, name = section.partition(" ")
        if head != "dm":
            continue
        if not name.strip():
            raise ConfigError("a [dm] section needs a name, e.g. [dm d0]")
        out.append(_dm_from_section(name.strip(), cp[section]))
    return out


def load_dms(path) -> list[DmModel]:
    with open(path, encoding="utf-8") as fh:
        dms = parse_dm_text(fh.read())
    if not dms:
        raise ConfigError(f"no [dm ...] section in {path}")
    return dms


def format_dm(dm: DmModel) -> str:
    return "\n".join([
        f"[dm {dm.name}]",
        f"weights = {format_interval_vector(dm.weights)}",
        f"indifference = {format_interval_vector(dm.indifference)}",
        f"veto = {format_interval_vector(dm.veto)}",
        f"lambda = {format_interval(dm.lam)}",
        f"beta = {dm.beta!r}",
        "",
    ])


def format_dms(dms) -> str:
    return "\n".join(format_dm(dm) for dm in dms)


def derive_seed(master_seed: int, *parts) -> int:
    """Stable 63-bit seed from a master seed and a cell key."""
    key = "|".join(str(p) for p in (master_seed, *parts))
    return int.from_bytes(hashlib.sha256(key.encode()).digest()[:8], "big") >> 1


def generate_dm_settings(count: int, master_seed: int, n_obj: int, *, half_width: float = 0.1,
                         indifference=(0.02, 0.05), veto=(0.2, 0.4), lam=(0.6, 0.7),
                         beta: float = 0.67) -> list[DmModel]:
    """Deterministic synthetic DM models.

    Central weights are uniform draws on the simplex, widened to intervals of
    relative half-width ``half_width``. Since the centres sum to one, the
    lower limits sum below one and the upper limits above. The same
    thresholds apply to every objective.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if not 0 <= half_width < 1:
        raise ValueError("half_width must lie in [0, 1)")
    rng = np.random.default_rng(derive_seed(master_seed, "dm", n_obj))
    out = []
    for i in range(count):
        w = rng.dirichlet(np.ones(n_obj))
        # keep every weight clearly positive
        w = np.maximum(w, 1e-3)
        w /= w.sum()
        weights = [(float(c * (1 - half_width)), float(c * (1 + half_width))) for c in w]
        out.append(DmModel(
            weights=weights,
            indifference=[tuple(indifference)] * n_obj,
            veto=[tuple(veto)] * n_obj,
            lam=tuple(lam),
            beta=beta,
            name=f"m{n_obj}-d{i}",
        ))
    return out


@dataclass
class ExperimentPlan:
    problems: list  # (problem id, n_obj)
    algorithms: list = field(default_factory=lambda: list(ALGORITHMS))
    seeds_per_cell: int = 30
    master_seed: int = 0
    aroi_size: int = 2000
    kappa: int = 50
    n_ants: int = 50
    iter_max: int = 300
    zeta: float = 0.1
    xi: float = 0.5
    dm_source: str = "generate"
    dm_count: int = 3
    dm_models: list = field(default_factory=list)  # explicit models for dm_source == "file"

    def dms_for(self, n_obj: int) -> list[DmModel]:
        if self.dm_source == "generate":
            return generate_dm_settings(self.dm_count, self.master_seed, n_obj)
        return [dm for dm in self.dm_models if dm.n == n_obj]

    def validate(self):
        if self.seeds_per_cell < 1:
            raise ConfigError("seeds_per_cell must be >= 1")
        for alg in self.algorithms:
            if alg not in ALGORITHMS:
                raise ConfigError(f"unknown algorithm {alg!r}; choose from {ALGORITHMS}")
        for pid, m in self.problems:
            parse_problem_id(pid)
            if self.dm_source == "file" and not self.dms_for(m) and "ioaco" in self.algorithms:
                raise ConfigError(f"no DM model with {m} objectives for {pid}")
        if self.aroi_size < 1 or self.kappa < 2 or self.n_ants < 1 or self.iter_max < 1:
            raise ConfigError("aroi_size, kappa, n_ants and iter_max must be positive (kappa >= 2)")


_PLAN_INT = ("seeds_per_cell", "master_seed", "aroi_size", "kappa", "n_ants", "iter_max")
_PLAN_FLOAT = ("zeta", "xi")


def parse_plan_text(text: str) -> ExperimentPlan:
    cp = _parser()
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from None
    if not cp.has_section("plan"):
        raise ConfigError("plan file needs a [plan] section")
    sec = cp["plan"]
    known = {"problems", "algorithms", "dms", *_PLAN_INT, *_PLAN_FLOAT}
    unknown = sorted(set(sec) - known)
    if unknown:
        raise ConfigError(f"unknown plan keys: {', '.join(unknown)}")
    problems = []
    for item in sec.get("problems", "").split(","):
        item = item.strip()
        if not item:
            continue
        pid, sep, m = item.partition(":")
        if not sep:
            raise ConfigError(f"problem entries look like dtlz2:3, got {item!r}")
        try:
            problems.append((pid.strip().lower(), int(m)))
        except ValueError:
            raise ConfigError(f"bad objective count in {item!r}") from None
    kwargs = {}
    try:
        for key in _PLAN_INT:
            if key in sec:
                kwargs[key] = int(sec[key])
        for key in _PLAN_FLOAT:
            if key in sec:
                kwargs[key] = float(sec[key])
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    if "algorithms" in sec:
        kwargs["algorithms"] = [a.strip() for a in sec["algorithms"].split(",") if a.strip()]
    dms = sec.get("dms", "generate 3").split()
    if dms[0] == "generate":
        kwargs["dm_source"] = "generate"
        kwargs["dm_count"] = int(dms[1]) if len(dms) > 1 else 3
    elif dms[0] == "file":
        kwargs["dm_source"] = "file"
        kwargs["dm_models"] = parse_dm_text(text)
    else:
        raise ConfigError(f"dms must be 'generate N' or 'file', got {sec['dms']!r}")
    plan = ExperimentPlan(problems=problems, **kwargs)
    plan.validate()
    return plan


def load_plan(path) -> ExperimentPlan:
    with open(path, encoding="utf-8") as fh:
        return parse_plan_text(fh.read())


__all__ = [
    "ALGORITHMS", "ConfigError", "DmValidationError", "ExperimentPlan", "derive_seed", "format_dm",
    "format_dms", "generate_dm_settings", "load_dms", "load_plan", "parse_dm_text", "parse_plan_text",
]
