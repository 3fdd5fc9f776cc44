"""Interval-outranking ant colony optimization for many-objective problems."""

from .intervals import Interval, possibility
from .outranking import DmModel, DmValidationError, best_compromise, surrogate_rank
from .aco import PheromoneArchive, SearchSpace
from .optimizer import OptimizerConfig, RunResult, run
from .problems import get_problem, make_problem, sample_true_front
from .assessment import build_aroi, indicators

__version__ = "0.1.0"

__all__ = [
    "Interval", "possibility", "DmModel", "DmValidationError", "best_compromise", "surrogate_rank",
    "PheromoneArchive", "SearchSpace", "OptimizerConfig", "RunResult", "run", "get_problem",
    "make_problem", "sample_true_front", "build_aroi", "indicators",
]
