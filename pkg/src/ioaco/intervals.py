"""Interval numbers and the possibility-based order between them.

An interval ``[lo, hi]`` models an imprecisely known quantity. Two intervals
are compared through the possibility degree ``P(E >= D)``, the credibility
that a realization of ``E`` is not smaller than a realization of ``D``.

Scalar functions work on :class:`Interval` values; the ``*_array`` variants
take the lower and upper limits as numpy arrays and broadcast, which is what
the population-level outranking code uses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Interval:
    """Closed real interval ``[lo, hi]`` with ``lo <= hi``."""

    lo: float
    hi: float

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise ValueError(f"interval limits must be finite, got [{lo}, {hi}]")
        if lo > hi:
            raise ValueError(f"interval lower limit exceeds upper limit: [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, value: float) -> "Interval":
        return cls(value, value)

    @property
    def degenerate(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def __add__(self, other: "Interval") -> "Interval":
        return add(self, other)

    def __neg__(self) -> "Interval":
        return negate(self)

    def __iter__(self):
        yield self.lo
        yield self.hi

    def to_list(self) -> list[float]:
        return [self.lo, self.hi]


def make_interval(lo: float, hi: float) -> Interval:
    return Interval(lo, hi)


def as_interval(value) -> Interval:
    """Coerce a real, a ``(lo, hi)`` pair or an :class:`Interval`."""
    if isinstance(value, Interval):
        return value
    if isinstance(value, (int, float, np.integer, np.floating)):
        return Interval.point(float(value))
    lo, hi = value
    return Interval(lo, hi)


def add(d: Interval, e: Interval) -> Interval:
    return Interval(d.lo + e.lo, d.hi + e.hi)


def negate(e: Interval) -> Interval:
    return Interval(-e.hi, -e.lo)


def possibility(e: Interval, d: Interval) -> float:
    """Possibility degree ``P(E >= D)`` in ``[0, 1]``.

    Two degenerate intervals compare as real numbers. Otherwise the ratio
    ``(E.hi - D.lo) / (width(E) + width(D))`` is clamped to ``[0, 1]``.

    >>> possibility(Interval(2, 4), Interval(1, 3))
    0.75
    """
    if e.lo == e.hi and d.lo == d.hi:
        return 1.0 if e.lo >= d.lo else 0.0
    p = (e.hi - d.lo) / ((e.hi - e.lo) + (d.hi - d.lo))
    if p > 1.0:
        return 1.0
    if p >= 0.0:
        return p
    return 0.0


def interval_geq(e: Interval, d: Interval) -> bool:
    return possibility(e, d) >= 0.5


def interval_gt(e: Interval, d: Interval) -> bool:
    return possibility(e, d) > 0.5


def possibility_array(e_lo, e_hi, d_lo, d_hi) -> np.ndarray:
    """Broadcasting version of :func:`possibility` over limit arrays."""
    e_lo, e_hi, d_lo, d_hi = np.broadcast_arrays(
        *(np.asarray(a, dtype=float) for a in (e_lo, e_hi, d_lo, d_hi))
    )
    denom = (e_hi - e_lo) + (d_hi - d_lo)
    both_degenerate = (e_lo == e_hi) & (d_lo == d_hi)
    with np.errstate(divide="ignore", invalid="ignore"):
        p = (e_hi - d_lo) / denom
    p = np.where(p > 1.0, 1.0, np.where(p >= 0.0, p, 0.0))
    return np.where(both_degenerate, (e_lo >= d_lo).astype(float), p)
