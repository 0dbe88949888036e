"""Possibilistic uncertainty of an ordered possibility distribution.

For ``r_1 = 1 >= r_2 >= ... >= r_k`` and ``r_{k+1} = 0`` (all logs base 2)::

    N(r)  = sum_{i=2..k} (r_i - r_{i+1}) * log2(i)
    ST(r) = sum_{i=2..k} (r_i - r_{i+1}) * log2(i / sum_{j<=i} r_j)
    T(r)  = N(r) + ST(r)

Lower T means a system that removes more uncertainty, i.e. a more
efficient one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidDistributionError
from .fuzzy import ProfileAnalysis

NORMALIZATION_TOL = 1e-9
TIE_TOL = 1e-9


@dataclass(frozen=True)
class OrderedPossibilityDistribution:
    values: tuple[float, ...]

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        if not values:
            raise InvalidDistributionError("empty possibility distribution")
        if not 1.0 - NORMALIZATION_TOL <= values[0] <= 1.0:
            raise InvalidDistributionError(f"largest possibility must be 1, got {values[0]!r}")
        for prev, cur in zip(values, values[1:]):
            if cur > prev:
                raise InvalidDistributionError("possibility values must be non-increasing")
        if values[-1] < 0.0:
            raise InvalidDistributionError("possibility values must be non-negative")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_values(cls, values: Iterable[float]) -> "OrderedPossibilityDistribution":
        """Sort arbitrary possibility values descending."""
        return cls(tuple(sorted((float(v) for v in values), reverse=True)))

    @classmethod
    def from_analyses(cls, analyses: Iterable[ProfileAnalysis]) -> "OrderedPossibilityDistribution":
        return cls.from_values(a.possibility for a in analyses)

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class UncertaintyResult:
    nonspecificity: float
    strife: float
    total: float


def _coerce(r) -> tuple[float, ...]:
    if isinstance(r, OrderedPossibilityDistribution):
        return r.values
    return OrderedPossibilityDistribution(tuple(r)).values


def nonspecificity(r: OrderedPossibilityDistribution | Sequence[float]) -> float:
    values = _coerce(r) + (0.0,)
    total = 0.0
    for i in range(2, len(values)):
        diff = values[i - 1] - values[i]
        if diff:
            total += diff * math.log2(i)
    return total


def strife(r: OrderedPossibilityDistribution | Sequence[float]) -> float:
    values = _coerce(r) + (0.0,)
    total = 0.0
    cumulative = values[0]
    for i in range(2, len(values)):
        cumulative += values[i - 1]
        diff = values[i - 1] - values[i]
        if diff:
            total += diff * math.log2(i / cumulative)
    return total


def total_uncertainty(r: OrderedPossibilityDistribution | Sequence[float]) -> UncertaintyResult:
    values = OrderedPossibilityDistribution(_coerce(r))
    n = nonspecificity(values)
    s = strife(values)
    return UncertaintyResult(nonspecificity=n, strife=s, total=n + s)


@dataclass(frozen=True)
class RankedSystem:
    rank: int
    name: str
    total: float


def rank_by_uncertainty(systems: Iterable[tuple[str, UncertaintyResult | float]]) -> list[RankedSystem]:
    """Ascending by total uncertainty; totals within TIE_TOL share a rank (1, 1, 3, ...)."""
    entries = []
    for name, result in systems:
        total = result.total if isinstance(result, UncertaintyResult) else float(result)
        entries.append((name, total))
    if not entries:
        raise ValueError("rank_by_uncertainty needs at least one system")
    entries.sort(key=lambda e: e[1])
    ranked: list[RankedSystem] = []
    for pos, (name, total) in enumerate(entries, start=1):
        if ranked and abs(total - ranked[-1].total) <= TIE_TOL:
            rank = ranked[-1].rank
        else:
            rank = pos
        ranked.append(RankedSystem(rank, name, total))
    return ranked
