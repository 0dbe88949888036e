"""Center-of-mass assessment of grade bar graphs.

Bar ``i`` (1-based) spans ``[i-1, i] x [0, y_i]``.  With heights
normalized to sum 1 the centroid reduces to::

    x_c = 1/2 * sum (2i - 1) * y_i
    y_c = 1/2 * sum y_i ** 2

For five bars: ideal (all mass on e) is (4.5, 0.5), worst (all mass on a)
is (0.5, 0.5), uniform is the unique y_c minimum (2.5, 0.1).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import EmptyFigureError

EQ_TOL = 1e-9
MIDLINE = 2.5
ORACLE_CELLS_PER_AXIS = 100  # 100 x 100 = 10^4 cells per bar

IDEAL = (4.5, 0.5)
WORST = (0.5, 0.5)
UNIFORM_MINIMUM = (2.5, 0.1)


@dataclass(frozen=True)
class BarDistribution:
    heights: tuple[float, ...]
    normalized: bool = False

    def __post_init__(self):
        heights = tuple(float(h) for h in self.heights)
        if not heights:
            raise EmptyFigureError("bar figure has no bars")
        if any(h < 0 or h != h for h in heights):
            raise ValueError("bar heights must be non-negative numbers")
        if not any(h > 0 for h in heights):
            raise EmptyFigureError("bar figure has zero area (all heights are 0)")
        if self.normalized and abs(sum(heights) - 1.0) > 1e-9:
            raise ValueError(f"normalized heights must sum to 1, got {sum(heights)!r}")
        object.__setattr__(self, "heights", heights)

    def normalize(self) -> "BarDistribution":
        if self.normalized:
            return self
        total = sum(self.heights)
        return BarDistribution(tuple(h / total for h in self.heights), normalized=True)


class Centroid(NamedTuple):
    x_c: float
    y_c: float


class Outcome(str, enum.Enum):
    FIRST_BETTER = "first-better"
    SECOND_BETTER = "second-better"
    TIE = "tie"

    def swapped(self) -> "Outcome":
        if self is Outcome.FIRST_BETTER:
            return Outcome.SECOND_BETTER
        if self is Outcome.SECOND_BETTER:
            return Outcome.FIRST_BETTER
        return self


def _as_bars(bars) -> BarDistribution:
    return bars if isinstance(bars, BarDistribution) else BarDistribution(tuple(bars))


def centroid_bars(bars: BarDistribution | Sequence[float]) -> Centroid:
    """Closed-form centroid of the bar figure; heights are normalized first."""
    ys = _as_bars(bars).normalize().heights
    x_c = 0.5 * sum((2 * i - 1) * y for i, y in enumerate(ys, start=1))
    y_c = 0.5 * sum(y * y for y in ys)
    return Centroid(x_c, y_c)


def centroid_general(heights: Sequence[float]) -> Centroid:
    """Centroid of unnormalized bars, dividing by the total height."""
    ys = _as_bars(heights).heights
    total = sum(ys)
    x_c = 0.5 * sum((2 * i - 1) * y for i, y in enumerate(ys, start=1)) / total
    y_c = 0.5 * sum(y * y for y in ys) / total
    return Centroid(x_c, y_c)


def centroid_integral_oracle(bars: BarDistribution | Sequence[float]) -> Centroid:
    """Midpoint-rule quadrature of the area integrals over the normalized figure.

    Independent of the closed form: it only knows the geometry of each bar.
    """
    ys = _as_bars(bars).normalize().heights
    k = ORACLE_CELLS_PER_AXIS
    unit = (np.arange(k) + 0.5) / k
    area = mx = my = 0.0
    for i, height in enumerate(ys, start=1):
        if height == 0.0:
            continue
        xs = (i - 1) + unit
        yv = height * unit
        cell = (1.0 / k) * (height / k)
        area += cell * k * k
        mx += cell * k * xs.sum()
        my += cell * k * yv.sum()
    return Centroid(float(mx / area), float(my / area))


def compare_centroid(a: Centroid, b: Centroid) -> Outcome:
    """Larger x_c wins; on equal x_c, y_c decides (higher wins at/above 2.5, lower below)."""
    ax, ay = a
    bx, by = b
    if abs(ax - bx) > EQ_TOL:
        return Outcome.FIRST_BETTER if ax > bx else Outcome.SECOND_BETTER
    if abs(ay - by) <= EQ_TOL:
        return Outcome.TIE
    x = (ax + bx) / 2
    if x >= MIDLINE - EQ_TOL:
        return Outcome.FIRST_BETTER if ay > by else Outcome.SECOND_BETTER
    return Outcome.FIRST_BETTER if ay < by else Outcome.SECOND_BETTER
