"""Grades, step distributions and the profile possibility model.

A CBR system is described by three fuzzy sets over the grade universe
``U = {a, b, c, d, e}`` (one per fuzzy step: retrieve, reuse, revise).
A *profile* is a triple of grades; its membership is the product of the
per-step memberships when the triple is well ordered, and 0 otherwise.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import DegenerateSystemError, InvalidSystemError

MIN_CASES = 2


class Grade(enum.IntEnum):
    """Success label; the integer value is the 1-based bar index."""

    a = 1  # negligible
    b = 2  # low
    c = 3  # intermediate
    d = 4  # high
    e = 5  # complete

    @property
    def token(self) -> str:
        return self.name

    @property
    def midpoint(self) -> float:
        return (2 * self.value - 1) / 2

    @classmethod
    def parse(cls, token: str) -> "Grade":
        try:
            return cls[token.strip()]
        except KeyError:
            raise ValueError(f"invalid grade token {token!r} (expected one of a|b|c|d|e)") from None


GRADES: tuple[Grade, ...] = tuple(Grade)


class Step(str, enum.Enum):
    retrieve = "retrieve"
    reuse = "reuse"
    revise = "revise"


STEPS: tuple[Step, ...] = tuple(Step)


@dataclass(frozen=True)
class StepDistribution:
    """Fuzzy set over the five grades for one step, backed by integer counts."""

    step: Step
    counts: tuple[int, int, int, int, int]

    def __post_init__(self):
        object.__setattr__(self, "step", Step(self.step))
        counts = tuple(self.counts)
        if len(counts) != len(GRADES):
            raise InvalidSystemError(f"{self.step.value}: expected 5 counts, got {len(counts)}")
        for c in counts:
            if isinstance(c, bool) or not isinstance(c, int) or c < 0:
                raise InvalidSystemError(f"{self.step.value}: counts must be non-negative integers, got {c!r}")
        if sum(counts) < MIN_CASES:
            raise InvalidSystemError(
                f"{self.step.value}: a system needs at least {MIN_CASES} cases, got {sum(counts)}"
            )
        object.__setattr__(self, "counts", counts)

    @property
    def n(self) -> int:
        return sum(self.counts)

    def count(self, grade: Grade) -> int:
        return self.counts[grade - 1]

    def membership(self, grade: Grade) -> float:
        return self.counts[grade - 1] / self.n

    @property
    def memberships(self) -> tuple[float, ...]:
        n = self.n
        return tuple(c / n for c in self.counts)


def build_step_distribution(step: Step | str, counts: Sequence[int]) -> StepDistribution:
    return StepDistribution(Step(step), tuple(counts))


class Profile(NamedTuple):
    """Grades reached at retrieve, reuse and revise."""

    retrieve: Grade
    reuse: Grade
    revise: Grade

    @classmethod
    def parse(cls, text: str) -> "Profile":
        tokens = text.replace("(", "").replace(")", "").replace(" ", "").split(",")
        if len(tokens) != 3:
            raise ValueError(f"profile needs three grades, got {text!r}")
        return cls(*(Grade.parse(t) for t in tokens))

    def label(self) -> str:
        return "(" + ",".join(g.token for g in self) + ")"


ALL_PROFILES: tuple[Profile, ...] = tuple(Profile(*p) for p in itertools.product(GRADES, repeat=3))


@dataclass(frozen=True)
class ProfileAnalysis:
    profile: Profile
    membership: float
    possibility: float


def is_well_ordered(p: Sequence[Grade]) -> bool:
    """True iff the grades never increase along the step sequence."""
    return all(x >= y for x, y in zip(p, p[1:]))


def _check_dists(dists: Sequence[StepDistribution]) -> None:
    if len(dists) != 3 or tuple(d.step for d in dists) != STEPS:
        raise InvalidSystemError("expected distributions for retrieve, reuse, revise in that order")


def profile_membership(dists: Sequence[StepDistribution], p: Profile) -> float:
    _check_dists(dists)
    if not is_well_ordered(p):
        return 0.0
    m = 1.0
    for dist, grade in zip(dists, p):
        m *= dist.membership(grade)
    return m


def enumerate_profiles(dists: Sequence[StepDistribution]) -> list[tuple[Profile, float]]:
    """All 125 profiles, retrieve-major and a to e, with their memberships."""
    _check_dists(dists)
    return [(p, profile_membership(dists, p)) for p in ALL_PROFILES]


def possibility_distribution(analyses: Iterable[tuple[Profile, float]]) -> list[ProfileAnalysis]:
    analyses = list(analyses)
    top = max((m for _, m in analyses), default=0.0)
    if top <= 0.0:
        raise DegenerateSystemError("no well-ordered profile has positive membership")
    return [ProfileAnalysis(p, m, m / top) for p, m in analyses]
