"""Deterministic four-step CBR engine (retrieve, reuse, revise, retain).

Used to produce graded case logs for the assessment pipeline.  There is no
randomness anywhere: a batch run is a pure function of its inputs.
"""

from __future__ import annotations

import bisect
import copy
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .assessment import CaseLogEntry
from .errors import DimensionError, IdConflictError, NoCasesError, ParseError, RangeError
from .fuzzy import Grade


@dataclass(frozen=True)
class Case:
    id: str
    features: tuple[float, ...]
    solution: float
    outcome: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "features", tuple(float(f) for f in self.features))
        for f in self.features:
            if not 0.0 <= f <= 1.0:
                raise RangeError(f"case {self.id}: features must lie in [0, 1], got {f!r}")


class CaseLibrary:
    """Ordered cases with unique ids sharing one feature length."""

    def __init__(self, dim: int, cases: Iterable[Case] = ()):
        if dim < 1:
            raise DimensionError(f"feature length must be positive, got {dim}")
        self.dim = dim
        self._cases: list[Case] = []
        self._ids: set[str] = set()
        for case in cases:
            self.retain(case)

    def __len__(self):
        return len(self._cases)

    def __iter__(self):
        return iter(self._cases)

    @property
    def cases(self) -> tuple[Case, ...]:
        return tuple(self._cases)

    def retain(self, case: Case) -> "CaseLibrary":
        if case.id in self._ids:
            raise IdConflictError(f"case id {case.id!r} already in library")
        if len(case.features) != self.dim:
            raise DimensionError(f"case {case.id}: expected {self.dim} features, got {len(case.features)}")
        self._cases.append(case)
        self._ids.add(case.id)
        return self

    def copy(self) -> "CaseLibrary":
        return copy.deepcopy(self)

    def to_dict(self) -> dict:
        cases = []
        for c in self._cases:
            item = {"id": c.id, "features": list(c.features), "solution": c.solution}
            if c.outcome is not None:
                item["outcome"] = c.outcome
            cases.append(item)
        return {"dim": self.dim, "cases": cases}

    @classmethod
    def from_dict(cls, data) -> "CaseLibrary":
        try:
            dim = data["dim"]
            cases = [
                Case(str(c["id"]), tuple(c["features"]), float(c["solution"]),
                     None if c.get("outcome") is None else float(c["outcome"]))
                for c in data["cases"]
            ]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"library file: missing or malformed field ({exc})") from exc
        if isinstance(dim, bool) or not isinstance(dim, int):
            raise ParseError("library file: 'dim' must be an integer")
        return cls(dim, cases)

    @classmethod
    def load(cls, path: str | Path) -> "CaseLibrary":
        return cls.from_dict(_read_json(path))

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2) + "\n", encoding="utf-8")


@dataclass(frozen=True)
class Problem:
    features: tuple[float, ...]
    truth: float


def load_problems(path: str | Path) -> list[Problem]:
    data = _read_json(path)
    try:
        return [Problem(tuple(float(f) for f in p["features"]), float(p["truth"])) for p in data["problems"]]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"problems file: missing or malformed field ({exc})") from exc


def _read_json(path):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: malformed JSON: {exc}") from exc


@dataclass(frozen=True)
class GradeThresholds:
    """Cut points t1 < t2 < t3 < t4 in (0, 1); intervals are left-closed, e's is [t4, 1]."""

    cuts: tuple[float, float, float, float] = (0.2, 0.4, 0.6, 0.8)

    def __post_init__(self):
        cuts = tuple(float(c) for c in self.cuts)
        if len(cuts) != 4:
            raise ValueError(f"need exactly four thresholds, got {len(cuts)}")
        if not all(0.0 < c < 1.0 for c in cuts) or any(a >= b for a, b in zip(cuts, cuts[1:])):
            raise ValueError(f"thresholds must be strictly increasing inside (0, 1), got {cuts}")
        object.__setattr__(self, "cuts", cuts)

    @classmethod
    def parse(cls, text: str) -> "GradeThresholds":
        try:
            return cls(tuple(float(t) for t in text.split(",")))
        except (TypeError, ValueError) as exc:
            raise ValueError(f"bad thresholds {text!r}: {exc}") from None


DEFAULT_THRESHOLDS = GradeThresholds()
# scores within this distance below a cut point count as reaching it,
# so e.g. 1 - 0.8 = 0.19999999999999996 still grades b at t1 = 0.2
BOUNDARY_TOL = 1e-12


def similarity(a: Sequence[float], b: Sequence[float]) -> float:
    sim = 1.0 - math.dist(a, b) / math.sqrt(len(a))
    return min(1.0, max(0.0, sim))


def retrieve(library: CaseLibrary, query: Sequence[float]) -> tuple[Case, float]:
    """Most similar case; equal similarities go to the smallest id."""
    if len(library) == 0:
        raise NoCasesError("cannot retrieve from an empty library")
    if len(query) != library.dim:
        raise DimensionError(f"query has {len(query)} features, library expects {library.dim}")
    best, best_sim = None, -math.inf
    for case in library:
        sim = similarity(case.features, query)
        if sim > best_sim or (sim == best_sim and case.id < best.id):
            best, best_sim = case, sim
    return best, best_sim


def reuse(case: Case, query: Sequence[float] | None = None) -> float:
    # null adaptation: the retrieved solution is proposed unchanged
    return case.solution


def revise(proposed: float, truth: float) -> float:
    return 1.0 - min(1.0, abs(proposed - truth))


def retain(library: CaseLibrary, case: Case) -> CaseLibrary:
    return library.retain(case)


def grade_step(score: float, thresholds: GradeThresholds = DEFAULT_THRESHOLDS) -> Grade:
    if not 0.0 <= score <= 1.0:
        raise RangeError(f"score must lie in [0, 1], got {score!r}")
    return Grade(bisect.bisect_right(thresholds.cuts, score + BOUNDARY_TOL) + 1)


@dataclass(frozen=True)
class StepTrace:
    """Scores behind one log entry; handy for debugging threshold choices."""

    case_id: str
    retrieved_id: str
    similarity: float
    proposed: float
    quality: float


@dataclass
class BatchResult:
    log: list[CaseLogEntry]
    library: CaseLibrary
    traces: list[StepTrace] = field(default_factory=list)

    def __iter__(self):
        # unpacks as (log, library)
        return iter((self.log, self.library))


def run_batch(library: CaseLibrary, problems: Iterable[Problem | tuple],
              thresholds: GradeThresholds = DEFAULT_THRESHOLDS, id_prefix: str = "q") -> BatchResult:
    """Solve problems in order, grading every step and retaining each solved case.

    The input library is left untouched; the grown copy is returned.
    """
    lib = library.copy()
    log, traces = [], []
    for k, problem in enumerate(problems, start=1):
        if not isinstance(problem, Problem):
            problem = Problem(tuple(problem[0]), float(problem[1]))
        case, sim = retrieve(lib, problem.features)
        proposed = reuse(case, problem.features)
        quality = revise(proposed, problem.truth)
        case_id = f"{id_prefix}{k:04d}"
        retain(lib, Case(case_id, problem.features, problem.truth, outcome=quality))
        # copy strategy: the reuse score is the retrieval similarity
        log.append(CaseLogEntry(
            case_id,
            grade_step(sim, thresholds),
            grade_step(sim, thresholds),
            grade_step(quality, thresholds),
        ))
        traces.append(StepTrace(case_id, case.id, sim, proposed, quality))
    return BatchResult(log, lib, traces)
