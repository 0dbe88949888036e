"""System records, case-log ingestion, assessment and cross-model comparison."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .centroid import Centroid, Outcome, centroid_bars, compare_centroid
from .errors import DegenerateSystemError, InvalidSystemError, ParseError
from .fuzzy import (
    GRADES,
    MIN_CASES,
    STEPS,
    Grade,
    ProfileAnalysis,
    Step,
    StepDistribution,
    enumerate_profiles,
    possibility_distribution,
)
from .uncertainty import (
    OrderedPossibilityDistribution,
    RankedSystem,
    UncertaintyResult,
    rank_by_uncertainty,
    total_uncertainty,
)

CASE_LOG_HEADER = ("case_id", "retrieve_grade", "reuse_grade", "revise_grade")
RETAIN_NOTE = "retain: crisp step (every case is kept in the library), no fuzzy distribution"


@dataclass(frozen=True)
class SystemRecord:
    name: str
    n: int
    steps: tuple[StepDistribution, StepDistribution, StepDistribution]

    def __post_init__(self):
        steps = tuple(self.steps)
        if tuple(s.step for s in steps) != STEPS:
            raise InvalidSystemError(f"{self.name}: steps must be retrieve, reuse, revise")
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < MIN_CASES:
            raise InvalidSystemError(f"{self.name}: cases must be an integer >= {MIN_CASES}, got {self.n!r}")
        for s in steps:
            if s.n != self.n:
                raise InvalidSystemError(
                    f"{self.name}: {s.step.value} counts sum to {s.n}, expected {self.n}"
                )
        object.__setattr__(self, "steps", steps)

    @classmethod
    def from_counts(cls, name: str, retrieve: Sequence[int], reuse: Sequence[int],
                    revise: Sequence[int]) -> "SystemRecord":
        steps = tuple(StepDistribution(step, tuple(c)) for step, c in zip(STEPS, (retrieve, reuse, revise)))
        return cls(name, steps[0].n, steps)

    def step(self, step: Step | str) -> StepDistribution:
        return self.steps[STEPS.index(Step(step))]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "cases": self.n,
            "steps": {
                s.step.value: {g.token: s.count(g) for g in GRADES} for s in self.steps
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, data) -> "SystemRecord":
        if not isinstance(data, dict):
            raise InvalidSystemError("system record must be a JSON object")
        if set(data) != {"name", "cases", "steps"}:
            raise InvalidSystemError(
                f"system record needs exactly the keys name, cases, steps; got {sorted(data)}"
            )
        name, cases, steps = data["name"], data["cases"], data["steps"]
        if not isinstance(name, str) or not name:
            raise InvalidSystemError("'name' must be a non-empty string")
        if not isinstance(steps, dict) or set(steps) != {s.value for s in STEPS}:
            raise InvalidSystemError("'steps' must have exactly retrieve, reuse, revise")
        dists = []
        for step in STEPS:
            grades = steps[step.value]
            if not isinstance(grades, dict) or set(grades) != {g.token for g in GRADES}:
                raise InvalidSystemError(f"step {step.value!r} must map exactly the grades a..e to counts")
            dists.append(StepDistribution(step, tuple(grades[g.token] for g in GRADES)))
        return cls(name, cases, tuple(dists))

    @classmethod
    def load(cls, path: str | Path) -> "SystemRecord":
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: malformed JSON: {exc}") from exc
        return cls.from_dict(data)


@dataclass(frozen=True)
class CaseLogEntry:
    case_id: str
    retrieve_grade: Grade
    reuse_grade: Grade
    revise_grade: Grade

    @property
    def grades(self) -> tuple[Grade, Grade, Grade]:
        return (self.retrieve_grade, self.reuse_grade, self.revise_grade)


def grades_from_case_log(entries: Iterable[CaseLogEntry], name: str = "system") -> SystemRecord:
    entries = list(entries)
    if len(entries) < MIN_CASES:
        raise InvalidSystemError(f"case log needs at least {MIN_CASES} entries, got {len(entries)}")
    tallies = [[0] * len(GRADES) for _ in STEPS]
    for entry in entries:
        for k, grade in enumerate(entry.grades):
            tallies[k][grade - 1] += 1
    return SystemRecord.from_counts(name, *tallies)


def parse_case_log(text: str) -> list[CaseLogEntry]:
    """Parse the CSV case log; data rows are numbered from 1 in error messages."""
    reader = csv.reader(io.StringIO(text, newline=""))
    header = next(reader, None)
    if header is None:
        raise ParseError("case log is empty (header required)")
    header = [h.strip().lstrip("﻿") for h in header]
    if tuple(header) != CASE_LOG_HEADER:
        raise ParseError(f"case log header must be {','.join(CASE_LOG_HEADER)}, got {','.join(header)}")
    entries = []
    for row_no, row in enumerate(reader, start=1):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(CASE_LOG_HEADER):
            raise ParseError(f"row {row_no}: expected {len(CASE_LOG_HEADER)} fields, got {len(row)}")
        case_id = row[0].strip()
        if not case_id:
            raise ParseError(f"row {row_no}: empty case_id")
        grades = []
        for column, token in zip(CASE_LOG_HEADER[1:], row[1:]):
            try:
                grades.append(Grade.parse(token))
            except ValueError:
                raise ParseError(f"row {row_no}: bad grade token {token.strip()!r} in column {column}") from None
        entries.append(CaseLogEntry(case_id, *grades))
    return entries


def load_case_log(path: str | Path) -> list[CaseLogEntry]:
    return parse_case_log(Path(path).read_text(encoding="utf-8"))


def format_case_log(entries: Iterable[CaseLogEntry]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CASE_LOG_HEADER)
    for e in entries:
        writer.writerow([e.case_id, *(g.token for g in e.grades)])
    return buf.getvalue()


@dataclass(frozen=True)
class AssessmentResult:
    name: str
    steps: tuple[StepDistribution, StepDistribution, StepDistribution]
    profiles: tuple[ProfileAnalysis, ...]
    uncertainty: UncertaintyResult
    centroids: tuple[Centroid, Centroid, Centroid]

    @property
    def n(self) -> int:
        return self.steps[0].n

    @property
    def max_membership(self) -> float:
        return max(a.membership for a in self.profiles)

    @property
    def max_profiles(self) -> list[ProfileAnalysis]:
        return [a for a in self.profiles if a.possibility == 1.0]

    def profiles_by_possibility(self) -> list[ProfileAnalysis]:
        # sort is stable, so enumeration order breaks ties
        return sorted(self.profiles, key=lambda a: -a.possibility)

    def to_dict(self, include_profiles: bool = False) -> dict:
        out = {
            "name": self.name,
            "cases": self.n,
            "steps": {s.step.value: _step_dict(s) for s in self.steps},
            "retain": RETAIN_NOTE,
            "max_membership": self.max_membership,
            "max_profiles": [a.profile.label() for a in self.max_profiles],
            "uncertainty": _uncertainty_dict(self.uncertainty),
            "centroids": _centroids_dict(self.steps, self.centroids),
        }
        if include_profiles:
            out["profiles"] = [_profile_dict(a) for a in self.profiles_by_possibility()]
        return out

    def render_text(self, include_profiles: bool = False) -> str:
        lines = [f"System: {self.name} (n = {self.n})", "", "Step memberships (a b c d e):"]
        for s in self.steps:
            lines.append(f"  {s.step.value:<9}" + " ".join(f"{m:.3f}" for m in s.memberships))
        lines.append(f"  {RETAIN_NOTE}")
        lines.append("")
        labels = ", ".join(a.profile.label() for a in self.max_profiles)
        lines.append(f"Max membership: {self.max_membership:.3f} at {labels}")
        lines.append(f"Nonspecificity N(r) = {self.uncertainty.nonspecificity:.3f}")
        lines.append(f"Strife ST(r) = {self.uncertainty.strife:.3f}")
        lines.append(f"T(r) = {self.uncertainty.total:.3f}")
        lines.append("")
        lines.append("Centroids (x_c, y_c):")
        for s, c in zip(self.steps, self.centroids):
            lines.append(f"  {s.step.value:<9}({c.x_c:.3f}, {c.y_c:.3f})")
        if include_profiles:
            lines.append("")
            lines.append("Profiles by possibility:")
            lines.append(f"  {'profile':<9}{'m_s':>8}{'r_s':>8}")
            for a in self.profiles_by_possibility():
                lines.append(f"  {a.profile.label():<9}{a.membership:>8.3f}{a.possibility:>8.3f}")
        return "\n".join(lines) + "\n"


def _step_dict(s: StepDistribution) -> dict:
    return {
        "counts": {g.token: s.count(g) for g in GRADES},
        "membership": {g.token: s.membership(g) for g in GRADES},
    }


def _uncertainty_dict(u: UncertaintyResult | None) -> dict | None:
    if u is None:
        return None
    return {"nonspecificity": u.nonspecificity, "strife": u.strife, "total": u.total}


def _centroids_dict(steps, centroids) -> dict:
    return {s.step.value: {"x_c": c.x_c, "y_c": c.y_c} for s, c in zip(steps, centroids)}


def _profile_dict(a: ProfileAnalysis) -> dict:
    return {"profile": a.profile.label(), "membership": a.membership, "possibility": a.possibility}


def step_centroids(record: SystemRecord) -> tuple[Centroid, Centroid, Centroid]:
    """Centroids of the same membership vectors the profile model uses."""
    return tuple(centroid_bars(s.memberships) for s in record.steps)


def assess_system(record: SystemRecord) -> AssessmentResult:
    profiles = tuple(possibility_distribution(enumerate_profiles(record.steps)))
    uncertainty = total_uncertainty(OrderedPossibilityDistribution.from_analyses(profiles))
    return AssessmentResult(
        name=record.name,
        steps=record.steps,
        profiles=profiles,
        uncertainty=uncertainty,
        centroids=step_centroids(record),
    )


@dataclass(frozen=True)
class SystemSummary:
    """One system inside a comparison; ``assessment`` is None when degenerate."""

    name: str
    steps: tuple[StepDistribution, StepDistribution, StepDistribution]
    centroids: tuple[Centroid, Centroid, Centroid]
    assessment: AssessmentResult | None

    @property
    def assessable(self) -> bool:
        return self.assessment is not None


@dataclass(frozen=True)
class PairOutcome:
    step: Step
    first: str
    second: str
    outcome: Outcome


@dataclass
class ComparisonReport:
    systems: list[SystemSummary]
    ranking: list[RankedSystem]
    pairwise: list[PairOutcome]
    step_winners: dict[Step, str | None]
    uncertainty_winner: str | None
    centroid_winner: str | None
    models_agree: bool
    notes: list[str] = field(default_factory=list)

    def summary_lines(self) -> list[str]:
        lines = []
        if self.uncertainty_winner:
            lines.append(f"Uncertainty model prefers {self.uncertainty_winner} (lowest T(r)).")
        else:
            lines.append("Uncertainty model: no single best system.")
        if self.centroid_winner:
            won = [s.value for s, w in self.step_winners.items() if w == self.centroid_winner]
            lines.append(f"Centroid model prefers {self.centroid_winner} (wins {', '.join(won)}).")
        else:
            lines.append("Centroid model: no majority winner across steps.")
        lines.append("Models agree." if self.models_agree else "Models disagree.")
        return lines + list(self.notes)

    def to_dict(self) -> dict:
        return {
            "systems": [
                {
                    "name": s.name,
                    "cases": s.steps[0].n,
                    "assessable": s.assessable,
                    "max_membership": s.assessment.max_membership if s.assessment else None,
                    "uncertainty": _uncertainty_dict(s.assessment.uncertainty if s.assessment else None),
                    "centroids": _centroids_dict(s.steps, s.centroids),
                }
                for s in self.systems
            ],
            "uncertainty_ranking": [{"rank": r.rank, "name": r.name, "total": r.total} for r in self.ranking],
            "centroid_comparisons": [
                {"step": p.step.value, "first": p.first, "second": p.second, "outcome": p.outcome.value}
                for p in self.pairwise
            ],
            "step_winners": {s.value: w for s, w in self.step_winners.items()},
            "uncertainty_winner": self.uncertainty_winner,
            "centroid_winner": self.centroid_winner,
            "models_agree": self.models_agree,
            "retain": RETAIN_NOTE,
            "summary": self.summary_lines(),
        }

    def render_text(self) -> str:
        lines = ["Possibilistic model (lower T(r) is better):"]
        for s in self.systems:
            if s.assessment is None:
                lines.append(f"  {s.name}: unassessable (degenerate system)")
        for r in self.ranking:
            lines.append(f"  #{r.rank} {r.name}: T(r) = {r.total:.3f}")
        lines.append("")
        lines.append("Centroid model (x_c, y_c):")
        for s in self.systems:
            cells = "  ".join(f"{st.value} ({c.x_c:.3f}, {c.y_c:.3f})" for st, c in zip(STEPS, s.centroids))
            lines.append(f"  {s.name}: {cells}")
        for p in self.pairwise:
            lines.append(f"  {p.step.value}: {p.first} vs {p.second} -> {p.outcome.value}")
        lines.append(f"  {RETAIN_NOTE}")
        lines.append("")
        lines.append(f"models_agree = {str(self.models_agree).lower()}")
        lines.extend(self.summary_lines())
        return "\n".join(lines) + "\n"


def _step_winner(systems: Sequence[SystemSummary], k: int) -> str | None:
    """The system beating every other at step k, or None if the top is shared."""
    for cand in systems:
        if all(
            compare_centroid(cand.centroids[k], other.centroids[k]) is Outcome.FIRST_BETTER
            for other in systems if other is not cand
        ):
            return cand.name
    return None


def compare_systems(records: Sequence[SystemRecord]) -> ComparisonReport:
    records = list(records)
    if len(records) < 2:
        raise ValueError("compare_systems needs at least two systems")
    notes: list[str] = []
    names = [r.name for r in records]
    if len(set(names)) != len(names):
        # keep labels unambiguous when the same record is compared with itself
        names = [f"{r.name}#{i}" for i, r in enumerate(records, start=1)]

    systems = []
    for name, record in zip(names, records):
        try:
            assessment = assess_system(record)
        except DegenerateSystemError:
            assessment = None
            notes.append(f"{name} is degenerate: no well-ordered profile has positive membership.")
        systems.append(SystemSummary(name, record.steps, step_centroids(record), assessment))

    assessable = [s for s in systems if s.assessment is not None]
    ranking = rank_by_uncertainty((s.name, s.assessment.uncertainty) for s in assessable) if assessable else []
    top = [r for r in ranking if r.rank == 1]
    uncertainty_winner = top[0].name if len(top) == 1 else None
    if len(top) > 1:
        notes.append("tie: uncertainty model ranks " + ", ".join(r.name for r in top) + " equally.")

    pairwise = []
    for k, step in enumerate(STEPS):
        for i in range(len(systems)):
            for j in range(i + 1, len(systems)):
                a, b = systems[i], systems[j]
                pairwise.append(PairOutcome(step, a.name, b.name, compare_centroid(a.centroids[k], b.centroids[k])))

    step_winners = {step: _step_winner(systems, k) for k, step in enumerate(STEPS)}
    wins: dict[str, int] = {}
    for w in step_winners.values():
        if w is not None:
            wins[w] = wins.get(w, 0) + 1
    majority = [name for name, count in wins.items() if count * 2 > len(STEPS)]
    centroid_winner = majority[0] if majority else None
    tied_steps = [s.value for s, w in step_winners.items() if w is None]
    if tied_steps:
        notes.append("tie: centroid model has no winner at " + ", ".join(tied_steps) + ".")
    if centroid_winner is None:
        notes.append("tie: centroid model has no majority winner.")

    models_agree = (
        uncertainty_winner is not None
        and centroid_winner is not None
        and uncertainty_winner == centroid_winner
    )
    return ComparisonReport(
        systems=systems,
        ranking=ranking,
        pairwise=pairwise,
        step_winners=step_winners,
        uncertainty_winner=uncertainty_winner,
        centroid_winner=centroid_winner,
        models_agree=models_agree,
        notes=notes,
    )
