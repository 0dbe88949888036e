"""Fuzzy assessment and comparison of case-based reasoning systems."""

from .assessment import (
    AssessmentResult,
    CaseLogEntry,
    ComparisonReport,
    SystemRecord,
    assess_system,
    compare_systems,
    grades_from_case_log,
)
from .centroid import (
    BarDistribution,
    Centroid,
    Outcome,
    centroid_bars,
    centroid_integral_oracle,
    compare_centroid,
)
from .errors import (
    DegenerateSystemError,
    DimensionError,
    EmptyFigureError,
    FuzzyCBRError,
    IdConflictError,
    InvalidDistributionError,
    InvalidSystemError,
    NoCasesError,
    ParseError,
    RangeError,
)
from .fuzzy import (
    Grade,
    Profile,
    ProfileAnalysis,
    Step,
    StepDistribution,
    build_step_distribution,
    enumerate_profiles,
    is_well_ordered,
    possibility_distribution,
    profile_membership,
)
from .uncertainty import (
    OrderedPossibilityDistribution,
    UncertaintyResult,
    nonspecificity,
    rank_by_uncertainty,
    strife,
    total_uncertainty,
)

__version__ = "0.1.0"
