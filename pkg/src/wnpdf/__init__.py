"""Wrapped normal density evaluation with certified series truncation."""

from .angles import TWO_PI, Angle, WrappedNormal, make_wn, wrap
from .bounds import (
    AccuracyTarget,
    TruncationRequirement,
    bound_f,
    bound_g,
    check_bound_dominates,
    plan_theoretical,
    required_n,
)
from .errors import (
    BoundNotApplicableError,
    ConsistencyError,
    InvalidArgumentError,
    InvalidParameterError,
    NonConvergenceError,
    NoTableError,
    OutOfDomainError,
    TableConstructionError,
    WNError,
)
from .series import (
    ErrorSample,
    EvalPlan,
    ReferenceValue,
    SeriesKind,
    evaluate,
    pdf_f,
    pdf_g,
    pdf_reference,
    pdf_uniform,
    worst_case_error,
)
from .special import erfc_cf, lemma1_gap
from .tables import ThresholdTable, builtin_table, crossover_search, plan_empirical

__version__ = "0.1.0"

__all__ = [
    "TWO_PI", "Angle", "WrappedNormal", "make_wn", "wrap",
    "AccuracyTarget", "TruncationRequirement", "bound_f", "bound_g", "check_bound_dominates",
    "plan_theoretical", "required_n",
    "BoundNotApplicableError", "ConsistencyError", "InvalidArgumentError", "InvalidParameterError",
    "NonConvergenceError", "NoTableError", "OutOfDomainError", "TableConstructionError", "WNError",
    "ErrorSample", "EvalPlan", "ReferenceValue", "SeriesKind", "evaluate", "pdf_f", "pdf_g",
    "pdf_reference", "pdf_uniform", "worst_case_error",
    "erfc_cf", "lemma1_gap",
    "ThresholdTable", "builtin_table", "crossover_search", "plan_empirical",
]
