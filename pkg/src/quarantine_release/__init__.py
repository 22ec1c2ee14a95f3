"""Decision support for releasing group quarantines.

Given M contacts of a single known case, N of whom tested negative on
possibly different days, the package computes the posterior probability
p0 that no transmission occurred at the group event and turns it into
an auditable release/hold recommendation.
"""

from .cohort import CohortRecord, CohortReport, ingest, read_cohort_csv
from .decision import (
    Action,
    DecisionPolicy,
    Recommendation,
    SurfaceRow,
    decide,
    min_tests_for_release,
    posterior_surface,
)
from .errors import (
    CohortValidationError,
    ConfigurationError,
    CurveFormatError,
    DomainError,
    FitFailedError,
    NotAchievableError,
    QuarantineModelError,
    SizeGuardError,
    UnsupportedModelError,
)
from .posterior import (
    PosteriorResult,
    TestSchedule,
    likelihood_all_negative,
    likelihood_all_negative_dp,
    posterior,
)
from .prior import (
    FittedPrior,
    PriorSpec,
    beta_binomial_pmf,
    bundled_scenario,
    conditional_mean,
    fit_prior,
    uniform_prior,
)
from .sensitivity import SensitivityCurve, default_curve, load_curve, sensitivity_at, serialize_curve
from .simulate import SimulationEstimate, simulate_likelihood

__version__ = "0.1.0"

__all__ = [
    "Action",
    "CohortRecord",
    "CohortReport",
    "CohortValidationError",
    "ConfigurationError",
    "CurveFormatError",
    "DecisionPolicy",
    "DomainError",
    "FitFailedError",
    "FittedPrior",
    "NotAchievableError",
    "PosteriorResult",
    "PriorSpec",
    "QuarantineModelError",
    "Recommendation",
    "SensitivityCurve",
    "SimulationEstimate",
    "SizeGuardError",
    "SurfaceRow",
    "TestSchedule",
    "UnsupportedModelError",
    "beta_binomial_pmf",
    "bundled_scenario",
    "conditional_mean",
    "decide",
    "default_curve",
    "fit_prior",
    "ingest",
    "likelihood_all_negative",
    "likelihood_all_negative_dp",
    "load_curve",
    "min_tests_for_release",
    "posterior",
    "posterior_surface",
    "read_cohort_csv",
    "sensitivity_at",
    "serialize_curve",
    "simulate_likelihood",
    "uniform_prior",
]
