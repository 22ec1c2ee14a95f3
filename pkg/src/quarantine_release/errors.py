"""Semantic exception hierarchy shared across the package.

Public functions never raise bare ValueError/KeyError for contract
violations; they raise one of the types below so callers (CLI, HTTP
service) can map failures to exit codes and machine-readable error
codes without string matching.
"""

from __future__ import annotations


class QuarantineModelError(Exception):
    """Base class for every error raised by this package."""

    #: short machine-readable identifier, stable across releases
    code: str = "model_error"


class DomainError(QuarantineModelError, ValueError):
    """An argument violates a mathematical precondition (e.g. k > n)."""

    code = "domain_error"


class SizeGuardError(DomainError):
    """Group size exceeds the supported range (M <= 1000)."""

    code = "size_guard"


class CurveFormatError(QuarantineModelError, ValueError):
    """A sensitivity-curve file is malformed.

    Carries the 1-based line number of the offending row when known.
    """

    code = "curve_format"

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class FitFailedError(QuarantineModelError):
    """No Beta-binomial parameters reproduce the scenario targets.

    A reportable model outcome, not a crash: ``best`` carries the
    best-effort fit so callers that explicitly opt in can proceed with
    degraded parameters.
    """

    code = "fit_failed"

    def __init__(self, message: str, best=None):
        self.best = best
        super().__init__(message)


class UnsupportedModelError(QuarantineModelError):
    """The request needs model features outside this release's scope.

    Currently: any test curve with specificity != 1.
    """

    code = "unsupported_model"


class ConfigurationError(QuarantineModelError, ValueError):
    """Mutually inconsistent inputs (e.g. prior and schedule group sizes)."""

    code = "configuration_error"


class CohortValidationError(QuarantineModelError, ValueError):
    """A cohort line list violates the single-event, single-test model.

    ``case_id`` names the offending record when the failure is per-record.
    """

    code = "cohort_invalid"

    def __init__(self, message: str, case_id: str | None = None):
        self.case_id = case_id
        if case_id is not None:
            message = f"case {case_id}: {message}"
        super().__init__(message)


class NotAchievableError(QuarantineModelError):
    """Even testing the whole group cannot clear the decision threshold."""

    code = "not_achievable"
