"""One evaluation pipeline behind both the CLI and the HTTP service.

Fit the scenario prior for the cohort's group size, score the schedule,
decide, and assemble the response payload. Keeping this in one place is
what makes the CLI/service parity guarantee (identical numbers for
identical inputs) hold by construction.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass

from .cohort import CohortRecord, CohortReport, ingest
from .decision import DecisionPolicy, Recommendation, decide
from .errors import FitFailedError
from .posterior import PosteriorResult, TestSchedule, posterior
from .prior import FittedPrior, PriorSpec, fit_prior
from .sensitivity import SensitivityCurve

DEFAULT_THRESHOLD = 0.9


@dataclass(frozen=True)
class Evaluation:
    """Everything a caller needs to report one cohort evaluation."""

    prior: FittedPrior
    fit_status: str
    result: PosteriorResult
    recommendation: Recommendation
    report: CohortReport | None

    def payload(self) -> dict:
        """Response document with a fixed field order (see serialize)."""
        sched = self.result.schedule_echo
        report = self.report
        return {
            "p0": self.result.p0,
            "decision": {
                "action": self.recommendation.action.value,
                "threshold": self.recommendation.threshold,
                "rationale": self.recommendation.rationale,
            },
            "posterior": [float(x) for x in self.result.posterior],
            "prior": {
                "group_size": self.prior.group_size,
                "alpha": self.prior.alpha,
                "beta": self.prior.beta,
                "fit_residual": self.prior.fit_residual,
                "fit_status": self.fit_status,
                "p_no_transmission": self.prior.p_no_transmission,
            },
            "schedule": {
                "group_size": sched.group_size,
                "tested": sched.tested_total,
                "untested": sched.untested,
                "groups": [{"day": d, "count": c} for d, c in sched.groups],
            },
            "diagnostics": {
                "log_evidence": self.result.log_evidence,
                "prior_p0": self.result.prior_p0,
                "any_positive": report.any_positive if report else False,
                "event_date": report.event_date.isoformat() if report else None,
                "exclusions": [
                    {"case_id": cid, "reason": reason} for cid, reason in report.excluded
                ]
                if report
                else [],
            },
        }


def fit_scenario_prior(
    group_size: int,
    p_any_transmission: float,
    mean_given_transmission: float,
    allow_fit_failure: bool = False,
) -> tuple[FittedPrior, str]:
    """Fit the prior, optionally accepting a best-effort failed fit."""
    spec = PriorSpec(
        group_size=group_size,
        p_any_transmission=p_any_transmission,
        mean_given_transmission=mean_given_transmission,
    )
    try:
        return fit_prior(spec), "ok"
    except FitFailedError as err:
        if allow_fit_failure and err.best is not None:
            return err.best, "fit_failed"
        raise


def evaluate_schedule(
    schedule: TestSchedule,
    p_any_transmission: float,
    mean_given_transmission: float,
    curve: SensitivityCurve,
    policy: DecisionPolicy | None = None,
    any_positive: bool = False,
    report: CohortReport | None = None,
    allow_fit_failure: bool = False,
) -> Evaluation:
    policy = policy or DecisionPolicy(DEFAULT_THRESHOLD)
    prior, fit_status = fit_scenario_prior(
        schedule.group_size,
        p_any_transmission,
        mean_given_transmission,
        allow_fit_failure=allow_fit_failure,
    )
    result = posterior(prior, schedule, curve)
    recommendation = decide(result, policy, any_positive=any_positive)
    return Evaluation(
        prior=prior,
        fit_status=fit_status,
        result=result,
        recommendation=recommendation,
        report=report,
    )


def evaluate_records(
    records: list[CohortRecord],
    p_any_transmission: float,
    mean_given_transmission: float,
    curve: SensitivityCurve,
    policy: DecisionPolicy | None = None,
    event_date: dt.date | None = None,
    allow_fit_failure: bool = False,
) -> Evaluation:
    """Ingest a line list, then evaluate its schedule."""
    report = ingest(records, event_date=event_date)
    return evaluate_schedule(
        report.schedule,
        p_any_transmission,
        mean_given_transmission,
        curve,
        policy=policy,
        any_positive=report.any_positive,
        report=report,
        allow_fit_failure=allow_fit_failure,
    )
