"""Release/hold recommendations and what-if queries on top of the posterior.

The operative rule: release the group quarantine iff no positive test
was recorded and p0 strictly exceeds the policy threshold (default
0.9). Equality continues the quarantine; the health-office reading is
deliberately risk averse. A recorded positive dominates everything:
the group is held regardless of p0.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import DomainError, FitFailedError
from .posterior import PosteriorResult, TestSchedule, posterior
from .prior import FittedPrior, PriorSpec, fit_prior
from .sensitivity import SensitivityCurve


class Action(enum.Enum):
    RELEASE_QUARANTINE = "release_quarantine"
    CONTINUE_QUARANTINE = "continue_quarantine"
    HOLD_POSITIVE_CASE = "hold_positive_case"


@dataclass(frozen=True)
class DecisionPolicy:
    """Release threshold on p0; strict inequality, no hysteresis."""

    threshold: float = 0.9

    def __post_init__(self):
        if not 0.0 < self.threshold < 1.0:
            raise DomainError(f"threshold must lie in (0, 1), got {self.threshold}")


@dataclass(frozen=True)
class Recommendation:
    action: Action
    p0: float
    threshold: float
    rationale: str


def decide(result: PosteriorResult, policy: DecisionPolicy, any_positive: bool = False) -> Recommendation:
    """Map a posterior to a recommendation under the policy.

    HOLD_POSITIVE_CASE whenever a positive test exists (a quarantine
    with a known secondary case may not be canceled); otherwise release
    iff p0 > threshold, strictly.
    """
    sched = result.schedule_echo
    days = ", ".join(str(d) for d, _ in sched.groups) or "none"
    summary = (
        f"p0={result.p0:.6g} vs threshold {policy.threshold:g}; "
        f"{sched.tested_total} of {sched.group_size} contacts tested negative "
        f"(days: {days}, untested: {sched.untested})"
    )
    if any_positive:
        return Recommendation(
            action=Action.HOLD_POSITIVE_CASE,
            p0=result.p0,
            threshold=policy.threshold,
            rationale="positive test on record: release is not permitted; " + summary,
        )
    if result.p0 > policy.threshold:
        action = Action.RELEASE_QUARANTINE
        verdict = "release supported"
    else:
        action = Action.CONTINUE_QUARANTINE
        verdict = "insufficient evidence to release"
    return Recommendation(action=action, p0=result.p0, threshold=policy.threshold, rationale=f"{verdict}: {summary}")


def min_tests_for_release(
    prior: FittedPrior,
    day: int,
    curve: SensitivityCurve,
    policy: DecisionPolicy,
) -> int | None:
    """Smallest N same-day negative tests on `day` that clears the threshold.

    Linear scan from N = 0 upward: monotonicity of p0 in N is an
    observed property, not a theorem, so the scan is unconditional.
    Returns None when even testing the whole group falls short.
    """
    m = prior.group_size
    for n in range(0, m + 1):
        schedule = TestSchedule(m, ((day, n),) if n else ())
        if posterior(prior, schedule, curve).p0 > policy.threshold:
            return n
    return None


@dataclass(frozen=True)
class SurfaceRow:
    """One (M, N) cell of a posterior sweep."""

    group_size: int
    tested: int
    p0: float | None
    release: bool | None
    status: str = "ok"
    note: str = ""


def posterior_surface(
    specs: list[PriorSpec],
    day: int,
    curve: SensitivityCurve,
    policy: DecisionPolicy,
    include_failed: bool = False,
) -> list[SurfaceRow]:
    """p0 over the full (M, N) grid for same-day testing on `day`.

    One row per group size and per N in 0..M, ascending in (M, N). A
    group size whose prior fit fails is annotated rather than aborting
    the sweep; its p0 cells stay empty unless include_failed
    explicitly opts in to the best-effort parameters.
    """
    rows: list[SurfaceRow] = []
    for spec in sorted(specs, key=lambda s: s.group_size):
        m = spec.group_size
        status, note = "ok", ""
        try:
            prior = fit_prior(spec)
        except FitFailedError as err:
            status = "fit_failed"
            note = f"best residual {err.best.fit_residual:.3e}" if err.best else str(err)
            if not include_failed:
                rows.extend(
                    SurfaceRow(m, n, None, None, status=status, note=note) for n in range(m + 1)
                )
                continue
            prior = err.best
        for n in range(m + 1):
            schedule = TestSchedule(m, ((day, n),) if n else ())
            p0 = posterior(prior, schedule, curve).p0
            rows.append(
                SurfaceRow(m, n, p0, p0 > policy.threshold, status=status, note=note)
            )
    return rows
