"""Beta-binomial prior over the number of infected contacts.

The number of secondary cases K among M contacts gets a Beta-binomial
prior BB(M, alpha, beta). Scenario evidence arrives as two
interpretable targets instead of raw shape parameters:

* the probability that any transmission happened at all, P(K > 0), and
* the expected number of infected given at least one, E(K | K > 0).

``fit_prior`` recovers (alpha, beta) from those targets by minimizing
the sum of squared relative target errors over an unconstrained
reparameterization alpha = exp(a), beta = exp(b). Relative errors keep
the two targets (a probability around 0.1 and a count around 5)
commensurate. For some group sizes no Beta-binomial reproduces both
targets; that is a reportable outcome (``FitFailedError``), not a bug,
and the error carries the best-effort parameters for callers that
explicitly opt in to degraded results.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize
from scipy.special import gammaln

from .errors import DomainError, FitFailedError, SizeGuardError
from .logmath import MAX_GROUP_SIZE, log_beta

#: fit succeeds iff the sum of squared relative target errors is below this
FIT_RESIDUAL_TOLERANCE = 1e-8

#: multi-start grid over the log-parameters (a, b), scanned lexicographically
START_GRID = tuple((a, b) for a in (-2.0, -1.0, 0.0, 1.0, 2.0) for b in (-2.0, -1.0, 0.0, 1.0, 2.0))

_NM_OPTIONS = {"maxiter": 10_000, "xatol": 1e-10, "fatol": 1e-12}


@dataclass(frozen=True)
class PriorSpec:
    """Scenario-level evidence a prior is fitted from."""

    group_size: int
    p_any_transmission: float
    mean_given_transmission: float

    def __post_init__(self):
        if self.group_size < 1:
            raise DomainError(f"group size must be >= 1, got {self.group_size}")
        if self.group_size > MAX_GROUP_SIZE:
            raise SizeGuardError(f"group size {self.group_size} exceeds supported maximum {MAX_GROUP_SIZE}")
        if not 0.0 < self.p_any_transmission < 1.0:
            raise DomainError(f"P(K>0) target must be in (0, 1), got {self.p_any_transmission}")
        if not 1.0 < self.mean_given_transmission <= self.group_size:
            raise DomainError(
                f"E(K|K>0) target must lie in (1, M={self.group_size}], "
                f"got {self.mean_given_transmission}"
            )


@dataclass(frozen=True)
class FittedPrior:
    """A fitted Beta-binomial prior plus its materialized mass function."""

    group_size: int
    alpha: float
    beta: float
    pmf: np.ndarray
    fit_residual: float

    @property
    def p_no_transmission(self) -> float:
        """Prior probability that nobody was infected, P(K = 0)."""
        return float(self.pmf[0])


def beta_binomial_pmf(group_size: int, alpha: float, beta: float) -> np.ndarray:
    """Probability mass function of BB(M, alpha, beta) on k = 0..M.

    Entry k is C(M, k) * B(k + alpha, M - k + beta) / B(alpha, beta),
    evaluated in log space and exponentiated at the end.
    """
    if group_size < 1:
        raise DomainError(f"group size must be >= 1, got {group_size}")
    if group_size > MAX_GROUP_SIZE:
        raise SizeGuardError(f"group size {group_size} exceeds supported maximum {MAX_GROUP_SIZE}")
    if not (alpha > 0 and beta > 0):
        raise DomainError(f"shape parameters must be positive, got ({alpha}, {beta})")
    m = group_size
    k = np.arange(m + 1)
    # same log-gamma primitive as logmath, vectorized over k:
    # ln C(M,k) + ln B(k+a, M-k+b) - ln B(a,b)
    log_choose = gammaln(m + 1) - gammaln(k + 1) - gammaln(m - k + 1)
    log_mass = (
        log_choose
        + gammaln(k + alpha)
        + gammaln(m - k + beta)
        - gammaln(m + alpha + beta)
        - log_beta(alpha, beta)
    )
    return np.exp(log_mass)


def conditional_mean(pmf: np.ndarray) -> float:
    """E(K | K > 0) = sum_i i * P(K=i) / P(K > 0) for a mass vector."""
    pmf = np.asarray(pmf, dtype=float)
    p_any = 1.0 - float(pmf[0])
    if p_any <= 0.0:
        raise DomainError("degenerate prior: all mass on K=0, conditional mean undefined")
    weighted = float(np.dot(np.arange(len(pmf)), pmf))
    return weighted / p_any


def _target_residual(spec: PriorSpec, pmf: np.ndarray) -> float:
    p_any = 1.0 - float(pmf[0])
    if p_any <= 0.0:
        return float("inf")
    mean = float(np.dot(np.arange(len(pmf)), pmf)) / p_any
    r_p = p_any / spec.p_any_transmission - 1.0
    r_m = mean / spec.mean_given_transmission - 1.0
    return r_p * r_p + r_m * r_m


def fit_prior(spec: PriorSpec) -> FittedPrior:
    """Fit Beta-binomial parameters to the scenario targets.

    Runs Nelder-Mead from every point of the fixed 5x5 start grid over
    (a, b) = (ln alpha, ln beta); the grid is scanned in lexicographic
    order and ties on the residual keep the earlier start, so repeated
    runs are bitwise identical.

    Raises FitFailedError (carrying the best-effort FittedPrior) when
    the best residual exceeds FIT_RESIDUAL_TOLERANCE; for the school
    scenario this genuinely happens below M = 15.
    """
    m = spec.group_size

    def objective(x):
        a, b = x
        if abs(a) > 50 or abs(b) > 50:
            return float("inf")
        return _target_residual(spec, beta_binomial_pmf(m, float(np.exp(a)), float(np.exp(b))))

    best_x = None
    best_residual = float("inf")
    for start in START_GRID:
        result = minimize(objective, np.array(start), method="Nelder-Mead", options=_NM_OPTIONS)
        value = float(result.fun)
        if value < best_residual:
            best_residual = value
            best_x = result.x
    if best_x is None:
        raise FitFailedError(f"prior fit produced no finite objective for M={m}")

    alpha = float(np.exp(best_x[0]))
    beta = float(np.exp(best_x[1]))
    pmf = beta_binomial_pmf(m, alpha, beta)
    fitted = FittedPrior(group_size=m, alpha=alpha, beta=beta, pmf=pmf, fit_residual=best_residual)
    if best_residual > FIT_RESIDUAL_TOLERANCE:
        raise FitFailedError(
            f"no Beta-binomial prior reproduces targets P(K>0)={spec.p_any_transmission:.6g}, "
            f"E(K|K>0)={spec.mean_given_transmission:.6g} for M={m} "
            f"(best residual {best_residual:.3e})",
            best=fitted,
        )
    return fitted


def uniform_prior(group_size: int) -> FittedPrior:
    """The alpha = beta = 1 prior (uniform over K), useful as a neutral default."""
    pmf = beta_binomial_pmf(group_size, 1.0, 1.0)
    return FittedPrior(group_size=group_size, alpha=1.0, beta=1.0, pmf=pmf, fit_residual=0.0)


def load_scenario(text: str) -> dict:
    """Parse a scenario preset JSON object.

    Expected shape: {"name": str, "p_any_transmission": number,
    "mean_given_transmission": number}.
    """
    doc = json.loads(text)
    if not isinstance(doc, dict):
        raise DomainError("scenario preset must be a JSON object")
    for key in ("name", "p_any_transmission", "mean_given_transmission"):
        if key not in doc:
            raise DomainError(f"scenario preset missing field {key!r}")
    return doc


def bundled_scenario(name: str) -> dict:
    """Load one of the scenario presets shipped with the package."""
    from importlib.resources import files

    resource = files("quarantine_release").joinpath(f"data/scenarios/{name}.json")
    if not resource.is_file():
        raise DomainError(f"unknown bundled scenario {name!r}")
    return load_scenario(resource.read_text("utf-8"))
