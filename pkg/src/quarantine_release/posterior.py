"""Likelihood of all-negative test records and the posterior over K.

The observation model: K of the M contacts are infected, distributed
across the day-stratified test groups like draws from an urn
partitioned into (N0 untested, N1 tested on day D1, ..., Nn tested on
day Dn). A draw (K0, ..., Kn) has multivariate hypergeometric
probability, and every infected person tested on day Dd independently
comes back negative with probability 1 - s(Dd); healthy people always
test negative (specificity 1). Summing over all feasible draws gives

    L(K) = sum over {K0..Kn : sum Kd = K, Kd <= Nd} of
           C(N0, K0) / C(M, K) * prod_d C(Nd, Kd) * (1 - s_Dd)^Kd

Two implementations are provided on purpose. ``likelihood_all_negative``
enumerates draws directly (exponential in the number of day groups) and
serves as the correctness oracle. ``likelihood_all_negative_dp``
extracts the same value as a polynomial product coefficient in O(M^2)
and is the production path; the two must agree to 1e-12.

The posterior follows from Bayes' rule with the fitted Beta-binomial
prior; p0 = posterior[0] is the quantity driving release decisions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DomainError, SizeGuardError, UnsupportedModelError
from .logmath import MAX_GROUP_SIZE, log_binomial, log_pow
from .prior import FittedPrior
from .sensitivity import SensitivityCurve, sensitivity_at


@dataclass(frozen=True)
class TestSchedule:
    """Day-stratified record of negative tests among a group of M contacts.

    groups is a sequence of (day, count) pairs with pairwise-distinct
    days >= 1; the untested remainder N0 = M - sum(counts) is implied.
    Groups are stored sorted by day, so schedules that differ only in
    group order are identical objects and every downstream number is
    bit-identical under permutation.
    """

    group_size: int
    groups: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.group_size < 1:
            raise DomainError(f"group size must be >= 1, got {self.group_size}")
        if self.group_size > MAX_GROUP_SIZE:
            raise SizeGuardError(f"group size {self.group_size} exceeds supported maximum {MAX_GROUP_SIZE}")
        groups = tuple(sorted((int(d), int(c)) for d, c in self.groups))
        object.__setattr__(self, "groups", groups)
        days = [d for d, _ in groups]
        if any(day < 1 for day in days):
            raise DomainError(f"test days must be >= 1, got {days}")
        if len(set(days)) != len(days):
            raise DomainError(f"test days must be pairwise distinct, got {days}")
        if any(count < 1 for _, count in groups):
            raise DomainError("every day group needs a positive test count")
        if self.tested_total > self.group_size:
            raise DomainError(
                f"{self.tested_total} tested exceeds group size {self.group_size}"
            )

    @property
    def tested_total(self) -> int:
        """N, the number of contacts with a (negative) test result."""
        return sum(count for _, count in self.groups)

    @property
    def untested(self) -> int:
        """N0, the contacts that were never tested."""
        return self.group_size - self.tested_total


@dataclass(frozen=True)
class PosteriorResult:
    """Posterior mass over K plus the release-relevant scalars."""

    posterior: np.ndarray
    p0: float
    prior_p0: float
    log_evidence: float
    schedule_echo: TestSchedule


def _require_specificity_one(curve: SensitivityCurve):
    if curve.specificity != 1.0:
        raise UnsupportedModelError(
            f"likelihood model requires specificity 1, curve {curve.name!r} has "
            f"{curve.specificity} (healthy people testing positive is out of scope)"
        )


def _check_k(schedule: TestSchedule, k: int):
    if k < 0 or k > schedule.group_size:
        raise DomainError(f"infected count must lie in [0, {schedule.group_size}], got {k}")


def _group_arrays(schedule: TestSchedule, curve: SensitivityCurve):
    """Capacities [N0, N1..Nn] and per-group negative probabilities [1, 1-s_D1, ...]."""
    capacities = [schedule.untested]
    neg_probs = [1.0]
    for day, count in schedule.groups:
        capacities.append(count)
        neg_probs.append(1.0 - sensitivity_at(curve, day))
    return capacities, neg_probs


def _compositions(capacities: list[int], total: int):
    """Yield all (k_0..k_n) with sum k_i = total, 0 <= k_i <= capacities[i].

    Lexicographically ascending, so enumeration order (and therefore
    float summation order) is deterministic.
    """
    n = len(capacities)
    tail_capacity = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        tail_capacity[i] = tail_capacity[i + 1] + capacities[i]

    def rec(i, remaining):
        if i == n:
            if remaining == 0:
                yield ()
            return
        lo = max(0, remaining - tail_capacity[i + 1])
        hi = min(capacities[i], remaining)
        for k_i in range(lo, hi + 1):
            for rest in rec(i + 1, remaining - k_i):
                yield (k_i, *rest)

    yield from rec(0, total)


def likelihood_all_negative(schedule: TestSchedule, k: int, curve: SensitivityCurve) -> float:
    """P(all recorded tests negative | K = k), by direct draw enumeration.

    The correctness oracle: transcribes the urn-model sum term by term
    in log space. Cost grows exponentially with the number of day
    groups; use the _dp variant for anything beyond small instances.
    """
    _require_specificity_one(curve)
    _check_k(schedule, k)
    if k == 0:
        return 1.0
    capacities, neg_probs = _group_arrays(schedule, curve)
    log_norm = log_binomial(schedule.group_size, k)
    total = 0.0
    for draw in _compositions(capacities, k):
        log_term = -log_norm
        for cap, q, k_d in zip(capacities, neg_probs, draw):
            log_term += log_binomial(cap, k_d) + log_pow(q, k_d)
        total += math.exp(log_term)
    return total


def _likelihood_vector(schedule: TestSchedule, curve: SensitivityCurve) -> np.ndarray:
    """L(k) for every k = 0..M at once, via polynomial convolution.

    Each group d contributes the polynomial sum_j C(Nd, j) q_d^j x^j
    (q_0 = 1 for the untested group); the numerator of L(k) is the
    x^k coefficient of the product. Coefficients never exceed C(M, k)
    by Vandermonde's identity, so the computation stays finite in
    doubles for every supported M.
    """
    _require_specificity_one(curve)
    m = schedule.group_size
    capacities, neg_probs = _group_arrays(schedule, curve)
    product = np.ones(1)
    for cap, q in zip(capacities, neg_probs):
        if cap == 0:
            continue
        j = np.arange(cap + 1)
        coeffs = np.exp([log_binomial(cap, int(i)) for i in j]) * np.power(q, j)
        product = np.convolve(product, coeffs)
    log_choose_m = np.array([log_binomial(m, k) for k in range(m + 1)])
    vector = product / np.exp(log_choose_m)
    # the all-negative event has probability at most 1; trim float spill
    return np.minimum(vector, 1.0)


def likelihood_all_negative_dp(schedule: TestSchedule, k: int, curve: SensitivityCurve) -> float:
    """Same value as likelihood_all_negative, via coefficient extraction."""
    _check_k(schedule, k)
    return float(_likelihood_vector(schedule, curve)[k])


def posterior(prior: FittedPrior, schedule: TestSchedule, curve: SensitivityCurve) -> PosteriorResult:
    """Posterior P(K = k | all recorded tests negative) under the prior.

    posterior[k] is proportional to L(k) * prior.pmf[k], normalized by
    the evidence (kept as log_evidence for audit output). An empty
    schedule carries no information, so the posterior is returned as
    the prior unchanged.
    """
    if prior.group_size != schedule.group_size:
        raise ConfigurationError(
            f"prior fitted for M={prior.group_size} cannot score a schedule "
            f"with M={schedule.group_size}"
        )
    _require_specificity_one(curve)
    if not schedule.groups:
        post = prior.pmf.copy()
        return PosteriorResult(
            posterior=post,
            p0=float(post[0]),
            prior_p0=float(prior.pmf[0]),
            log_evidence=float(np.log(np.sum(prior.pmf))),
            schedule_echo=schedule,
        )
    weights = _likelihood_vector(schedule, curve) * prior.pmf
    evidence = float(np.sum(weights))
    post = weights / evidence
    return PosteriorResult(
        posterior=post,
        p0=float(post[0]),
        prior_p0=float(prior.pmf[0]),
        log_evidence=float(np.log(evidence)),
        schedule_echo=schedule,
    )
