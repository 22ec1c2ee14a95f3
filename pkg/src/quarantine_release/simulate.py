"""Monte Carlo cross-check of the analytic all-negative likelihood.

Simulates the generative reading of the observation model directly:
the M contacts are laid out as an explicit slot vector partitioned into
the untested block and the per-day test blocks, K infected slots are
drawn uniformly without replacement (via a per-replicate shuffle of the
slot indices), and each infected slot that sits in a test block comes
back negative with that day's false-negative probability. The estimate
is the fraction of replicates in which every tested slot is negative.

Deliberately shares nothing with the analytic path beyond raw numpy
sampling: an oracle that reuses the formula proves nothing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .posterior import TestSchedule
from .sensitivity import SensitivityCurve, sensitivity_at

MIN_REPLICATES = 1_000


@dataclass(frozen=True)
class SimulationEstimate:
    estimate: float
    standard_error: float
    replicates: int
    seed: int


def simulate_likelihood(
    schedule: TestSchedule,
    k: int,
    curve: SensitivityCurve,
    replicates: int = 100_000,
    seed: int = 0,
) -> SimulationEstimate:
    """Estimate P(all recorded tests negative | K = k) by simulation.

    Deterministic for a given seed. The binomial standard error
    sqrt(p(1-p)/n) accompanies the estimate so callers can run
    3-sigma agreement checks against the analytic value.
    """
    if replicates < MIN_REPLICATES:
        raise DomainError(f"need at least {MIN_REPLICATES} replicates, got {replicates}")
    m = schedule.group_size
    if k < 0 or k > m:
        raise DomainError(f"infected count must lie in [0, {m}], got {k}")

    # slot j's probability of a negative result if infected: 1 for the
    # untested block, 1 - s(day) inside a day block
    slot_negative = np.ones(m)
    offset = schedule.untested
    for day, count in schedule.groups:
        slot_negative[offset : offset + count] = 1.0 - sensitivity_at(curve, day)
        offset += count

    rng = np.random.default_rng(seed)
    slots = np.tile(np.arange(m), (replicates, 1))
    shuffled = rng.permuted(slots, axis=1)
    infected = shuffled[:, :k]
    negative_draws = rng.random((replicates, k)) < slot_negative[infected]
    all_negative = negative_draws.all(axis=1)

    estimate = float(np.mean(all_negative))
    se = float(np.sqrt(estimate * (1.0 - estimate) / replicates))
    return SimulationEstimate(estimate=estimate, standard_error=se, replicates=replicates, seed=seed)


@dataclass(frozen=True)
class OracleInstance:
    schedule: TestSchedule
    k: int


@dataclass(frozen=True)
class AgreementSummary:
    evaluations: int
    within_three_se: int
    worst_sigma: float

    @property
    def pass_fraction(self) -> float:
        return self.within_three_se / self.evaluations


def random_instances(
    count: int,
    curve: SensitivityCurve,
    instance_seed: int = 20210405,
    max_group: int = 12,
    max_day_groups: int = 3,
) -> list[OracleInstance]:
    """Draw small random (schedule, K) instances for oracle comparison.

    Instances whose analytic likelihood sits in the degenerate tails
    (below 1e-3 or above 0.999, where a finite simulation returns an
    exact 0 or 1 with zero standard error) are redrawn: they carry no
    information about agreement. K = 0 instances are kept as exactness
    checks.
    """
    from .posterior import likelihood_all_negative_dp

    rng = np.random.default_rng(instance_seed)
    instances: list[OracleInstance] = []
    while len(instances) < count:
        m = int(rng.integers(2, max_group + 1))
        n_groups = int(rng.integers(1, max_day_groups + 1))
        days = rng.choice(np.arange(3, 15), size=n_groups, replace=False)
        remaining = m
        groups = []
        for day in sorted(int(d) for d in days):
            if remaining == 0:
                break
            size = int(rng.integers(1, remaining + 1))
            groups.append((day, size))
            remaining -= size
        if not groups:
            continue
        schedule = TestSchedule(group_size=m, groups=tuple(groups))
        k = int(rng.integers(0, m + 1))
        value = likelihood_all_negative_dp(schedule, k, curve)
        if k > 0 and not 1e-3 <= value <= 0.999:
            continue
        instances.append(OracleInstance(schedule=schedule, k=k))
    return instances


def oracle_agreement(
    instances: list[OracleInstance],
    curve: SensitivityCurve,
    seeds: list[int],
    replicates: int = 100_000,
) -> AgreementSummary:
    """Compare the analytic likelihood to simulation across (instance, seed) pairs.

    An evaluation agrees when |analytic - estimate| <= 3 * standard_error;
    an exact estimate (standard error zero) must match exactly. Returns
    the aggregate pass count plus the worst observed sigma distance.
    """
    from .posterior import likelihood_all_negative_dp

    evaluations = 0
    within = 0
    worst = 0.0
    for instance in instances:
        analytic = likelihood_all_negative_dp(instance.schedule, instance.k, curve)
        for seed in seeds:
            sim = simulate_likelihood(
                instance.schedule, instance.k, curve, replicates=replicates, seed=seed
            )
            gap = abs(analytic - sim.estimate)
            evaluations += 1
            if sim.standard_error == 0.0:
                ok = gap == 0.0
                sigma = 0.0 if ok else float("inf")
            else:
                sigma = gap / sim.standard_error
                ok = sigma <= 3.0
            if ok:
                within += 1
            worst = max(worst, sigma)
    return AgreementSummary(evaluations=evaluations, within_three_se=within, worst_sigma=worst)
