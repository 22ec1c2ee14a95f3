"""Validating the analytic likelihood against brute-force simulation.

The analytic path sums hypergeometric draw probabilities times
false-negative powers. The simulation shares none of that code: it
shuffles an explicit slot vector, infects K slots, flips a coin per
infected tested slot. If the two disagree beyond Monte Carlo noise,
something is wrong.
"""

from quarantine_release.posterior import TestSchedule, likelihood_all_negative_dp
from quarantine_release.sensitivity import default_curve
from quarantine_release.simulate import oracle_agreement, random_instances, simulate_likelihood

curve = default_curve()

sched = TestSchedule(10, ((4, 3), (8, 4)))
print("example: M=10, 3 tested day 4, 4 tested day 8")
print(f"{'K':>3} {'analytic':>10} {'simulated':>10} {'3*SE':>8}")
for k in range(0, 6):
    analytic = likelihood_all_negative_dp(sched, k, curve)
    sim = simulate_likelihood(sched, k, curve, replicates=200_000, seed=k)
    print(f"{k:>3} {analytic:>10.5f} {sim.estimate:>10.5f} {3 * sim.standard_error:>8.5f}")

print()
print("batch agreement over random instances:")
instances = random_instances(25, curve)
summary = oracle_agreement(instances, curve, seeds=[0, 1, 2, 3, 4], replicates=100_000)
print(f"  {summary.within_three_se}/{summary.evaluations} within 3 standard errors")
print(f"  worst deviation: {summary.worst_sigma:.2f} sigma")
