"""How much the test day matters.

PCR sensitivity is near zero right after infection and peaks around
day 8. Early tests are nearly uninformative: the same number of
negatives buys much less confidence on day 2 than on day 8, and the
minimum number of tests needed to release changes accordingly.
"""

from quarantine_release.decision import DecisionPolicy, min_tests_for_release
from quarantine_release.posterior import TestSchedule, posterior
from quarantine_release.prior import PriorSpec, fit_prior
from quarantine_release.sensitivity import default_curve, sensitivity_at

M = 25
curve = default_curve()
prior = fit_prior(PriorSpec(M, 3 / 21, 4.8))
policy = DecisionPolicy(0.9)

print(f"school class, M={M}, ten negative tests, all on the same day:")
print(f"{'day':>4} {'sensitivity':>12} {'p0':>8} {'min tests to release':>22}")
for day in range(1, 15):
    p0 = posterior(prior, TestSchedule(M, ((day, 10),)), curve).p0
    n_star = min_tests_for_release(prior, day, curve, policy)
    n_text = str(n_star) if n_star is not None else "not achievable"
    print(f"{day:>4} {sensitivity_at(curve, day):>12.2f} {p0:>8.4f} {n_text:>22}")

print()
print("reading: before day 3 the test tells you almost nothing, so no")
print("number of negatives can justify release; from day 6 on, ten")
print("negatives are comfortably enough.")
