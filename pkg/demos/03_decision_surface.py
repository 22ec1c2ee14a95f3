"""The release surface: p0 as a function of group size and tests done.

Everyone tested on day 4 after the event. Each cell of the map shows
whether p0 clears the 0.9 release threshold; the boundary hovers around
30% of the group tested, so a health office can release most school
classes after testing roughly a third of the contacts.
"""

from quarantine_release.decision import DecisionPolicy, min_tests_for_release, posterior_surface
from quarantine_release.prior import PriorSpec, fit_prior
from quarantine_release.sensitivity import default_curve

P_ANY, MEAN, DAY = 3 / 21, 4.8, 4
curve = default_curve()
policy = DecisionPolicy(0.9)

sizes = range(15, 36, 2)
rows = posterior_surface([PriorSpec(m, P_ANY, MEAN) for m in sizes], DAY, curve, policy)

print(f"release map (day {DAY} testing, threshold {policy.threshold}):")
print("  '#' release, '.' continue; column = number of negative tests N")
print()
header = "".join(str(n % 10) for n in range(36))
print(f"  M  N=0{'':1}{header[1:]}")
for m in sizes:
    cells = [row for row in rows if row.group_size == m]
    line = "".join("#" if row.release else "." for row in cells)
    print(f"  {m:>2}   {line}")

print()
print("minimum tests to release, as a fraction of the group:")
for m in sizes:
    prior = fit_prior(PriorSpec(m, P_ANY, MEAN))
    n_star = min_tests_for_release(prior, DAY, curve, policy)
    print(f"  M={m:>2}: N*={n_star:>2}  ({n_star / m:.0%} of the group)")
