"""End-to-end walkthrough on the bundled school-class line list.

A class had contact with one confirmed case on 2020-08-10. Seventeen
people appear on the health-department list; two of them met the case
again later, so they do not fit the single-event model and are set
aside for individual assessment. Of the remaining 15, twelve tested
negative on days 8, 9 and 10 after the event, three were never tested.
How confident can the health office be that nobody was infected?
"""

from quarantine_release import engine
from quarantine_release.cohort import bundled_cohort, read_cohort_csv
from quarantine_release.decision import DecisionPolicy
from quarantine_release.sensitivity import default_curve

records = read_cohort_csv(bundled_cohort("school_class_aug2020"))
print(f"line list: {len(records)} people")

evaluation = engine.evaluate_records(
    records,
    p_any_transmission=3 / 21,  # school scenario: chance of any transmission
    mean_given_transmission=4.8,  # mean outbreak size when one happens
    curve=default_curve(),
    policy=DecisionPolicy(0.9),
)

report = evaluation.report
print(f"event date:  {report.event_date}")
for case_id, reason in report.excluded:
    print(f"excluded:    case {case_id} ({reason})")

sched = evaluation.result.schedule_echo
print(f"modeled group: M={sched.group_size}, untested N0={sched.untested}")
for day, count in sched.groups:
    print(f"  day {day}: {count} negative")

print()
print(f"prior P(K=0)     = {evaluation.result.prior_p0:.4f}")
print(f"posterior p0     = {evaluation.result.p0:.4f}")
print(f"recommendation   = {evaluation.recommendation.action.value}")
print()
print("posterior over the number of infected K:")
for k, mass in enumerate(evaluation.result.posterior):
    if mass < 5e-4 and k > 0:
        continue
    bar = "#" * round(60 * mass)
    print(f"  K={k:2d}  {mass:8.5f}  {bar}")
