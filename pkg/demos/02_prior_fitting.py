"""Fitting the Beta-binomial prior from scenario evidence.

Scenario knowledge arrives as two interpretable numbers: how likely any
transmission is at all, and how large an outbreak is when one happens.
The fit recovers the (alpha, beta) shape parameters that reproduce both
for a given group size, and reports a first-class failure when no
Beta-binomial can do so.
"""

from quarantine_release.errors import FitFailedError
from quarantine_release.prior import PriorSpec, conditional_mean, fit_prior

P_ANY = 3 / 21  # school classes: 3 of 21 studied classes saw a transmission
MEAN = 4.8      # mean number infected, given at least one

print(f"targets: P(K>0) = {P_ANY:.4f}, E(K|K>0) = {MEAN}")
print()
print(f"{'M':>4} {'alpha':>10} {'beta':>10} {'residual':>10} {'P(K=0)':>8} {'E(K|K>0)':>9}")
for m in (13, 14, 15, 20, 25, 30, 35):
    fitted = fit_prior(PriorSpec(m, P_ANY, MEAN))
    print(
        f"{m:>4} {fitted.alpha:>10.5f} {fitted.beta:>10.5f} "
        f"{fitted.fit_residual:>10.2e} {fitted.p_no_transmission:>8.4f} "
        f"{conditional_mean(fitted.pmf):>9.4f}"
    )

print()
print("an infeasible scenario fails loudly instead of returning garbage:")
try:
    fit_prior(PriorSpec(8, p_any_transmission=0.95, mean_given_transmission=1.01))
except FitFailedError as err:
    print(f"  FitFailed: best residual {err.best.fit_residual:.3e}")
    print("  (95% outbreak probability with a mean barely above one person is")
    print("   more concentrated than any Beta-binomial on M=8 can be)")
