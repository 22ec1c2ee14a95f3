"""Log-space combinatorial primitives.

Everything downstream (Beta-binomial mass functions, hypergeometric
draw probabilities) is assembled from log-gamma so there is a single
accuracy surface: ``scipy.special.gammaln``. Values are plain floats
holding natural logarithms; an exact zero probability is represented
by ``LOG_ZERO`` (``-inf``), which behaves absorbingly under addition.

Group sizes are capped at ``MAX_GROUP_SIZE`` upstream, so every
quantity produced here exponentiates to a finite double.
"""

from __future__ import annotations

import functools
import math

from scipy.special import gammaln

from .errors import DomainError

#: log of an exactly-zero weight; addition with any finite log-weight absorbs
LOG_ZERO = float("-inf")

#: largest group size the enumeration-based modules accept
MAX_GROUP_SIZE = 1000


def log_beta(alpha: float, beta: float) -> float:
    """Return ln B(alpha, beta) for positive real arguments.

    ln B(a, b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a + b); symmetric
    in its arguments by construction.
    """
    if not (alpha > 0 and beta > 0):
        raise DomainError(f"log_beta requires positive arguments, got ({alpha}, {beta})")
    return float(gammaln(alpha) + gammaln(beta) - gammaln(alpha + beta))


@functools.lru_cache(maxsize=200_000)
def log_binomial(n: int, k: int) -> float:
    """Return ln C(n, k) via log-gamma.

    Exact integer arguments only; k outside [0, n] is a contract
    violation rather than a zero weight, because in-scope callers
    always enumerate feasible compositions. Cached: draw enumeration
    revisits the same small (n, k) pairs constantly.
    """
    if n < 0 or k < 0:
        raise DomainError(f"log_binomial requires non-negative arguments, got ({n}, {k})")
    if k > n:
        raise DomainError(f"log_binomial requires k <= n, got ({n}, {k})")
    return float(gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1))


def log_pow(base: float, exponent: int) -> float:
    """Return exponent * ln(base), with 0^0 = 1 and 0^j = 0 for j > 0."""
    if base < 0:
        raise DomainError(f"log_pow requires a non-negative base, got {base}")
    if exponent == 0:
        return 0.0
    if base == 0.0:
        return LOG_ZERO
    return exponent * math.log(base)
