"""Binomial confidence intervals and tail references.

Small and dependency-free on purpose: the lab's verdicts hang off this
math, so it sticks to textbook formulas computed with stdlib functions.
"""

from __future__ import annotations

import math
from statistics import NormalDist

from ..errors import ConfigError


def z_for_confidence(confidence: float) -> float:
    if not 0.0 < confidence < 1.0:
        raise ConfigError(f"confidence must be in (0, 1), got {confidence}")
    return NormalDist().inv_cdf((1.0 + confidence) / 2.0)


def wilson_interval(hits: int, trials: int, confidence: float = 0.99) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials <= 0:
        raise ConfigError("wilson interval needs at least one trial")
    if not 0 <= hits <= trials:
        raise ConfigError(f"hits {hits} outside [0, {trials}]")
    z = z_for_confidence(confidence)
    p = hits / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (p + z2 / (2.0 * trials)) / denom
    half = z * math.sqrt(p * (1.0 - p) / trials + z2 / (4.0 * trials * trials)) / denom
    lo = 0.0 if hits == 0 else max(0.0, center - half)
    hi = 1.0 if hits == trials else min(1.0, center + half)
    return lo, hi


def binomial_tail_ge(n: int, p: float, k: int) -> float:
    """Pr[Binomial(n, p) >= k], summed exactly from log-gamma terms."""
    if n < 0 or not 0.0 <= p <= 1.0:
        raise ConfigError("binomial tail needs n >= 0 and p in [0, 1]")
    if k <= 0:
        return 1.0
    if k > n:
        return 0.0
    if p == 0.0:
        return 0.0
    if p == 1.0:
        return 1.0
    log_p, log_q = math.log(p), math.log1p(-p)
    lg_n = math.lgamma(n + 1)
    total = 0.0
    for j in range(k, n + 1):
        log_term = (
            lg_n - math.lgamma(j + 1) - math.lgamma(n - j + 1)
            + j * log_p + (n - j) * log_q
        )
        total += math.exp(log_term)
    return min(1.0, total)


def chernoff_upper(mu: float, delta: float) -> float:
    """The multiplicative-form reference tail (e^d / (1+d)^(1+d))^mu.

    The exponent constant hidden in the source bound is taken as 1,
    which makes this a conservative comparison curve, not a certified
    bound.
    """
    if mu < 0 or delta < 0:
        raise ConfigError("chernoff reference needs mu, delta >= 0")
    if delta == 0:
        return 1.0
    return math.exp(mu * (delta - (1.0 + delta) * math.log1p(delta)))
