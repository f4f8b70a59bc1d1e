"""Limit-regime diagnostics: the Poisson intensity, the conditions behind the
Poisson and normal limits, and the finite-n / asymptotic variance bracket.

A single (dist, n) pair cannot decide an asymptotic statement, so the
classification is an explicitly labeled heuristic:

* PoissonCandidate  if n*p_star <= 0.05 and the scaled moment <= 50,
* NormalCandidate   if the scaled moment >= 500,
* Indeterminate     otherwise.

The raw diagnostics are always reported next to the label so users can judge
their own sequence of instances.  The lower variance constant only bounds a
liminf, hence the field name var_lower_asymptotic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict

from .distributions import BoxDistribution, Geometric, p_star, power_moment

__all__ = [
    "RegimeReport",
    "regime_report",
    "poisson_pmf",
    "geometric_scaled_moment",
    "N_P_STAR_POISSON_MAX",
    "SCALED_MOMENT_POISSON_MAX",
    "SCALED_MOMENT_NORMAL_MIN",
]

N_P_STAR_POISSON_MAX = 0.05
SCALED_MOMENT_POISSON_MAX = 50.0
SCALED_MOMENT_NORMAL_MIN = 500.0


@dataclass(frozen=True)
class RegimeReport:
    n_p_star: float
    scaled_moment: float
    mu: float
    var_upper: float
    var_lower_asymptotic: float
    classification: str

    def to_dict(self) -> dict:
        return asdict(self)


def _classify(n_p_star: float, scaled_moment: float) -> str:
    if n_p_star <= N_P_STAR_POISSON_MAX and scaled_moment <= SCALED_MOMENT_POISSON_MAX:
        return "PoissonCandidate"
    if scaled_moment >= SCALED_MOMENT_NORMAL_MIN:
        return "NormalCandidate"
    return "Indeterminate"


def regime_report(dist: BoxDistribution, n: int, r: int) -> RegimeReport:
    """Diagnostics for the instance: n*p*, n^(r+1)*E p^r, mu, variance bracket."""
    nps = n * p_star(dist)
    scaled = float(n) ** (r + 1) * power_moment(dist, r)
    mu = scaled / math.factorial(r + 1)
    return RegimeReport(
        n_p_star=nps,
        scaled_moment=scaled,
        mu=mu,
        var_upper=scaled / math.factorial(r),
        var_lower_asymptotic=math.exp(-2.0 * nps) / math.factorial(r + 1) * scaled,
        classification=_classify(nps, scaled),
    )


def poisson_pmf(mu: float, k: int) -> float:
    """e^(-mu) mu^k / k!, evaluated in log space."""
    if mu <= 0.0:
        raise ValueError("mu must be positive")
    if k < 0:
        return 0.0
    return math.exp(k * math.log(mu) - mu - math.lgamma(k + 1))


def geometric_scaled_moment(p: float, n: int, r: int) -> float:
    """Closed form (n p)^(r+1) / (1 - (1-p)^(r+1)) for the geometric law."""
    Geometric(p)  # validates p
    denom = -math.expm1((r + 1) * math.log1p(-p))
    return (n * p) ** (r + 1) / denom
