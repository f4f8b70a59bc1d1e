"""Exact computations: binomial tails, the closed-form overflow mean (two
independent routes), brute-force exact distributions on small instances, and
exhaustive verification of the negative-dependence inequality.

Enumeration budgets are explicit; exceeding one raises BudgetExceededError
rather than silently approximating.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .distributions import BoxDistribution

__all__ = [
    "BudgetExceededError",
    "binomial_tail",
    "tail_bound",
    "exact_mean_overflow",
    "exact_mean_via_counts",
    "ExactDistribution",
    "exact_distribution",
    "sequence_enumeration_distribution",
    "nod_joint_table",
    "nod_check",
]

DEFAULT_MEAN_BUDGET = 10**9       # tail evaluations allowed in the mean formulas
DEFAULT_ORACLE_BUDGET = 10**7     # count compositions / ball sequences to enumerate
GEOMETRIC_CUTOFF = 1e-14          # relative contribution below which geometric urns stop


class BudgetExceededError(RuntimeError):
    """An exact computation would exceed its configured work budget."""


# ---------------------------------------------------------------------------
# binomial tails
# ---------------------------------------------------------------------------

def _log_binom_pmf_range(k: int, p: float, lo: int, hi: int) -> np.ndarray:
    """log P(Bin(k,p) = i) for i = lo..hi, via a multiplicative log recurrence
    anchored at i = lo with lgamma."""
    i = np.arange(lo, hi + 1)
    logp, logq = math.log(p), math.log1p(-p)
    anchor = (math.lgamma(k + 1) - math.lgamma(lo + 1) - math.lgamma(k - lo + 1)
              + lo * logp + (k - lo) * logq)
    if lo == hi:
        return np.array([anchor])
    # ratio pmf(i+1)/pmf(i) = (k-i)/(i+1) * p/q
    ratios = np.log((k - i[:-1]) / (i[:-1] + 1.0)) + (logp - logq)
    return anchor + np.concatenate(([0.0], np.cumsum(ratios)))


def binomial_tail(k: int, p: float, r: int) -> float:
    """P(Bin(k, p) >= r), summing the smaller tail and complementing."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0,1]")
    if r <= 0:
        return 1.0
    if r > k:
        return 0.0
    if p == 0.0:
        return 0.0
    if p == 1.0:
        return 1.0
    mean = k * p
    if r - 1 < mean:
        # lower tail i = 0..r-1 is the smaller one; complement it
        logs = _log_binom_pmf_range(k, p, 0, r - 1)
        lower = math.exp(logsumexp(logs))
        return min(max(1.0 - lower, 0.0), 1.0)
    logs = _log_binom_pmf_range(k, p, r, k)
    return min(math.exp(logsumexp(logs)), 1.0)


def tail_bound(k: int, p: float, r: int) -> float:
    """The binomial tail bound (k*p)^r / r!."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if k == 0 or p == 0.0:
        return 0.0
    return math.exp(r * math.log(k * p) - math.lgamma(r + 1))


# ---------------------------------------------------------------------------
# exact mean of the overflow, two independent formulas
# ---------------------------------------------------------------------------

def _iter_distinct_probs(dist: BoxDistribution, n: int, r: int, budget: int):
    """Yield (p, multiplicity) pairs, enforcing the n*|support| work budget.

    Geometric urns are cut adaptively once an urn's maximal possible mean
    contribution falls below GEOMETRIC_CUTOFF of the accumulated total.
    """
    if dist.finite_support:
        if n * dist.support_size > budget:
            raise BudgetExceededError(
                f"n*support = {n * dist.support_size} exceeds mean budget {budget}; "
                "use Monte Carlo")
        yield from dist.distinct_probs()
        return
    # geometric: urn j contributes at most n * tail_bound(n, p_j, r)
    p = dist.success_prob
    acc = 0.0
    for j in itertools.count():
        if (j + 1) * n > budget:
            raise BudgetExceededError(
                f"geometric truncation exceeded mean budget {budget}")
        pj = p * (1.0 - p) ** j
        cap = n * tail_bound(n, pj, r)
        if cap < GEOMETRIC_CUTOFF * max(acc, 1e-300):
            return
        acc += cap
        yield pj, 1


def _sum_tails_upto(p: float, n: int, r: int) -> float:
    """sum_{k=1}^{n} P(Bin(k-1, p) >= r), by an O(n*r) pmf recurrence."""
    q = 1.0 - p
    pmf = np.zeros(r)     # pmf of Bin(j, p) on 0..r-1, starting at j = 0
    pmf[0] = 1.0
    tail = 0.0            # P(Bin(j, p) >= r)
    total = 0.0
    for _ in range(n):    # j = 0 .. n-1, i.e. k = 1 .. n
        total += tail
        tail += p * pmf[r - 1]
        pmf[1:] = q * pmf[1:] + p * pmf[:-1]
        pmf[0] *= q
    return total


def exact_mean_overflow(dist: BoxDistribution, n: int, r: int,
                        budget: int = DEFAULT_MEAN_BUDGET) -> float:
    """E V_{n,r} = sum_m p_m * sum_{k=1}^n P(Bin(k-1, p_m) >= r)."""
    if n < 1 or r < 1:
        raise ValueError("n and r must be >= 1")
    if n <= r:
        return 0.0
    return sum(mult * p * _sum_tails_upto(p, n, r)
               for p, mult in _iter_distinct_probs(dist, n, r, budget))


def exact_mean_via_counts(dist: BoxDistribution, n: int, r: int,
                          budget: int = DEFAULT_MEAN_BUDGET) -> float:
    """E V_{n,r} = n - sum_m E min(Bin(n, p_m), r), the per-urn retention view.

    Accumulated as sum_m (n p_m - E min(Bin(n, p_m), r)) so that truncating
    the geometric support drops only genuinely negligible terms.
    """
    if n < 1 or r < 1:
        raise ValueError("n and r must be >= 1")
    if n <= r:
        return 0.0
    overflow = 0.0
    for p, mult in _iter_distinct_probs(dist, n, r, budget):
        if p == 1.0:  # single urn retains exactly r balls
            overflow += mult * (n - r)
            continue
        hi = min(r - 1, n)
        logs = _log_binom_pmf_range(n, p, 0, hi)
        below = float(np.exp(logs) @ np.arange(hi + 1))
        overflow += mult * (n * p - below - r * binomial_tail(n, p, r))
    return overflow


# ---------------------------------------------------------------------------
# brute-force exact distribution of the overflow
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExactDistribution:
    """Exact law of the overflow on a small instance."""

    pmf: dict
    n: int
    r: int
    mean: float
    variance: float


def _finish(pmf: dict, n: int, r: int) -> ExactDistribution:
    total = sum(pmf.values())
    if abs(total - 1.0) > 1e-10:
        raise AssertionError(f"pmf mass {total} is not 1")
    mean = sum(v * w for v, w in pmf.items())
    var = sum((v - mean) ** 2 * w for v, w in pmf.items())
    return ExactDistribution(pmf=dict(sorted(pmf.items())), n=n, r=r,
                             mean=mean, variance=var)


def _compositions(n: int, s: int):
    """All count vectors (c_1..c_s) with sum n."""
    if s == 1:
        yield (n,)
        return
    for head in range(n + 1):
        for rest in _compositions(n - head, s - 1):
            yield (head, *rest)


def exact_distribution(dist: BoxDistribution, n: int, r: int,
                       budget: int = DEFAULT_ORACLE_BUDGET) -> ExactDistribution:
    """Enumerate all count vectors with multinomial weights; exact pmf of V."""
    if not dist.finite_support:
        raise ValueError("exact_distribution requires a finite-support distribution")
    if n < 1 or r < 1:
        raise ValueError("n and r must be >= 1")
    s = dist.support_size
    n_comps = math.comb(n + s - 1, s - 1)
    if n_comps > budget:
        raise BudgetExceededError(
            f"{n_comps} count compositions exceed oracle budget {budget}: "
            "instance too large for oracle")
    logp = np.log(dist.support_probs())
    lg = np.array([math.lgamma(c + 1) for c in range(n + 1)])
    log_nfact = math.lgamma(n + 1)
    pmf: dict[int, float] = {}
    for comp in _compositions(n, s):
        c = np.array(comp)
        w = math.exp(log_nfact - lg[c].sum() + float(c @ logp))
        v = int(n - np.minimum(c, r).sum())
        pmf[v] = pmf.get(v, 0.0) + w
    return _finish(pmf, n, r)


def sequence_enumeration_distribution(dist: BoxDistribution, n: int, r: int,
                                      budget: int = DEFAULT_ORACLE_BUDGET) -> ExactDistribution:
    """Enumerate every ordered ball sequence; oracle for the order-based
    definition of the overflow (ball k overflows iff its urn already holds r)."""
    if not dist.finite_support:
        raise ValueError("sequence enumeration requires a finite support")
    s = dist.support_size
    if s ** n > budget:
        raise BudgetExceededError(
            f"{s ** n} ball sequences exceed oracle budget {budget}")
    probs = dist.support_probs()
    pmf: dict[int, float] = {}
    counts = np.zeros(s, dtype=np.int64)
    for seq in itertools.product(range(s), repeat=n):
        counts[:] = 0
        v = 0
        w = 1.0
        for urn in seq:
            if counts[urn] >= r:
                v += 1
            counts[urn] += 1
            w *= probs[urn]
        pmf[v] = pmf.get(v, 0.0) + w
    return _finish(pmf, n, r)


# ---------------------------------------------------------------------------
# negative orthant dependence, verified by exhaustive enumeration
# ---------------------------------------------------------------------------

def nod_joint_table(dist: BoxDistribution, n: int, k: int, l: int,
                    m1: int, m2: int,
                    budget: int = DEFAULT_ORACLE_BUDGET) -> np.ndarray:
    """table[x1, x2] = P(N_k(m1) >= x1, N_l(m2) >= x2), by enumerating every
    ball sequence of length l-1 (N_k counts the first k-1 balls)."""
    if m1 == m2:
        raise ValueError("m1 and m2 must be distinct urns")
    if not (1 <= k <= l <= n + 1):
        raise ValueError("need 1 <= k <= l <= n+1")
    if not dist.finite_support:
        raise ValueError("nod enumeration requires a finite support")
    s = dist.support_size
    if not (0 <= m1 < s and 0 <= m2 < s):
        raise ValueError("urn index outside the support")
    length = l - 1
    if s ** max(length, 0) > budget:
        raise BudgetExceededError(
            f"{s ** length} sequences exceed oracle budget {budget}")
    probs = dist.support_probs()
    # joint weight mass at (count of m1 in first k-1, count of m2 in first l-1)
    mass = np.zeros((length + 2, length + 2))
    if length == 0:
        mass[0, 0] = 1.0
    else:
        for seq in itertools.product(range(s), repeat=length):
            c1 = sum(1 for b in seq[: k - 1] if b == m1)
            c2 = sum(1 for b in seq if b == m2)
            w = 1.0
            for b in seq:
                w *= probs[b]
            mass[c1, c2] += w
    # survival table: P(C1 >= x1, C2 >= x2) via 2-d suffix sums
    joint = np.flip(np.cumsum(np.cumsum(np.flip(mass), axis=0), axis=1))
    return joint


def nod_check(dist: BoxDistribution, n: int, k: int, l: int,
              m1: int, m2: int, x1: int, x2: int,
              budget: int = DEFAULT_ORACLE_BUDGET):
    """(joint, product, holds) for P(N_k(m1)>=x1, N_l(m2)>=x2) <= product of
    marginals; the joint comes from exhaustive enumeration, the marginals from
    the exact binomial tails."""
    table = nod_joint_table(dist, n, k, l, m1, m2, budget=budget)
    x1 = min(max(x1, 0), table.shape[0] - 1)
    x2 = min(max(x2, 0), table.shape[1] - 1)
    joint = float(table[x1, x2])
    probs = dist.support_probs()
    product = (binomial_tail(k - 1, float(probs[m1]), x1)
               * binomial_tail(l - 1, float(probs[m2]), x2))
    return joint, product, joint <= product + 1e-12
