"""One allocation trial: n balls into capacity-r urns, overflow and full-urn stats.

The overflow is computed two independent ways that must agree exactly:

* streaming: ball k overflows iff its urn already held >= r balls when the
  ball arrived (implemented via per-ball prior-occurrence ranks, so it is a
  function of the ordered ball sequence);
* count-based: n - sum_m min(count_m, r), a pure function of final counts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distributions import BoxDistribution

__all__ = [
    "AllocationOutcome",
    "run_trial",
    "overflow_from_counts",
    "full_counts",
    "streaming_overflow",
    "counts_from_sequence",
]


@dataclass(frozen=True)
class AllocationOutcome:
    """Final state of one trial; counts holds only urns that received a ball."""

    counts: dict
    n: int
    r: int
    overflow: int
    full_urns: int
    exactly_full: int
    sequence: np.ndarray | None = None  # retained only on request (debugging)


def counts_from_sequence(balls: np.ndarray) -> dict:
    """Map urn index -> ball count for the urns that were hit."""
    urns, counts = np.unique(np.asarray(balls), return_counts=True)
    return {int(u): int(c) for u, c in zip(urns, counts)}


def _occurrence_ranks(balls: np.ndarray) -> np.ndarray:
    """For each ball, how many earlier balls chose the same urn."""
    balls = np.asarray(balls)
    n = balls.size
    order = np.argsort(balls, kind="stable")
    s = balls[order]
    change = np.empty(n, dtype=bool)
    if n:
        change[0] = True
        change[1:] = s[1:] != s[:-1]
    starts = np.flatnonzero(change)
    group = np.cumsum(change) - 1
    ranks_sorted = np.arange(n) - starts[group]
    ranks = np.empty(n, dtype=np.int64)
    ranks[order] = ranks_sorted
    return ranks


def streaming_overflow(balls: np.ndarray, r: int) -> int:
    """Number of balls whose urn already held >= r balls on arrival."""
    if r < 1:
        raise ValueError("capacity r must be >= 1")
    return int(np.count_nonzero(_occurrence_ranks(balls) >= r))


def overflow_from_counts(counts, n: int, r: int) -> int:
    """n - sum_m min(count_m, r); rejects count maps that do not sum to n."""
    if r < 1:
        raise ValueError("capacity r must be >= 1")
    values = np.asarray(list(counts.values()) if isinstance(counts, dict) else counts,
                        dtype=np.int64)
    total = int(values.sum())
    if total != n:
        raise ValueError(f"counts sum to {total}, expected n={n}")
    return int(n - np.minimum(values, r).sum())


def full_counts(counts, r: int) -> tuple[int, int]:
    """(L, M): urns with count >= r and urns with count == r."""
    if r < 1:
        raise ValueError("capacity r must be >= 1")
    values = np.asarray(list(counts.values()) if isinstance(counts, dict) else counts,
                        dtype=np.int64)
    return int(np.count_nonzero(values >= r)), int(np.count_nonzero(values == r))


def run_trial(dist: BoxDistribution, n: int, r: int, rng: np.random.Generator,
              keep_sequence: bool = False) -> AllocationOutcome:
    """Throw n balls drawn from dist and fill every outcome field.

    Both overflow routes are evaluated; a mismatch would indicate a bug and
    raises immediately.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if r < 1:
        raise ValueError("capacity r must be >= 1")
    balls = dist.sample(rng, n)
    counts = counts_from_sequence(balls)
    v_stream = streaming_overflow(balls, r)
    v_counts = overflow_from_counts(counts, n, r)
    if v_stream != v_counts:
        raise AssertionError(
            f"overflow mismatch: streaming={v_stream} count-based={v_counts}")
    full, exactly = full_counts(counts, r)
    return AllocationOutcome(
        counts=counts, n=n, r=r, overflow=v_counts,
        full_urns=full, exactly_full=exactly,
        sequence=balls if keep_sequence else None,
    )
