"""Brute-force ground truth: enumerate every arrangement of a multiset."""

from __future__ import annotations

import os
from typing import Iterator, Sequence

from runstat.model import DistributionTable, Specification, StatProfile, as_spec

DEFAULT_BOUND = 12
BOUND_ENV = "RUNSTAT_ORACLE_BOUND"


class OracleBoundError(RuntimeError):
    def __init__(self, n: int, bound: int):
        super().__init__(
            f"refusing to enumerate n={n} > oracle bound {bound} (set {BOUND_ENV} to raise it)"
        )
        self.n = n
        self.bound = bound


def oracle_bound() -> int:
    raw = os.environ.get(BOUND_ENV)
    if raw is None:
        return DEFAULT_BOUND
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{BOUND_ENV} must be an integer, got {raw!r}") from None


def next_permutation(a: list[int]) -> bool:
    """Step ``a`` in place to its lexicographic successor; False after the last one.

    Repeated values are handled naturally, so starting from the sorted list
    visits each distinct arrangement exactly once.
    """
    i = len(a) - 2
    while i >= 0 and a[i] >= a[i + 1]:
        i -= 1
    if i < 0:
        return False
    j = len(a) - 1
    while a[j] <= a[i]:
        j -= 1
    a[i], a[j] = a[j], a[i]
    a[i + 1:] = reversed(a[i + 1:])
    return True


def arrangements(spec: Specification) -> Iterator[tuple[int, ...]]:
    seq = [i for i, c in enumerate(spec.counts, start=1) for _ in range(c)]
    yield tuple(seq)
    while next_permutation(seq):
        yield tuple(seq)


def stats_of_sequence(seq: Sequence[int], k: int | None = None) -> StatProfile:
    """Profile of one sequence over the symbols ``1..k`` (``k`` defaults to ``max(seq)``)."""
    if not seq:
        raise ValueError("empty sequence has no profile")
    if k is None:
        k = max(seq)
    if min(seq) < 1 or max(seq) > k:
        raise ValueError(f"symbols must lie in 1..{k}")
    r = s = l = 0
    b_per = [0] * k
    b_per[seq[0] - 1] = 1
    for prev, cur in zip(seq, seq[1:]):
        if prev < cur:
            r += 1
        elif prev > cur:
            s += 1
        else:
            l += 1
            continue
        b_per[cur - 1] += 1
    return StatProfile(r, s, l, r + s + 1, tuple(b_per))


def enumerate_stats(spec, bound: int | None = None) -> DistributionTable:
    """Exact table of profiles over all distinct arrangements of ``spec``."""
    spec = as_spec(spec)
    if bound is None:
        bound = oracle_bound()
    if spec.n > bound:
        raise OracleBoundError(spec.n, bound)
    counts: dict[StatProfile, int] = {}
    visited = 0
    for seq in arrangements(spec):
        p = stats_of_sequence(seq, spec.k)
        counts[p] = counts.get(p, 0) + 1
        visited += 1
    assert visited == spec.multinomial, (visited, spec.multinomial)
    return DistributionTable(spec, counts)
