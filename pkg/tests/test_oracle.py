import itertools

import pytest

from runstat.model import Specification, StatProfile
from runstat.oracle import (
    BOUND_ENV,
    OracleBoundError,
    arrangements,
    enumerate_stats,
    next_permutation,
    oracle_bound,
    stats_of_sequence,
)

from conftest import ARRANGEMENTS_23, brute_profiles, golden_23_counts


@pytest.mark.parametrize("seq, expected", ARRANGEMENTS_23)
def test_golden_23_rows(seq, expected):
    r, s, l, b, b1, b2 = expected
    assert stats_of_sequence(seq) == StatProfile(r, s, l, b, (b1, b2))


def test_singleton_and_errors():
    p = stats_of_sequence((7,))
    assert (p.r, p.s, p.l, p.b) == (0, 0, 0, 1)
    with pytest.raises(ValueError):
        stats_of_sequence(())
    with pytest.raises(ValueError):
        stats_of_sequence((1, 3), k=2)


def test_golden_23():
    table = enumerate_stats((2, 3))
    assert table.entries == golden_23_counts()
    assert sorted(table.entries.values()) == sorted((1, 2, 1, 2, 1, 2, 1))
    assert table.total == 10


def test_single_symbol():
    assert enumerate_stats((4,)).entries == {StatProfile(0, 0, 3, 1, (1,)): 1}


def test_eulerian_row_three():
    by_r = {}
    for p, c in enumerate_stats((1, 1, 1)).entries.items():
        by_r[p.r] = by_r.get(p.r, 0) + c
    assert by_r == {0: 1, 1: 4, 2: 1}


@pytest.mark.parametrize("counts", [(2, 2), (1, 2, 1), (3, 1, 2), (2, 2, 1, 1)])
def test_next_permutation_visits_each_arrangement_once(counts):
    seen = list(arrangements(Specification(counts)))
    symbols = [i for i, c in enumerate(counts, start=1) for _ in range(c)]
    assert len(seen) == len(set(seen))
    assert set(seen) == set(itertools.permutations(symbols))
    assert seen == sorted(seen)


def test_next_permutation_last():
    a = [3, 2, 1]
    assert not next_permutation(a)


def test_against_brute_force(small_spec):
    table = enumerate_stats(small_spec)
    assert table.entries == brute_profiles(small_spec.counts)
    assert table.total == small_spec.multinomial
    for p in table.entries:
        assert p.violations(small_spec) == []


def test_bound(monkeypatch):
    with pytest.raises(OracleBoundError, match="bound 4"):
        enumerate_stats((2, 3), bound=4)
    monkeypatch.setenv(BOUND_ENV, "3")
    assert oracle_bound() == 3
    with pytest.raises(OracleBoundError):
        enumerate_stats((2, 2))
    monkeypatch.delenv(BOUND_ENV)
    assert oracle_bound() == 12


def test_merge_is_addition():
    t = enumerate_stats((2, 2))
    doubled = t.merge(t)
    assert doubled.total == 2 * t.total
