import pytest

from powersums.arith import factorize
from powersums.congruence import (
    KNOWN_PRIMARY_PSEUDOPERFECT,
    closed_prime_fixpoint,
    closed_squarefree_fixpoint,
    is_primary_pseudoperfect,
    is_weak_primary_pseudoperfect,
    pseudoperfect_report,
    search_pseudoperfect,
    special_set,
)

Q9 = 8490421583559688410706771261086


@pytest.mark.parametrize("n, expected", [(42, True), (Q9, True), (12, False), (2, True), (47058, True)])
def test_primary(n, expected):
    assert is_primary_pseudoperfect(n) is expected


def test_primary_rejects_small():
    with pytest.raises(ValueError):
        is_primary_pseudoperfect(1)


@pytest.mark.parametrize("n, expected", [(1, True), (52495396602, True), (10, False), (12, False)])
def test_weak(n, expected):
    assert is_weak_primary_pseudoperfect(n) is expected


def test_report_fields():
    r = pseudoperfect_report(12)
    assert r.witness_sum == 11 and not r.is_primary and not r.is_weak
    r = pseudoperfect_report(10)
    assert r.witness_sum == 8
    for n in KNOWN_PRIMARY_PSEUDOPERFECT:
        r = pseudoperfect_report(n)
        assert r.is_primary and r.is_weak and r.witness_sum == n


def test_primary_implies_weak_small_range():
    for n in range(2, 3000):
        r = pseudoperfect_report(n)
        assert not r.is_primary or r.is_weak


@pytest.mark.parametrize(
    "limit, weak, expected",
    [(10**5, False, [2, 6, 42, 1806, 47058]), (10**5, True, [2, 6, 42, 1806, 47058]), (5, False, [2])],
)
def test_search(limit, weak, expected):
    assert search_pseudoperfect(limit, weak=weak) == expected


def test_search_agrees_with_predicate():
    got = search_pseudoperfect(3000, weak=True)
    assert got == [n for n in range(2, 3001) if is_weak_primary_pseudoperfect(n)]


def test_search_results_squarefree():
    assert all(factorize(n).is_squarefree for n in search_pseudoperfect(10**5))


def test_search_budget():
    with pytest.raises(ValueError):
        search_pseudoperfect(100, budget=10)


def test_prime_fixpoint():
    assert closed_prime_fixpoint(10**6) == {2, 3, 7, 43}
    assert closed_prime_fixpoint(2) == {2}
    assert closed_prime_fixpoint(50) == {2, 3, 7, 43}
    assert closed_prime_fixpoint(10) == {2, 3, 7}


def test_squarefree_fixpoint():
    assert closed_squarefree_fixpoint(10**4) == {1, 2, 6, 42, 1806}
    assert closed_squarefree_fixpoint(1) == {1}
    assert closed_squarefree_fixpoint(100) == {1, 2, 6, 42}


@pytest.mark.parametrize("limit, expected", [(10**4, [1, 2, 6, 42, 1806]), (1, [1]), (50, [1, 2, 6, 42])])
def test_special_set(limit, expected):
    assert special_set(limit) == expected


def test_special_set_equals_closure():
    for limit in (1, 2, 5, 6, 41, 42, 100, 1805, 1806, 5000):
        assert set(special_set(limit)) == closed_squarefree_fixpoint(limit)


def test_monotone_in_limit():
    small, large = search_pseudoperfect(2000), search_pseudoperfect(60000)
    assert large[: len(small)] == small
    assert set(special_set(100)) <= set(special_set(2000))
    assert closed_prime_fixpoint(10) <= closed_prime_fixpoint(1000)
