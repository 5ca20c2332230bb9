import random

import pytest

from powersums.arith import factorize
from powersums.congruence import is_weak_primary_pseudoperfect
from powersums.nq import (
    FailingCondition,
    NotWeakPseudoperfect,
    compute_nQ,
    count_NQ,
    enumerate_NQ,
    is_NQ_empty,
    membership_fast,
    membership_oracle,
    nq_profile,
)

Q9 = 8490421583559688410706771261086


def test_membership_fast_examples():
    v = membership_fast(2, 3)
    assert not v.member and v.witness == 3 and v.failing_condition is FailingCondition.II_FORBIDDEN_PRIME
    assert membership_fast(1, 7).member
    assert membership_fast(42, 1).member


def test_membership_fast_condition_i():
    v = membership_fast(4, 1)
    assert not v.member and v.failing_condition is FailingCondition.I_LOCAL_CONGRUENCE and v.witness == 2
    v = membership_fast(47058, 1)
    assert not v.member and v.failing_condition is FailingCondition.I_DIVISIBILITY and v.witness == 11


def test_membership_fast_rejects_zero():
    with pytest.raises(ValueError):
        membership_fast(0, 1)


@pytest.mark.parametrize("q, n, expected", [(2, 1, True), (1, 2, False), (6, 1, True), (47058, 5, True)])
def test_membership_oracle_examples(q, n, expected):
    assert membership_oracle(q, n, budget=3 * 10**5) is expected


def test_oracle_budget():
    with pytest.raises(ValueError):
        membership_oracle(47058, 5, budget=10**5)


@pytest.mark.parametrize(
    "q, expected", [(47058, 5), (1, 1), (2, 1), (1806, 1), (2214502422, 5), (Q9, 39607528021345872635)]
)
def test_compute_nQ(q, expected):
    assert compute_nQ(q) == expected


def test_compute_nQ_rejects_non_weak():
    with pytest.raises(NotWeakPseudoperfect):
        compute_nQ(10)


@pytest.mark.parametrize("q, expected", [(52495396602, (True, 5)), (47058, (False, None)), (2, (False, None))])
def test_emptiness(q, expected):
    assert is_NQ_empty(q) == expected


def test_profile():
    p = nq_profile(47058)
    assert (p.nQ, p.empty, p.witness, p.min_element) == (5, False, None, 5)
    p = nq_profile(52495396602)
    assert p.empty and p.witness == 5 and p.min_element is None


@pytest.mark.parametrize(
    "q, limit, expected",
    [
        (2, 28, [1, 2, 4, 5, 7, 8, 11, 13, 14, 16, 17, 19, 22, 23, 25, 26, 28]),
        (1, 10, [1, 3, 5, 7, 9]),
        (47058, 5, [5]),
        (52495396602, 1000, []),
        (12, 1000, []),
    ],
)
def test_enumerate_examples(q, limit, expected):
    assert enumerate_NQ(q, limit) == expected


def test_enumerate_budget():
    with pytest.raises(ValueError):
        enumerate_NQ(2, 101, budget=100)


def test_count_q1_is_half():
    assert count_NQ(1, 10**5) == 50000


def test_oracle_equivalence_core():
    for q in (1, 2, 6, 42):
        qf = factorize(q)
        for n in range(1, 2 * 10**4 // q + 1):
            assert membership_fast(q, n, q_factors=qf).member == membership_oracle(q, n), (q, n)


def test_oracle_equivalence_arbitrary_q():
    rng = random.Random(1)
    for _ in range(400):
        q = rng.randint(1, 100)
        n = rng.randint(1, 10**4 // q)
        assert membership_fast(q, n).member == membership_oracle(q, n), (q, n)


def test_enumerate_matches_membership():
    for q in (1, 2, 6, 42, 1806, 47058, 3, 30, 12):
        fast = [n for n in range(1, 3001) if membership_fast(q, n).member]
        assert enumerate_NQ(q, 3000) == fast, q


def test_divisibility_by_nQ():
    for q in (1, 2, 6, 42, 1806, 47058):
        nq = compute_nQ(q)
        hits = enumerate_NQ(q, 10**5)
        assert hits and all(n % nq == 0 for n in hits)
        assert hits[0] == nq


def test_odd_q_needs_even_q():
    # for odd q, no even n is a solution
    for q in range(1, 51, 2):
        for n in range(2, 2 * 10**4 // q + 1, 2):
            assert not membership_oracle(q, n), (q, n)


def test_non_squarefree_q_has_no_solutions():
    for q in range(1, 101):
        if factorize(q).is_squarefree:
            continue
        for n in range(1, 10**4 // q + 1):
            assert not membership_oracle(q, n), (q, n)


def test_nonempty_implies_weak_pseudoperfect():
    for q in range(1, 10**5 + 1):
        if enumerate_NQ(q, 30):
            assert q == 1 or is_weak_primary_pseudoperfect(q), q


def test_nonempty_implies_weak_pseudoperfect_small():
    found = [q for q in range(1, 5001) if enumerate_NQ(q, 30)]
    assert found == [1, 2, 6, 42, 1806]
