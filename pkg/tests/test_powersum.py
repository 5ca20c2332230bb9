import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from powersums.arith import factorize, primes_up_to
from powersums.powersum import (
    OracleScaleExceeded,
    power_sum_fast_mod,
    power_sum_naive_mod,
    power_sum_prime_power_mod,
    power_sum_self_mod,
)


@pytest.mark.parametrize("m, k, mod, expected", [(1, 3, 100, 6), (4, 5, 5, 4), (2, 2, 2, 1), (2, 4, 4, 2)])
def test_naive_examples(m, k, mod, expected):
    assert power_sum_naive_mod(m, k, mod) == expected
    assert power_sum_naive_mod(m, k, mod, method="direct") == expected


def test_naive_matches_exact_sum():
    for m in range(1, 8):
        for k in range(1, 40):
            exact = sum(i**m for i in range(1, k + 1))
            for mod in (1, 2, 7, 10**6, 10**30):
                assert power_sum_naive_mod(m, k, mod) == exact % mod


@settings(max_examples=300, deadline=None)
@given(
    st.integers(min_value=1, max_value=10**18),
    st.integers(min_value=1, max_value=400),
    st.integers(min_value=1, max_value=3 * 10**9),
)
def test_naive_methods_agree(m, k, mod):
    sieved = power_sum_naive_mod(m, k, mod)
    assert sieved == power_sum_naive_mod(m, k, mod, method="direct")
    assert sieved == sum(pow(i, m, mod) for i in range(1, k + 1)) % mod


def test_naive_budget():
    with pytest.raises(OracleScaleExceeded):
        power_sum_naive_mod(2, 10**7 + 1, 7)
    with pytest.raises(OracleScaleExceeded):
        power_sum_naive_mod(2, 101, 7, budget=100)


def test_naive_partition_additivity():
    m, k, mod = 12, 5000, 9973
    whole = power_sum_naive_mod(m, k, mod)
    head = power_sum_naive_mod(m, 2000, mod)
    tail = sum(pow(i, m, mod) for i in range(2001, k + 1))
    assert whole == (head + tail) % mod


@pytest.mark.parametrize("m, p, t, expected", [(4, 5, 1, 4), (3, 5, 1, 0), (2, 2, 2, 2), (1, 2, 2, 2), (3, 2, 3, 0)])
def test_prime_power_examples(m, p, t, expected):
    assert power_sum_prime_power_mod(m, p, t) == expected


def test_prime_power_rejects_composite():
    with pytest.raises(ValueError):
        power_sum_prime_power_mod(2, 9, 1)


def test_closed_form_m1_uses_direct_value():
    # S_1(2^t) = 2^(t-1) (2^t + 1) ≡ 2^(t-1) (mod 2^t)
    for t in range(2, 12):
        assert power_sum_prime_power_mod(1, 2, t) == power_sum_naive_mod(1, 2**t, 2**t) == 2 ** (t - 1)


def test_closed_form_matches_naive_small_primes():
    for p in primes_up_to(50).tolist():
        t = 1
        while p**t <= 3000:
            for m in range(2, 101):
                assert power_sum_prime_power_mod(m, p, t) == power_sum_naive_mod(m, p**t, p**t), (m, p, t)
            t += 1


@pytest.mark.parametrize("m, expected", [(42, 1), (1, 0), (1806, 1), (6, 1), (2, 1)])
def test_self_examples(m, expected):
    assert power_sum_self_mod(m) == expected


def test_self_ten_two_ways():
    assert power_sum_self_mod(10) == power_sum_naive_mod(10, 10, 10) == 5


def test_self_matches_naive_to_2000():
    for m in range(1, 2001):
        assert power_sum_self_mod(m) == power_sum_naive_mod(m, m, m), m


def test_self_accepts_factorization():
    assert power_sum_self_mod(1806, factorize(1806)) == 1


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=1, max_value=300), st.integers(min_value=1, max_value=5000))
def test_fast_mod_matches_naive(m, k):
    assert power_sum_fast_mod(m, k) == power_sum_naive_mod(m, k, k)


def test_reduction_law():
    # S_m(k) ≡ (k/d) S_m(d) (mod d) for d | k, both sides brute force
    for k in range(1, 2001, 37):
        for d in (x for x in range(1, k + 1) if k % x == 0):
            for m in (1, 2, 3, 10, 25, 50):
                assert power_sum_naive_mod(m, k, d) == (k // d) * power_sum_naive_mod(m, d, d) % d


def test_odd_modulus_vanishing():
    for m in range(3, 1000, 2):
        qs = factorize(m).primes
        for k in range(1, 101, 7):
            if all(k % (q - 1) for q in qs):
                assert power_sum_naive_mod(k, m, m) == 0, (k, m)
