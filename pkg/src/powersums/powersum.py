"""Power sums S_m(k) = 1^m + 2^m + ... + k^m reduced modulo an integer.

Two independent routes are provided:

* :func:`power_sum_naive_mod` adds the terms one at a time (each by modular
  exponentiation). It knows no theory and is the reference oracle.
* :func:`power_sum_prime_power_mod` / :func:`power_sum_self_mod` use the
  closed forms for S_m(p^t) mod p^t and recombine prime-power parts by CRT,
  so S_m(m) mod m costs a factorization plus O(omega(m)) cheap steps.
"""

from __future__ import annotations

import logging

import numba
import numpy as np

from .arith import Factorization, crt_combine, factorize, is_prime

__all__ = [
    "OracleScaleExceeded",
    "NAIVE_K_BUDGET",
    "power_sum_naive_mod",
    "power_sum_prime_power_mod",
    "power_sum_fast_mod",
    "power_sum_self_mod",
]

log = logging.getLogger(__name__)

NAIVE_K_BUDGET = 10**7
# moduli below this keep every product of two residues inside int64
_KERNEL_MODULUS_BOUND = 3_037_000_499


class OracleScaleExceeded(ValueError):
    """The naive summation was asked for more terms than its budget allows."""


@numba.njit(cache=True)
def _powmod(base, e, modulus):
    result = 1 % modulus
    base %= modulus
    while e > 0:
        if e & 1:
            result = result * base % modulus
        base = base * base % modulus
        e >>= 1
    return result


@numba.njit(cache=True)
def _direct_kernel(m, start, stop, modulus):
    total = 0
    for i in range(start, stop):
        total += _powmod(i, m, modulus)
        if total >= modulus:
            total -= modulus
    return total


@numba.njit(cache=True)
def _sieved_kernel(m, k, modulus):
    # i -> i^m is completely multiplicative: exponentiate primes only and
    # build composites from their smallest prime factor (linear sieve).
    f = np.empty(k + 1, np.int64)
    spf = np.zeros(k + 1, np.int32)
    primes = np.empty(k + 1, np.int32)
    n_primes = 0
    f[1] = 1 % modulus
    total = f[1]
    for i in range(2, k + 1):
        if spf[i] == 0:
            spf[i] = i
            primes[n_primes] = i
            n_primes += 1
            f[i] = _powmod(i, m, modulus)
        else:
            f[i] = f[spf[i]] * f[i // spf[i]] % modulus
        total += f[i]
        if total >= modulus:
            total -= modulus
        s = spf[i]
        for j in range(n_primes):
            p = primes[j]
            if p > s or p * i > k:
                break
            spf[p * i] = p
    return total


def _naive_python(m: int, start: int, stop: int, modulus: int) -> int:
    total = 0
    for i in range(start, stop):
        total += pow(i, m, modulus)
    return total % modulus


def power_sum_naive_mod(
    m: int,
    k: int,
    modulus: int,
    budget: int = NAIVE_K_BUDGET,
    method: str = "sieved",
) -> int:
    """Return ``(1^m + ... + k^m) mod modulus`` by direct summation.

    ``method="sieved"`` exponentiates only prime bases and assembles the
    other terms multiplicatively; ``method="direct"`` runs square-and-multiply
    for every term. Both add all k terms. Refuses ``k > budget`` with
    :class:`OracleScaleExceeded`.
    """
    if m < 1 or k < 1 or modulus < 1:
        raise ValueError("m, k and modulus must all be >= 1")
    if k > budget:
        raise OracleScaleExceeded(f"k={k} exceeds the naive oracle budget {budget}")
    if method not in ("sieved", "direct"):
        raise ValueError(f"unknown method {method!r}")
    if modulus >= _KERNEL_MODULUS_BOUND or m >= 2**63:
        return _naive_python(m, 1, k + 1, modulus)
    if method == "direct" or k >= 2**31:
        return int(_direct_kernel(np.int64(m), np.int64(1), np.int64(k + 1), np.int64(modulus)))
    return int(_sieved_kernel(np.int64(m), np.int64(k), np.int64(modulus)))


def power_sum_prime_power_mod(m: int, p: int, t: int) -> int:
    """Closed form for ``S_m(p^t) mod p^t``.

    Odd p: ``-p^(t-1)`` when ``p-1 | m``, else 0. For p = 2: ``2^(t-1)`` if
    t = 1 or m is even, 0 if t > 1 and m > 1 is odd. The case t > 1, m = 1
    returns the true value ``2^(t-1)`` (since ``S_1(2^t) = 2^(t-1)(2^t+1)``),
    not ``-1``.
    """
    if m < 1 or t < 1:
        raise ValueError("m and t must be >= 1")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    pt = p**t
    if p == 2:
        if t == 1 or m % 2 == 0:
            return pt // 2
        if m == 1:
            log.info("S_1(2^%d) mod 2^%d: using the directly computed value 2^(t-1), not -1", t, t)
            return pt // 2
        return 0
    if m % (p - 1) == 0:
        return pt - pt // p
    return 0


def power_sum_fast_mod(m: int, k: int, factorization: Factorization | None = None) -> int:
    """``S_m(k) mod k`` from the prime-power closed forms.

    For each ``p^t`` exactly dividing k the local value is
    ``(k / p^t) * S_m(p^t) mod p^t`` (the terms repeat with period p^t);
    the locals are joined by CRT in ascending prime order. A known
    factorization of k may be passed in.
    """
    if m < 1 or k < 1:
        raise ValueError("m and k must be >= 1")
    if factorization is None:
        factorization = factorize(k)
    parts = []
    for p, t in factorization:
        pt = p**t
        local = (k // pt) * power_sum_prime_power_mod(m, p, t) % pt
        parts.append((local, pt))
    return crt_combine(parts)


def power_sum_self_mod(m: int, factorization: Factorization | None = None) -> int:
    """``S_m(m) mod m``.

    >>> power_sum_self_mod(42)
    1
    """
    return power_sum_fast_mod(m, m, factorization)
