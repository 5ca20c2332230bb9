"""Primary and weak primary pseudoperfect numbers, and the finite closure
sets built from primes p whose p-1 is square-free and smooth over the set.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arith import factor_with_spf, factorize, primes_up_to, spf_sieve
from .powersum import power_sum_self_mod

__all__ = [
    "KNOWN_PRIMARY_PSEUDOPERFECT",
    "SEARCH_BUDGET",
    "PseudoperfectReport",
    "pseudoperfect_report",
    "is_primary_pseudoperfect",
    "is_weak_primary_pseudoperfect",
    "search_pseudoperfect",
    "closed_prime_fixpoint",
    "closed_squarefree_fixpoint",
    "special_set",
]

KNOWN_PRIMARY_PSEUDOPERFECT = (
    2,
    6,
    42,
    1806,
    47058,
    2214502422,
    52495396602,
    8490421583559688410706771261086,
)

SEARCH_BUDGET = 10**7


@dataclass(frozen=True)
class PseudoperfectReport:
    n: int
    is_primary: bool
    is_weak: bool
    witness_sum: int  # exact sum of n/p over p | n, plus 1


def pseudoperfect_report(n: int) -> PseudoperfectReport:
    if n < 1:
        raise ValueError("n must be >= 1")
    witness = sum(n // p for p in factorize(n).primes) + 1
    return PseudoperfectReport(
        n=n,
        is_primary=n >= 2 and witness == n,
        is_weak=witness % n == 0,
        witness_sum=witness,
    )


def is_primary_pseudoperfect(n: int) -> bool:
    """True iff ``sum(n/p for p | n) + 1 == n`` exactly (``n >= 2``)."""
    if n < 2:
        raise ValueError("primary pseudoperfect numbers are defined for n >= 2")
    return pseudoperfect_report(n).is_primary


def is_weak_primary_pseudoperfect(n: int) -> bool:
    """True iff ``sum(n/p for p | n) + 1 ≡ 0 (mod n)``; n = 1 qualifies."""
    return pseudoperfect_report(n).is_weak


def search_pseudoperfect(limit: int, weak: bool = False, budget: int = SEARCH_BUDGET) -> list[int]:
    """All n in [2, limit] that are primary (or, with ``weak=True``, weak
    primary) pseudoperfect, ascending.

    Sieve-based: for each prime p the quotient n/p is added to every
    multiple n of p, so no number is factored individually.
    """
    if limit > budget:
        raise ValueError(f"limit {limit} exceeds the search budget {budget}")
    if limit < 2:
        return []
    n = np.arange(limit + 1, dtype=np.int64)
    acc = np.ones(limit + 1, dtype=np.int64)
    for p in primes_up_to(limit):
        p = int(p)
        acc[p::p] += n[1 : limit // p + 1]
    if weak:
        hit = acc[2:] % n[2:] == 0
    else:
        hit = acc[2:] == n[2:]
    return [int(x) + 2 for x in np.flatnonzero(hit)]


def closed_prime_fixpoint(limit: int) -> set[int]:
    """Largest set of primes <= limit containing 2 such that every member p
    has p-1 square-free with all prime factors in the set.

    Grown from {2} until no prime joins.
    """
    if limit < 2:
        raise ValueError("limit must be >= 2")
    spf = spf_sieve(limit)
    candidates = [int(p) for p in primes_up_to(limit) if p > 2]
    shapes = {}
    for p in candidates:
        f = factor_with_spf(p - 1, spf)
        if f.is_squarefree:
            shapes[p] = f.primes
    closed = {2}
    grew = True
    while grew:
        grew = False
        for p, primes in shapes.items():
            if p not in closed and all(q in closed for q in primes):
                closed.add(p)
                grew = True
    return closed


def closed_squarefree_fixpoint(limit: int) -> set[int]:
    """Square-free nu <= limit such that p | nu implies (p-1) | nu."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    spf = spf_sieve(limit)
    out = {1}
    for nu in range(2, limit + 1):
        f = factor_with_spf(nu, spf)
        if f.is_squarefree and all(nu % (p - 1) == 0 for p in f.primes):
            out.add(nu)
    return out


def special_set(limit: int) -> list[int]:
    """All m <= limit with ``S_m(m) ≡ 1 (mod m)``, via the closed forms."""
    if limit < 1:
        return []
    spf = spf_sieve(limit)
    return [m for m in range(1, limit + 1) if power_sum_self_mod(m, factor_with_spf(m, spf)) == 1 % m]
