"""The solution sets N_Q = {n >= 1 : S_{Qn}(Qn) ≡ n (mod Qn)}.

Membership is decided from the prime factors of Q and n alone
(:func:`membership_fast`); :func:`membership_oracle` evaluates the defining
congruence by brute force and is used to check it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd

import numpy as np

from .arith import Factorization, factorize, lcm, primes_up_to
from .congruence import is_weak_primary_pseudoperfect
from .powersum import power_sum_naive_mod

__all__ = [
    "FailingCondition",
    "MembershipVerdict",
    "NQProfile",
    "NotWeakPseudoperfect",
    "ORACLE_BUDGET",
    "ENUMERATION_BUDGET",
    "membership_fast",
    "membership_oracle",
    "compute_nQ",
    "is_NQ_empty",
    "nq_profile",
    "enumerate_NQ",
    "count_NQ",
]

ORACLE_BUDGET = 10**5
ENUMERATION_BUDGET = 10**7


class NotWeakPseudoperfect(ValueError):
    pass


class FailingCondition(str, enum.Enum):
    I_DIVISIBILITY = "i_divisibility"  # p | Q but (p-1) does not divide Qn
    I_LOCAL_CONGRUENCE = "i_local_congruence"  # p | Q but Q/p + 1 is not 0 mod p
    II_FORBIDDEN_PRIME = "ii_forbidden_prime"  # p | n, p ∤ Q and (p-1) | Qn


@dataclass(frozen=True)
class MembershipVerdict:
    q: int
    n: int
    member: bool
    failing_condition: FailingCondition | None = None
    witness: int | None = None


@dataclass(frozen=True)
class NQProfile:
    q: int
    nQ: int
    empty: bool
    witness: int | None
    min_element: int | None


def membership_fast(
    q: int,
    n: int,
    q_factors: Factorization | None = None,
    n_factors: Factorization | None = None,
) -> MembershipVerdict:
    """Decide ``n in N_q`` from the primes of q and n.

    n belongs iff (i) every prime p | q has ``(p-1) | qn`` and
    ``q/p + 1 ≡ 0 (mod p)``, and (ii) no prime p | n with p ∤ q has
    ``(p-1) | qn``. The smallest failing prime is reported, condition (i)
    before (ii).
    """
    if q < 1 or n < 1:
        raise ValueError("q and n must be >= 1")
    qf = q_factors or factorize(q)
    nf = n_factors or factorize(n)
    qn = q * n
    for p in qf.primes:
        if qn % (p - 1):
            return MembershipVerdict(q, n, False, FailingCondition.I_DIVISIBILITY, p)
        if (q // p + 1) % p:
            return MembershipVerdict(q, n, False, FailingCondition.I_LOCAL_CONGRUENCE, p)
    for p in nf.primes:
        if q % p and qn % (p - 1) == 0:
            return MembershipVerdict(q, n, False, FailingCondition.II_FORBIDDEN_PRIME, p)
    return MembershipVerdict(q, n, True)


def membership_oracle(q: int, n: int, budget: int = ORACLE_BUDGET) -> bool:
    """Evaluate ``S_{qn}(qn) ≡ n (mod qn)`` by summing all qn terms."""
    if q < 1 or n < 1:
        raise ValueError("q and n must be >= 1")
    m = q * n
    if m > budget:
        raise ValueError(f"q*n = {m} exceeds the oracle budget {budget}")
    return power_sum_naive_mod(m, m, m, budget=budget) == n % m


def compute_nQ(q: int) -> int:
    """lcm of (p-1)/gcd(p-1, q) over primes p | q (1 for q = 1).

    >>> compute_nQ(47058)
    5
    """
    if q < 1 or not is_weak_primary_pseudoperfect(q):
        raise NotWeakPseudoperfect(f"{q} is not a weak primary pseudoperfect number")
    return _base_modulus(factorize(q), q)


def _base_modulus(qf: Factorization, q: int) -> int:
    return lcm(*((p - 1) // gcd(p - 1, q) for p in qf.primes))


def is_NQ_empty(q: int) -> tuple[bool, int | None]:
    """``(True, r)`` when some prime r | nQ with r ∤ q has ``(r-1) | q*nQ``
    (smallest such r), else ``(False, None)``."""
    nq = compute_nQ(q)
    for r in factorize(nq).primes:
        if q % r and (q * nq) % (r - 1) == 0:
            return True, r
    return False, None


def nq_profile(q: int) -> NQProfile:
    nq = compute_nQ(q)
    empty, witness = is_NQ_empty(q)
    return NQProfile(q=q, nQ=nq, empty=empty, witness=witness, min_element=None if empty else nq)


def enumerate_NQ(q: int, limit: int, budget: int = ENUMERATION_BUDGET) -> list[int]:
    """All n <= limit in N_q, ascending."""
    mask = _membership_mask(q, limit, budget)
    return [int(x) for x in np.flatnonzero(mask)]


def count_NQ(q: int, limit: int, budget: int = ENUMERATION_BUDGET) -> int:
    return int(np.count_nonzero(_membership_mask(q, limit, budget)))


def _membership_mask(q: int, limit: int, budget: int) -> np.ndarray:
    """Boolean array indexed by n in [0, limit]; True iff n in N_q.

    Condition (i) reduces to ``base | n`` with base the lcm of
    (p-1)/gcd(p-1, q); condition (ii) fails exactly on multiples of
    ``p(p-1)/gcd(p-1, q)`` for primes p ∤ q, which are struck out.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    if limit > budget:
        raise ValueError(f"limit {limit} exceeds the enumeration budget {budget}")
    mask = np.zeros(limit + 1, dtype=bool)
    if limit < 1:
        return mask
    qf = factorize(q)
    if any((q // p + 1) % p for p in qf.primes):
        return mask
    base = _base_modulus(qf, q)
    if base > limit:
        return mask
    mask[base::base] = True
    for p in primes_up_to(limit):
        p = int(p)
        if q % p == 0:
            continue
        step = p * ((p - 1) // gcd(p - 1, q))
        if step <= limit:
            mask[step::step] = False
    return mask
