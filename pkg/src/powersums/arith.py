"""Integer plumbing: primality, factorization, divisors, CRT, sieves and
exact-ratio serialization.

Every value is a plain Python ``int`` (unbounded) or ``fractions.Fraction``;
nothing here rounds.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, isqrt

import numpy as np

__all__ = [
    "Certainty",
    "Factorization",
    "FactorizationIncomplete",
    "primality",
    "is_prime",
    "factorize",
    "factor_with_spf",
    "divisors_of",
    "divisor_count",
    "divisor_sum",
    "crt_combine",
    "lcm",
    "is_squarefree",
    "spf_sieve",
    "primes_up_to",
    "first_primes",
    "parse_natural",
    "ratio_to_json",
    "ratio_from_json",
]

_U64 = 1 << 64
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
TRIAL_DIVISION_BOUND = 10**6
RHO_ITERATION_CAP = 10**7


class Certainty(str, enum.Enum):
    PROVEN = "proven"
    PROBABLE = "probable"


class FactorizationIncomplete(ArithmeticError):
    """Raised when factoring exceeds the configured effort budget."""

    def __init__(self, n: int, unfactored: int):
        super().__init__(f"could not split {unfactored} (while factoring {n}) within budget")
        self.n = n
        self.unfactored = unfactored


def _strong_probable_prime(n: int, a: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas_probable_prime(n: int) -> bool:
    """Strong Lucas test with Selfridge's parameter choice (method A)."""
    r = isqrt(n)
    if r * r == n:
        return False
    D = 5
    while True:
        j = _jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
    P, Q = 1, (1 - D) // 4

    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    inv2 = (n + 1) // 2
    U, V, Qk = 1, P, Q % n
    for bit in bin(d)[3:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = (P * U + V) * inv2 % n, (D * U + P * V) * inv2 % n
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        if V == 0:
            return True
        Qk = Qk * Qk % n
    return False


def primality(n: int) -> tuple[bool, Certainty]:
    """Return ``(is_prime, certainty)``.

    Below 2**64 the Miller-Rabin bases 2..37 are a proof. Above, a
    Baillie-PSW test is used and positive answers are only probable.
    """
    if n < 2:
        return False, Certainty.PROVEN
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p, Certainty.PROVEN
    if n < _U64:
        return all(_strong_probable_prime(n, a) for a in _SMALL_PRIMES), Certainty.PROVEN
    if not _strong_probable_prime(n, 2):
        return False, Certainty.PROVEN
    if not _strong_lucas_probable_prime(n):
        return False, Certainty.PROVEN
    return True, Certainty.PROBABLE


def is_prime(n: int) -> bool:
    return primality(n)[0]


@dataclass(frozen=True)
class Factorization:
    """Prime factorization with ascending primes."""

    factors: tuple[tuple[int, int], ...]
    certainty: Certainty = Certainty.PROVEN

    @property
    def value(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)


def _brent_rho(n: int, c: int, cap: int) -> int | None:
    """One Brent-rho attempt with f(x) = x^2 + c; returns a nontrivial
    factor or None. Deterministic for fixed (n, c)."""
    y, m, g, r, q = 2, 128, 1, 1, 1
    x = ys = y
    steps = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += m
        r *= 2
        steps += r
        if steps > cap:
            return None
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
            if g > 1:
                break
    return g if g != n else None


def _split(n: int, cap: int) -> int | None:
    for c in range(1, 21):
        f = _brent_rho(n, c, cap)
        if f is not None:
            return f
    return None


@lru_cache(maxsize=4096)
def factorize(
    n: int,
    trial_bound: int = TRIAL_DIVISION_BOUND,
    rho_cap: int = RHO_ITERATION_CAP,
) -> Factorization:
    """Factor ``n >= 1`` by trial division up to ``trial_bound`` followed by
    Brent's rho. Raises :class:`FactorizationIncomplete` rather than
    returning a partial answer.

    >>> factorize(52495396602).primes
    (2, 3, 11, 17, 101, 149, 3109)
    """
    if n < 1:
        raise ValueError("factorize requires n >= 1")
    counts: dict[int, int] = {}
    m = n
    for p in (2, 3, 5):
        while m % p == 0:
            counts[p] = counts.get(p, 0) + 1
            m //= p
    # wheel mod 30 for the remaining trial divisors
    p, steps = 7, (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    checkpoint = 1000
    while p <= trial_bound and p * p <= m:
        while m % p == 0:
            counts[p] = counts.get(p, 0) + 1
            m //= p
        p += steps[i]
        i = (i + 1) % 8
        if p > checkpoint:
            checkpoint *= 10
            if primality(m)[0]:
                break

    certainty = Certainty.PROVEN
    stack = [m] if m > 1 else []
    while stack:
        x = stack.pop()
        if x < p * p:
            # every factor below p has been removed, so x is prime
            counts[x] = counts.get(x, 0) + 1
            continue
        prime, cert = primality(x)
        if prime:
            counts[x] = counts.get(x, 0) + 1
            if cert is Certainty.PROBABLE:
                certainty = Certainty.PROBABLE
            continue
        r = isqrt(x)
        if r * r == x:
            stack += [r, r]
            continue
        f = _split(x, rho_cap)
        if f is None:
            raise FactorizationIncomplete(n, x)
        stack += [f, x // f]
    return Factorization(tuple(sorted(counts.items())), certainty)


def spf_sieve(limit: int) -> np.ndarray:
    """Smallest-prime-factor table ``spf[k]`` for ``0 <= k <= limit``
    (``spf[0] = 0``, ``spf[1] = 1``)."""
    dtype = np.int32 if limit < 2**31 else np.int64
    spf = np.zeros(limit + 1, dtype=dtype)
    if limit >= 1:
        spf[1] = 1
    if limit >= 2:
        spf[2::2] = 2
    for p in range(3, isqrt(limit) + 1, 2):
        if spf[p] == 0:
            block = spf[p * p :: 2 * p]
            block[block == 0] = p
    rest = np.flatnonzero(spf == 0)
    spf[rest[rest > 1]] = rest[rest > 1]
    return spf


def primes_up_to(limit: int) -> np.ndarray:
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for p in range(3, isqrt(limit) + 1, 2):
        if sieve[p]:
            sieve[p * p :: 2 * p] = False
    return np.flatnonzero(sieve).astype(np.int64)


def first_primes(count: int) -> list[int]:
    """The first ``count`` primes in ascending order."""
    if count <= 0:
        return []
    bound = 16
    while True:
        ps = primes_up_to(bound)
        if len(ps) >= count:
            return [int(p) for p in ps[:count]]
        bound *= 2


def factor_with_spf(n: int, spf: np.ndarray) -> Factorization:
    """Factor ``n`` using a precomputed smallest-prime-factor table."""
    factors = []
    while n > 1:
        p = int(spf[n])
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        factors.append((p, e))
    return Factorization(tuple(factors))


def divisors_of(f: Factorization) -> list[int]:
    """All positive divisors of the factored value, ascending."""
    divs = [1]
    for p, e in f.factors:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def divisor_count(f: Factorization) -> int:
    out = 1
    for _, e in f.factors:
        out *= e + 1
    return out


def divisor_sum(f: Factorization) -> int:
    out = 1
    for p, e in f.factors:
        out *= (p ** (e + 1) - 1) // (p - 1)
    return out


def lcm(*values: int) -> int:
    return reduce(lambda a, b: a // gcd(a, b) * b, values, 1)


def is_squarefree(n: int) -> bool:
    return factorize(n).is_squarefree


def crt_combine(residues) -> int:
    """Combine ``[(r, m), ...]`` with pairwise coprime moduli into the
    unique ``x < prod(m)``.

    >>> crt_combine([(4, 5), (2, 3), (1, 2)])
    29
    """
    x, M = 0, 1
    for r, m in residues:
        if m < 1:
            raise ValueError(f"modulus must be positive, got {m}")
        if not 0 <= r < m:
            raise ValueError(f"residue {r} out of range for modulus {m}")
        if gcd(M, m) != 1:
            raise ValueError(f"moduli are not pairwise coprime (modulus {m})")
        # x + M*t ≡ r (mod m)
        t = (r - x) * pow(M, -1, m) % m if m > 1 else 0
        x += M * t
        M *= m
    return x


def parse_natural(text) -> int:
    """Parse a non-negative decimal integer, rejecting signs and floats."""
    if isinstance(text, bool):
        raise ValueError("not a natural number")
    if isinstance(text, int):
        value = text
    else:
        s = str(text).strip().replace("_", "")
        if not s.isdigit():
            raise ValueError(f"not a natural number: {text!r}")
        value = int(s)
    if value < 0:
        raise ValueError(f"not a natural number: {text!r}")
    return value


def ratio_to_json(r: Fraction) -> dict:
    r = Fraction(r)
    return {"num": str(r.numerator), "den": str(r.denominator)}


def ratio_from_json(obj: dict) -> Fraction:
    return Fraction(int(obj["num"]), int(obj["den"]))
