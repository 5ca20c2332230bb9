"""Asymptotic density of N_Q.

For Q with N_Q non-empty, the complement of N_Q inside the multiples of
nQ is a union of progressions {K*t}, one modulus t per prime p ∤ Q and
divisor d | Q with d | p-1:

    t = (nQ / gcd(nQ, p(p-1)/d)) * p(p-1)/d.

Truncating to the first few primes gives an exact finite union (evaluated
by inclusion-exclusion over the lcm lattice) and hence an upper bound on
the density; a rigorous bound on the discarded primes gives the lower one.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from decimal import ROUND_CEILING, ROUND_FLOOR, Decimal, localcontext
from fractions import Fraction
from math import gcd

import mpmath
import numpy as np

from .arith import (
    divisors_of,
    factorize,
    first_primes,
    primes_up_to,
    ratio_to_json,
)
from .nq import compute_nQ, count_NQ, is_NQ_empty

__all__ = [
    "ProgressionFamily",
    "DensityBounds",
    "EmptySolutionSet",
    "DensityInfeasible",
    "InclusionExclusionBudget",
    "IE_NODE_BUDGET",
    "DEFAULT_PRIME_COUNT",
    "DEFAULT_TAIL_CUTOFF",
    "Q9",
    "complement_moduli",
    "primitive_reduce",
    "union_density_exact",
    "union_density_interval",
    "tail_upper_bound",
    "density_bounds",
    "empirical_density",
    "theoretical_lower_bound",
    "reciprocal_prime_pair_sum",
    "render_decimal",
]

IE_NODE_BUDGET = 2**24
DEFAULT_PRIME_COUNT = 50
DEFAULT_TAIL_CUTOFF = 10**7
# fixed-point resolution for the upward-rounded tail sums
TAIL_BITS = 160
Q9 = 8490421583559688410706771261086
# above this nQ the finite-prime bounds are not attempted
_MAX_BOUNDS_NQ = 10**6


class EmptySolutionSet(ValueError):
    pass


class DensityInfeasible(ValueError):
    pass


class InclusionExclusionBudget(RuntimeError):
    pass


class Tag(str, enum.Enum):
    W = "W"  # nQ = 1 or generic nQ
    W1 = "W1"  # nQ = 5 and 5 | p(p-1)
    W2 = "W2"  # nQ = 5 and 5 ∤ p(p-1)


@dataclass(frozen=True)
class ProgressionFamily:
    """Union of progressions {K*t : K >= 1} over the moduli t.

    ``provenance`` maps each modulus to the (d, p, tag) triples producing it.
    """

    moduli: tuple[int, ...]
    provenance: dict = field(default_factory=dict, compare=False)
    q: int | None = None

    def contains(self, n: int) -> bool:
        return any(n % t == 0 for t in self.moduli)


@dataclass(frozen=True)
class DensityBounds:
    q: int
    nQ: int
    lower: Fraction
    upper: Fraction
    union_exact: Fraction
    tail: Fraction
    prime_cutoff_index: int
    tail_cutoff: int
    tail_method: str
    moduli: tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {
            "q": str(self.q),
            "nQ": str(self.nQ),
            "lower": ratio_to_json(self.lower),
            "upper": ratio_to_json(self.upper),
            "lower_decimal": render_decimal(self.lower, "down"),
            "upper_decimal": render_decimal(self.upper, "up"),
            "union_exact": ratio_to_json(self.union_exact),
            "tail": ratio_to_json(self.tail),
            "prime_cutoff_index": self.prime_cutoff_index,
            "tail_cutoff": str(self.tail_cutoff),
            "tail_method": self.tail_method,
            "primitive_moduli": [str(t) for t in self.moduli],
        }


def render_decimal(x: Fraction, direction: str, digits: int = 7) -> str:
    """Round to ``digits`` significant digits, toward -inf ("down") or
    +inf ("up")."""
    x = Fraction(x)
    if x == 0:
        return "0"
    rounding = ROUND_FLOOR if direction == "down" else ROUND_CEILING
    with localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = rounding
        value = Decimal(x.numerator) / Decimal(x.denominator)
    return format(value, "f") if abs(value.adjusted()) < 20 else str(value)


def _require_nonempty(q: int) -> int:
    nq = compute_nQ(q)
    empty, witness = is_NQ_empty(q)
    if empty:
        raise EmptySolutionSet(f"N_{q} is empty (witness prime {witness})")
    return nq


def complement_moduli(q: int, prime_count: int) -> ProgressionFamily:
    """Progression moduli covering nQ*N minus N_q, from the first
    ``prime_count`` primes. Not reduced; see :func:`primitive_reduce`."""
    if prime_count < 1:
        raise ValueError("prime_count must be >= 1")
    nq = _require_nonempty(q)
    divs = divisors_of(factorize(q))
    provenance: dict[int, list] = {}
    for p in first_primes(prime_count):
        if q % p == 0:
            continue
        for d in divs:
            if d > p - 1:
                break
            if (p - 1) % d:
                continue
            base = p * (p - 1) // d
            t = nq // gcd(nq, base) * base
            if nq == 5:
                tag = Tag.W1 if (p * (p - 1)) % 5 == 0 else Tag.W2
            else:
                tag = Tag.W
            provenance.setdefault(t, []).append((d, p, tag.value))
    return ProgressionFamily(tuple(sorted(provenance)), provenance, q)


def primitive_reduce(family: ProgressionFamily) -> ProgressionFamily:
    """Drop every modulus that is a multiple of another (smaller) one."""
    kept = _primitive(family.moduli)
    prov = {t: family.provenance.get(t, []) for t in kept}
    return ProgressionFamily(tuple(kept), prov, family.q)


def _inclusion_exclusion(moduli, budget, ceiling):
    """Signed lcm lattice: returns ``(terms, dropped)`` where ``terms`` maps
    lcm -> coefficient and ``dropped`` maps lcm -> coefficient of subtrees
    cut off because their lcm exceeded ``ceiling``."""
    terms: dict[int, int] = {}
    dropped: dict[int, int] = {}
    visited = 0
    for t in moduli:
        new: dict[int, int] = {t: 1}
        for l, c in terms.items():
            m = l // gcd(l, t) * t
            new[m] = new.get(m, 0) - c
        visited += len(new)
        if visited > budget:
            raise InclusionExclusionBudget(f"inclusion-exclusion exceeded {budget} lattice nodes")
        for m, c in new.items():
            if c == 0:
                continue
            if ceiling is not None and m > ceiling:
                dropped[m] = dropped.get(m, 0) + c
                continue
            c += terms.get(m, 0)
            if c:
                terms[m] = c
            else:
                terms.pop(m, None)
    return terms, dropped


def _sum_reciprocals(terms: dict[int, int]) -> Fraction:
    if not terms:
        return Fraction(0)
    common = 1
    for l in terms:
        common = common // gcd(common, l) * l
    return Fraction(sum(c * (common // l) for l, c in terms.items()), common)


def _valuation(a: int, p: int) -> int:
    e = 0
    while a % p == 0:
        a //= p
        e += 1
    return e


def _primitive(values) -> tuple[int, ...]:
    kept: list[int] = []
    for t in sorted(set(values)):
        if not any(t % s == 0 for s in kept):
            kept.append(t)
    return tuple(kept)


def _avoid_density(moduli: tuple[int, ...], memo: dict, primes_of) -> Fraction:
    """Density of the integers divisible by no modulus (moduli primitive).

    Splits on the prime p shared by the most moduli: an integer with
    p-adic valuation e is divisible by a iff v_p(a) <= e and the p-free
    part of a divides it, and the p-free part is independent of e.
    """
    if not moduli:
        return Fraction(1)
    if moduli[0] == 1:
        return Fraction(0)
    if len(moduli) == 1:
        return 1 - Fraction(1, moduli[0])
    hit = memo.get(moduli)
    if hit is not None:
        return hit
    counts: dict[int, int] = {}
    for a in moduli:
        for p in primes_of(a):
            counts[p] = counts.get(p, 0) + 1
    p = max(counts, key=lambda x: (counts[x], x))
    vals = [_valuation(a, p) for a in moduli]
    top = max(vals)
    total = Fraction(0)
    for e in range(top + 1):
        rest = _primitive(a // p**v for a, v in zip(moduli, vals) if v <= e)
        weight = Fraction(p - 1, p ** (e + 1)) if e < top else Fraction(1, p**top)
        total += weight * _avoid_density(rest, memo, primes_of)
    memo[moduli] = total
    return total


def union_density_exact(
    family: ProgressionFamily,
    node_budget: int = IE_NODE_BUDGET,
    method: str = "auto",
) -> Fraction:
    """Exact density of the union of {K*t}.

    ``method="inclusion-exclusion"`` sums (-1)^(|T|+1)/lcm(T) over subsets,
    merging subsets with equal lcm; ``method="prime-split"`` conditions on
    prime valuations one prime at a time. ``"auto"`` uses
    inclusion-exclusion up to 24 moduli and prime splitting beyond.

    >>> union_density_exact(ProgressionFamily((2, 3)))
    Fraction(2, 3)
    """
    moduli = _primitive(family.moduli)
    if method == "auto":
        method = "inclusion-exclusion" if len(moduli) <= 24 else "prime-split"
    if method == "inclusion-exclusion":
        terms, _ = _inclusion_exclusion(moduli, node_budget, None)
        return _sum_reciprocals(terms)
    if method == "prime-split":
        cache: dict[int, tuple[int, ...]] = {}

        def primes_of(a: int) -> tuple[int, ...]:
            if a not in cache:
                cache[a] = factorize(a).primes
            return cache[a]

        return 1 - _avoid_density(moduli, {}, primes_of)
    raise ValueError(f"unknown method {method!r}")


def union_density_interval(
    family: ProgressionFamily,
    lcm_ceiling: int,
    node_budget: int = IE_NODE_BUDGET,
) -> tuple[Fraction, Fraction]:
    """Rigorous enclosure of the union density when lattice nodes with lcm
    above ``lcm_ceiling`` are pruned.

    A pruned node with lcm L and coefficient c stands for a subtree whose
    total is c times the density of a subset of L*N, i.e. lies between 0
    and c/L.
    """
    terms, dropped = _inclusion_exclusion(sorted(family.moduli), node_budget, lcm_ceiling)
    core = _sum_reciprocals(terms)
    pos = _sum_reciprocals({l: c for l, c in dropped.items() if c > 0})
    neg = _sum_reciprocals({l: c for l, c in dropped.items() if c < 0})
    return core + neg, core + pos


def _ceil_fixed(num: int, den: int) -> int:
    return -((-num << TAIL_BITS) // den)


def _floor_fixed(num: int, den: int) -> int:
    return (num << TAIL_BITS) // den


def tail_upper_bound(
    q: int,
    prime_count: int,
    extension_cutoff: int = DEFAULT_TAIL_CUTOFF,
    method: str = "per-divisor",
) -> Fraction:
    """Upper bound on the density still missing after the first
    ``prime_count`` primes.

    ``"per-divisor"`` sums d/(p(p-1)) over primes
    ``p_{prime_count} < p <= extension_cutoff`` with p ∤ q and over d | q
    with d | p-1 (that inner sum is sigma(gcd(q, p-1))). Past the cutoff,
    p = kd+1 with k >= k0 and ``sum 1/(k(kd+1)) <= 1/(d (k0-1))``.

    ``"per-prime"`` uses that the progressions of one prime p are all
    contained in the one with d = gcd(q, p-1), so each prime costs only
    1/t for that modulus t; past the cutoff, gcd(q, p-1) = sum of phi(d)
    over d | gcd gives ``sum_d phi(d) / (d^2 (k0-1))``.

    Every term before the cutoff is rounded up to a multiple of
    2**-TAIL_BITS, so the result is a rigorous upper bound.
    """
    if method not in ("per-divisor", "per-prime"):
        raise ValueError(f"unknown tail method {method!r}")
    ps = first_primes(prime_count)
    last = ps[-1]
    if extension_cutoff < last:
        raise ValueError("extension_cutoff must be >= the last included prime")
    qf = factorize(q)
    divs = divisors_of(qf)
    nq = _require_nonempty(q)
    # with 2 among the moduli, p(p-1)/d is even for odd p and odd d, so
    # those progressions are already inside the finite union
    skip_odd_d = nq == 1 and q % 2 == 1 and 2 in primitive_reduce(complement_moduli(q, prime_count)).moduli
    counted = [d for d in divs if not (skip_odd_d and d % 2)]

    primes = primes_up_to(extension_cutoff)
    primes = primes[primes > last]
    if q < 2**62:
        gs = np.gcd(primes - 1, np.int64(q)).tolist()
    else:
        gs = [gcd(p - 1, q) for p in primes.tolist()]

    sigma_cache: dict[int, int] = {}
    acc = 0
    for p, g in zip(primes.tolist(), gs):
        if q % p == 0:
            continue
        if method == "per-divisor":
            if g not in sigma_cache:
                sigma_cache[g] = sum(d for d in counted if g % d == 0)
            if sigma_cache[g]:
                acc += _ceil_fixed(sigma_cache[g], p * (p - 1))
        elif not (skip_odd_d and g % 2):
            base = p * (p - 1) // g
            acc += _ceil_fixed(1, nq // gcd(nq, base) * base)
    finite = Fraction(acc, 1 << TAIL_BITS)

    remainder = Fraction(0)
    P = extension_cutoff
    for d in counted:
        k0m1 = (P - 1) // d
        if k0m1 >= 1:
            tail_d = Fraction(1, d * k0m1)
        else:
            tail_d = Fraction(1, d + 1) + Fraction(1, d)
        if method == "per-prime":
            tail_d *= Fraction(_totient(d), d)
        remainder += tail_d
    return finite + remainder


def _totient(n: int) -> int:
    out = n
    for p in factorize(n).primes:
        out -= out // p
    return out


def density_bounds(
    q: int,
    prime_count: int = DEFAULT_PRIME_COUNT,
    extension_cutoff: int = DEFAULT_TAIL_CUTOFF,
    node_budget: int = IE_NODE_BUDGET,
    tail_method: str = "per-divisor",
) -> DensityBounds:
    """Lower and upper bounds on the density of N_q.

    upper = 1/nQ - (exact density of the finite union);
    lower = upper - :func:`tail_upper_bound`.
    """
    nq = _require_nonempty(q)
    if nq > _MAX_BOUNDS_NQ:
        raise DensityInfeasible(
            f"nQ = {nq}: the finite-prime bounds are out of reach; use 1/nQ and theoretical_lower_bound"
        )
    family = primitive_reduce(complement_moduli(q, prime_count))
    union = union_density_exact(family, node_budget)
    upper = Fraction(1, nq) - union
    tail = tail_upper_bound(q, prime_count, extension_cutoff, tail_method)
    lower = max(Fraction(0), upper - tail)
    return DensityBounds(
        q=q,
        nQ=nq,
        lower=lower,
        upper=upper,
        union_exact=union,
        tail=tail,
        prime_cutoff_index=prime_count,
        tail_cutoff=extension_cutoff,
        tail_method=tail_method,
        moduli=family.moduli,
    )


def empirical_density(q: int, limit: int) -> Fraction:
    """``|N_q ∩ [1, limit]| / limit``."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    return Fraction(count_NQ(q, limit), limit)


def _mpf_to_fraction(x) -> Fraction:
    man, exp = mpmath.mpf(x).man_exp
    return Fraction(int(man)) * Fraction(2) ** int(exp)


def theoretical_lower_bound(q: int, y: int, prec: int = 128) -> Fraction:
    """``(1/(q nQ)) * (0.5/log y - 2 tau(q nQ)/y)`` as a guaranteed lower
    bound (log y enclosed with interval arithmetic, lower end kept).

    Requires ``y > 285`` and ``y >= q nQ``: every d | q nQ then has
    y/d >= 1, and ``sum_{t > x} 1/t^2 < 2/x`` holds for all x >= 1. The
    value may be negative when y is too small for the main term to dominate.
    """
    nq = _require_nonempty(q)
    qn = q * nq
    if y <= 285 or y < qn:
        raise ValueError(f"y must exceed 285 and be at least q*nQ = {qn}")
    exps: dict[int, int] = {}
    for f in (factorize(q), factorize(nq)):
        for p, e in f:
            exps[p] = exps.get(p, 0) + e
    tau = 1
    for e in exps.values():
        tau *= e + 1
    ctx = mpmath.iv
    old = ctx.prec
    ctx.prec = prec
    try:
        main = ctx.mpf("0.5") / ctx.log(ctx.mpf(y))
        low = _mpf_to_fraction(main.a)
    finally:
        ctx.prec = old
    return (low - Fraction(2 * tau, y)) / qn


def reciprocal_prime_pair_sum(cutoff: int = DEFAULT_TAIL_CUTOFF) -> tuple[Fraction, Fraction]:
    """Enclosure of ``sum over all primes p of 1/(p(p-1))``.

    Terms for p <= cutoff are rounded down and up; the rest is at most
    ``sum_{n > cutoff} 1/(n(n-1)) = 1/cutoff``.
    """
    lo = hi = 0
    for p in primes_up_to(cutoff).tolist():
        den = p * (p - 1)
        lo += _floor_fixed(1, den)
        hi += _ceil_fixed(1, den)
    scale = 1 << TAIL_BITS
    return Fraction(lo, scale), Fraction(hi, scale) + Fraction(1, cutoff)
