"""Release criteria, runnable from pytest and from ``psum selftest``.

Each check returns ``(passed, detail)``; :func:`run` times them and yields
one :class:`CriterionResult` per criterion.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

from .arith import factorize, primes_up_to
from .congruence import (
    KNOWN_PRIMARY_PSEUDOPERFECT,
    closed_prime_fixpoint,
    closed_squarefree_fixpoint,
    is_primary_pseudoperfect,
    search_pseudoperfect,
    special_set,
)
from .density import (
    Q9,
    complement_moduli,
    density_bounds,
    empirical_density,
    primitive_reduce,
    reciprocal_prime_pair_sum,
    render_decimal,
    theoretical_lower_bound,
    union_density_exact,
)
from .nq import compute_nQ, enumerate_NQ, is_NQ_empty, membership_fast, membership_oracle
from .powersum import power_sum_naive_mod, power_sum_prime_power_mod, power_sum_self_mod

NONEMPTY_Q = (1, 2, 6, 42, 1806, 47058, 2214502422, Q9)

# printed (lower, upper) density bounds
PRINTED_BOUNDS = {
    2: ("0.583874", "0.584604"),
    6: ("0.70405", "0.707659"),
    42: ("0.78215", "0.79399"),
    1806: ("0.7747", "0.812570"),
    47058: ("0.0560465", "0.0800567"),
    2214502422: ("0.0070565", "0.0800567"),
}

S50 = (
    10, 35, 235, 285, 335, 695, 2985, 3775, 5135, 8515, 8555, 8755, 17015,
    18145, 22005, 28355, 41255, 69305, 79655, 128255,
)  # fmt: skip
S50_NUM = 48357225625417447595522734010896225250266313
S50_DEN = 403167008827681283131141033075588326251331565


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number:>2}. {self.title} ({self.seconds:.1f}s): {self.detail}"


def special_set_reproduction():
    got = special_set(10**4)
    return got == [1, 2, 6, 42, 1806], f"special_set(10^4) = {got}"


def pseudoperfect_search():
    got = search_pseudoperfect(10**5, weak=False)
    bad = [n for n in KNOWN_PRIMARY_PSEUDOPERFECT if not is_primary_pseudoperfect(n)]
    ok = got == [2, 6, 42, 1806, 47058] and not bad
    return ok, f"search(10^5) = {got}; known values failing the identity: {bad}"


def nq_table():
    want = {1: 1, 2: 1, 6: 1, 42: 1, 1806: 1, 47058: 5, 2214502422: 5, Q9: 39607528021345872635}
    got = {q: compute_nQ(q) for q in want}
    wrong = {q: v for q, v in got.items() if v != want[q]}
    return not wrong, "all nQ match" if not wrong else f"mismatches: {wrong}"


def emptiness():
    verdicts = {q: is_NQ_empty(q) for q in (*NONEMPTY_Q, 52495396602)}
    ok = verdicts[52495396602] == (True, 5) and all(verdicts[q] == (False, None) for q in NONEMPTY_Q)
    return ok, f"52495396602 -> {verdicts[52495396602]}; others empty: {[q for q in NONEMPTY_Q if verdicts[q][0]]}"


def oracle_equivalence(seed: int = 20240, samples: int = 500):
    disagreements = []
    checked = 0
    for q in (1, 2, 6, 42):
        qf = factorize(q)
        for n in range(1, 2 * 10**4 // q + 1):
            checked += 1
            if membership_fast(q, n, q_factors=qf).member != membership_oracle(q, n):
                disagreements.append((q, n))
    rng = random.Random(seed)
    for _ in range(samples):
        q = rng.randint(1, 100)
        n = rng.randint(1, 10**4 // q)
        checked += 1
        if membership_fast(q, n).member != membership_oracle(q, n):
            disagreements.append((q, n))
    return not disagreements, f"{checked} pairs, disagreements: {disagreements[:5]}"


def closed_form_sweep():
    bad = []
    cases = 0
    for p in primes_up_to(3000).tolist():
        pt, t = p, 1
        while pt <= 3000:
            for m in range(2, 101):
                cases += 1
                if power_sum_prime_power_mod(m, p, t) != power_sum_naive_mod(m, pt, pt):
                    bad.append((m, p, t))
            pt *= p
            t += 1
    for m in range(1, 5001):
        cases += 1
        if power_sum_self_mod(m) != power_sum_naive_mod(m, m, m):
            bad.append((m, m))
    return not bad, f"{cases} comparisons, disagreements: {bad[:5]}"


def a229303_prefix():
    want = [1, 2, 4, 5, 7, 8, 11, 13, 14, 16, 17, 19, 22, 23, 25, 26, 28]
    got = enumerate_NQ(2, 28)
    return got == want, f"enumerate_NQ(2, 28) = {got}"


def exact_fraction():
    family = primitive_reduce(complement_moduli(47058, 50))
    value = union_density_exact(family, method="inclusion-exclusion")
    ok = family.moduli == S50 and value.numerator == S50_NUM and value.denominator == S50_DEN
    return ok, f"{len(family.moduli)} primitive moduli; density = {value.numerator}/{value.denominator}"


def printed_bounds(prime_count: int = 50, tail_cutoff: int = 10**7):
    notes = []
    ok = True
    b1 = density_bounds(1, prime_count, tail_cutoff)
    if not (b1.lower == b1.upper == Fraction(1, 2)):
        ok = False
        notes.append(f"Q=1: [{b1.lower}, {b1.upper}]")
    for q, (lo, up) in PRINTED_BOUNDS.items():
        b = density_bounds(q, prime_count, tail_cutoff)
        du = abs(b.upper - Fraction(up))
        dl = abs(b.lower - Fraction(lo))
        good = du <= Fraction(1, 10**5) and dl <= Fraction(5, 10**3)
        ok &= good
        notes.append(
            f"Q={q}: [{render_decimal(b.lower, 'down')}, {render_decimal(b.upper, 'up')}] "
            f"vs [{lo}, {up}] |dl|={float(dl):.2e} |du|={float(du):.2e}{'' if good else ' FAIL'}"
        )
    return ok, "; ".join(notes)


def empirical_sandwich(limit: int = 10**6):
    notes = []
    ok = True
    for q in (1, 2, 6, 42, 1806, 47058):
        b = density_bounds(q)
        e = empirical_density(q, limit)
        good = b.lower <= e <= b.upper
        ok &= good
        notes.append(f"Q={q}: {float(e):.6f}{'' if good else ' outside'}")
    return ok, "; ".join(notes)


def theoretical_bound_q9():
    value = theoretical_lower_bound(Q9, Q9 * compute_nQ(Q9))
    ok = Fraction(12, 10**54) < value < Fraction(1, 10**30)
    return ok, f"lower bound = {render_decimal(value, 'down')}"


def closure_fixpoints():
    primes = closed_prime_fixpoint(10**6)
    sqf = closed_squarefree_fixpoint(10**4)
    ok = primes == {2, 3, 7, 43} and sqf == {1, 2, 6, 42, 1806}
    return ok, f"primes {sorted(primes)}; square-free {sorted(sqf)}"


def constant_check(cutoff: int = 10**7):
    lo, hi = reciprocal_prime_pair_sum(cutoff)
    target = Fraction("0.7731566690497")
    return lo <= target <= hi, f"[{render_decimal(lo, 'down', 14)}, {render_decimal(hi, 'up', 14)}]"


CRITERIA = [
    (1, "special set S = {1,2,6,42,1806}", special_set_reproduction, 5),
    (2, "primary pseudoperfect search and known values", pseudoperfect_search, 10),
    (3, "nQ table", nq_table, 1),
    (4, "emptiness of N_Q", emptiness, 1),
    (5, "fast membership = brute-force oracle", oracle_equivalence, 60),
    (6, "closed forms = naive sums", closed_form_sweep, 60),
    (7, "A229303 prefix", a229303_prefix, 1),
    (8, "exact inclusion-exclusion fraction over S_50", exact_fraction, 30),
    (9, "published density bounds at 50 primes", printed_bounds, 300),
    (10, "empirical density inside bounds", empirical_sandwich, 300),
    (11, "theoretical lower bound for Q9", theoretical_bound_q9, 1),
    (12, "closure fixpoints", closure_fixpoints, 10),
    (13, "sum of 1/(p(p-1)) enclosure", constant_check, 30),
]


def run_criterion(number: int) -> CriterionResult:
    for num, title, check, _ in CRITERIA:
        if num == number:
            start = time.perf_counter()
            passed, detail = check()
            return CriterionResult(num, title, bool(passed), detail, time.perf_counter() - start)
    raise KeyError(number)


def run(numbers=None):
    for num, *_ in CRITERIA:
        if numbers is None or num in numbers:
            yield run_criterion(num)
