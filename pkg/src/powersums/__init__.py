"""Exact computations around the congruences S_{Qn}(Qn) ≡ n (mod Qn).

Submodules: :mod:`.arith` (integers), :mod:`.powersum`, :mod:`.congruence`
(pseudoperfect numbers and closure sets), :mod:`.nq` (the sets N_Q),
:mod:`.density` (density bounds) and :mod:`.cli`.
"""

from .arith import crt_combine, divisors_of, factorize, is_prime, primality
from .congruence import (
    KNOWN_PRIMARY_PSEUDOPERFECT,
    closed_prime_fixpoint,
    closed_squarefree_fixpoint,
    is_primary_pseudoperfect,
    is_weak_primary_pseudoperfect,
    search_pseudoperfect,
    special_set,
)
from .density import (
    complement_moduli,
    density_bounds,
    empirical_density,
    primitive_reduce,
    tail_upper_bound,
    theoretical_lower_bound,
    union_density_exact,
)
from .nq import compute_nQ, enumerate_NQ, is_NQ_empty, membership_fast, membership_oracle, nq_profile
from .powersum import (
    power_sum_fast_mod,
    power_sum_naive_mod,
    power_sum_prime_power_mod,
    power_sum_self_mod,
)

__version__ = "0.1.0"
