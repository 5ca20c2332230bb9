# coding: utf-8

# # Power sums modulo their own length
#
# S_m(k) = 1^m + 2^m + ... + k^m. We look at S_m(m) mod m, first by brute
# force and then through the closed forms for prime powers.

# In[1]:

from powersums import power_sum_naive_mod, power_sum_self_mod, special_set
from powersums.arith import factorize


# Brute force for small m. The values that come out as 1 are rare.

# In[2]:

for m in range(1, 13):
    print(m, power_sum_naive_mod(m, m, m))


# The closed-form route only needs the factorization of m, so it reaches
# numbers far too large to sum term by term.

# In[3]:

for m in (42, 1806, 47058, 2**61 - 1):
    print(m, factorize(m).factors, power_sum_self_mod(m))


# Scanning everything up to 10^4 leaves exactly five survivors.

# In[4]:

special_set(10**4)
