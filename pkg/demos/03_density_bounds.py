# coding: utf-8

# # How dense is N_Q?
#
# Inside the multiples of nQ the complement of N_Q is a union of
# progressions. Its exact density over the first primes gives an upper
# bound; a bound on the remaining primes gives a lower one.

# In[1]:

from powersums import density_bounds, empirical_density
from powersums.density import complement_moduli, primitive_reduce, render_decimal


# The twenty primitive moduli for Q = 47058.

# In[2]:

family = primitive_reduce(complement_moduli(47058, 50))
print(family.moduli)


# Bounds against counts up to 10^6. The tail sum uses primes up to 10^6
# here to keep the demo quick.

# In[3]:

for q in (1, 2, 6, 42, 1806, 47058):
    b = density_bounds(q, 50, 10**6)
    e = empirical_density(q, 10**6)
    print(q, render_decimal(b.lower, "down"), float(e), render_decimal(b.upper, "up"))


# More primes tighten the upper end.

# In[4]:

for k in (10, 20, 30, 40, 50):
    b = density_bounds(6, k, 10**5)
    print(k, render_decimal(b.upper, "up"))
