# coding: utf-8

# # The sets N_Q
#
# n is in N_Q when S_{Qn}(Qn) ≡ n (mod Qn). Membership can be read off the
# primes of Q and n; here we compare that rule with the raw congruence.

# In[1]:

import numpy as np

from powersums import compute_nQ, enumerate_NQ, is_NQ_empty, membership_fast, membership_oracle


# In[2]:

print(enumerate_NQ(2, 40))
print(membership_fast(2, 3))


# Fast rule against brute force for Q = 6.

# In[3]:

ns = np.arange(1, 2000)
fast = np.array([membership_fast(6, int(n)).member for n in ns])
slow = np.array([membership_oracle(6, int(n)) for n in ns])
print("disagreements:", int((fast != slow).sum()), "members:", int(fast.sum()))


# Every element is a multiple of nQ, and one primary pseudoperfect number
# has no solutions at all.

# In[4]:

for q in (1, 2, 6, 42, 1806, 47058, 2214502422, 52495396602):
    print(q, compute_nQ(q), is_NQ_empty(q))
