#!/usr/bin/env python
# coding: utf-8

# # Where the power conditions break
#
# Three fixtures show the limits: a 2-group of order 64 failing everything
# at level 1, an M_2 group of order 81 failing the omega condition, and six
# M_2 groups of order 2187 failing the power and index conditions.

# In[1]:

from pcgroups.corpus import DATA_DIR, load_catalog
from pcgroups.properties import cond_omega_witness, cond_power_witness, conditions, is_Mi

fixtures = {e.short_id: e for e in load_catalog(DATA_DIR / "fixtures", "fixture")}
sorted(fixtures)


# ## 64-31
#
# p = 2.  The witnesses are elements that break each condition.

# In[2]:

G = fixtures["64-31"].group
print(conditions(G)[1])
w = cond_power_witness(G, 1)
print("p-th power product not a p-th power:", G.elem(w))
w = cond_omega_witness(G, 1)
print("element of Omega_1 with order > 2:", G.elem(w), "order", G.element_order(w))


# ## 81-7
#
# M_1 fails, M_2 holds, and a product of two elements of order 3 has order 9.

# In[3]:

G = fixtures["81-7"].group
print("M_1:", is_Mi(G, 1), " M_2:", is_Mi(G, 2))
print(conditions(G))


# ## The order 2187 fixtures
#
# These take a few seconds each: the maximal subgroups of maximal subgroups
# have order 243.

# In[4]:

for gid in ("2187-83", "2187-84", "2187-85", "2187-90", "2187-91", "2187-92"):
    G = fixtures[gid].group
    print(gid, "M_2:", is_Mi(G, 2), " level 1:", conditions(G)[1])
