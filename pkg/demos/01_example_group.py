#!/usr/bin/env python
# coding: utf-8

# # The group J
#
# J is a 3-group of order 81 and maximal class.  Every maximal subgroup is
# powerful, so J is M_1, yet the index identity |J| = |mho_1(J)| |Omega_1(J)|
# fails.  This notebook walks through the numbers.

# In[1]:

from pcgroups import agemo, builtin, is_isomorphic, maximal_subgroups, omega
from pcgroups.properties import build_report, conditions, is_powerful


# The presentation, as stored in PCP text.  Commutators follow [x,y] = x^-1 y^-1 x y.

# In[2]:

entry = builtin("J")
print(entry.presentation.to_text())
J = entry.group
a1, a2, a3, a4 = J.gens()


# A few products, to get a feel for collection.

# In[3]:

print(a2 * a1, "|", a1 ** 3, "|", a2 ** 3)
print("orders:", [g.order() for g in J.gens()])


# ## Omega and agemo
#
# mho_1 is generated by cubes, Omega_1 by elements of order 3.

# In[4]:

mho, om = agemo(J, 1), omega(J, 1)
print("|mho_1| =", mho.order, " |Omega_1| =", om.order, " product =", mho.order * om.order)


# Level by level: (power condition, omega condition, index condition).

# In[5]:

conditions(J)


# ## Maximal subgroups
#
# Four of them.  Compare each against the abelian C3 x C9 and the metacyclic C9:C3.

# In[6]:

C3xC9 = builtin("C3xC9").group
C9C3 = builtin("C9:C3").group
for M in maximal_subgroups(J):
    kind = "C3xC9" if is_isomorphic(M, C3xC9) else "C9:C3" if is_isomorphic(M, C9C3) else "?"
    print(M.order, kind, "powerful" if is_powerful(M) else "not powerful")


# The full report.

# In[7]:

print(build_report(J, entry.id).to_record())
