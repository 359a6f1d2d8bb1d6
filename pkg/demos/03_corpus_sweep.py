#!/usr/bin/env python
# coding: utf-8

# # A sweep over the bundled catalog
#
# Tabulate which 3-groups are M_1, powerful or regular, then run a couple of
# verification suites the way the CLI does.

# In[1]:

from collections import Counter

import numpy as np

from pcgroups.corpus import DATA_DIR, load_catalog
from pcgroups.properties import conditions, is_Mi, is_powerful, is_regular
from pcgroups.suites import run_suite

groups = [e for e in load_catalog(DATA_DIR / "catalog" / "3-groups") if e.order <= 243]
len(groups)


# Counts by order.  Regularity is only searched up to 3^5 by default.

# In[2]:

rows = []
for e in groups:
    G = e.group
    rows.append((e.order, is_powerful(G), is_Mi(G, 1), bool(is_regular(G))))
table = np.array(rows, dtype=int)
for n in np.unique(table[:, 0]):
    sel = table[table[:, 0] == n]
    print(f"order {n:>4}: {len(sel):>3} groups, powerful {sel[:, 1].sum():>3}, M_1 {sel[:, 2].sum():>3}, regular {sel[:, 3].sum():>3}")


# Which M_1 groups miss the index condition at some level?

# In[3]:

misses = Counter()
for e in groups:
    G = e.group
    if is_Mi(G, 1):
        for i, (_, _, c3) in conditions(G).items():
            if not c3:
                misses[e.short_id] += 1
misses


# The same question as a suite, plus the powerful-criterion suite.

# In[4]:

for name in ("C", "B"):
    r = run_suite(name, groups)
    print(name, r.status, r.checked, len(r.violations), r.details.get("exceptions", ""))
