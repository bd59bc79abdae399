"""Sorting networks, staircase tableaux, and the Edelman-Greene correspondence.

Run with ``python demos/01_networks_and_tableaux.py``.
"""

from collections import Counter

from osplpp import (SortingNetwork, eg_inverse_search, eg_map, enumerate_sorting_networks, enumerate_syt,
                    network_params, staircase, tableau_params)

# Both families have the same size for every order n.
for n in range(2, 6):
    print(f"n={n}: {sum(1 for _ in enumerate_syt(staircase(n)))} tableaux, "
          f"{sum(1 for _ in enumerate_sorting_networks(n))} sorting networks")

# A reduced word for the reversal of 1..6. Each swap exchanges an increasing
# adjacent pair; "last" records when each bond fires for the final time.
s = SortingNetwork((5, 1, 2, 4, 1, 3, 5, 4, 2, 1, 5, 3, 2, 4, 3), 6)
sp = network_params(s)
print("\nnetwork:", s)
print("last swap steps:", sp.last, " ranking:", sp.pi)
print("out-degrees along the path:", sp.deg)
print("generating factor:", sp.factor)

# The tableau that Edelman-Greene sends to this network. Its corner-completion
# steps coincide with the last-swap steps, although the factors differ.
t = eg_inverse_search(s)
tp = tableau_params(t)
print("\ntableau rows:", t.rows)
print("corner steps:", tp.cor, " ranking:", tp.sigma)
print("generating factor:", tp.factor)
assert eg_map(t) == s and tp.cor == sp.last

# Sorting by ranking gives equally sized classes on both sides.
sig = Counter(tableau_params(t).sigma for t in enumerate_syt(staircase(5)))
pi = Counter(network_params(s).pi for s in enumerate_sorting_networks(5))
print("\nn=5 class sizes agree for every ranking:", sig == pi)
