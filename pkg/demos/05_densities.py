"""Joint densities at n = 4 computed three independent ways."""

import numpy as np

from osplpp import density_from_paths, density_V_recursive, pU4_closed_form
from osplpp.densities import pU4_total_mass

rng = np.random.default_rng(0)
print(f"{'point':>24} {'closed form':>13} {'swap paths':>13} {'growth paths':>13} {'recursion':>13}")
for u in rng.uniform(0, 3, size=(6, 3)):
    print(f"{np.array2string(u, precision=3):>24} {pU4_closed_form(*u):13.9f} "
          f"{density_from_paths(4, u, 'osp'):13.9f} {density_from_paths(4, u, 'growth'):13.9f} "
          f"{density_V_recursive(4, u):13.9f}")

print("\ntotal mass of the closed form:", pU4_total_mass())
