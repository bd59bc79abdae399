"""Simulating the swap process, corner growth, and exponential LPP side by side."""

import numpy as np

from osplpp import RngStream, loe_cdf, sample_corner_growth, sample_lpp, sample_osp
from osplpp.stats import ks_two_sample

n, replicas = 6, 100_000
u = sample_osp(n, replicas, RngStream(1, 0)).coords
v = sample_corner_growth(n, replicas, RngStream(1, 1)).coords
lpp = sample_lpp(n, replicas, RngStream(1, 2))

print(f"n={n}, {replicas} replicas each")
print("mean last-swap times     U:", np.round(u.mean(0), 3))
print("mean corner times        V:", np.round(v.mean(0), 3))
print("mean point-to-line LPP   V:", np.round(lpp.V.mean(0), 3))
print("mean line-to-line LPP    W:", np.round(lpp.W.mean(0), 3))

for k in range(n - 1):
    print(ks_two_sample(u[:, k], v[:, k], f"U{k + 1} vs V{k + 1}").line())
print(ks_two_sample(u.max(1), lpp.V.max(1), "Umax vs Vmax").line())

# The absorbing time has a Laguerre-ensemble CDF; the ratio estimator avoids the
# normalising constant. Its weights are heavy-tailed, so the error bars widen
# quickly with n.
for t in (4.0, 8.0, 12.0):
    est, se = loe_cdf(n, t, 400_000, RngStream(1, 3))
    print(f"P(Umax <= {t:4.1f}): ensemble {est:.4f} +- {se:.4f}, simulated {(u.max(1) <= t).mean():.4f}")
