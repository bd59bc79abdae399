"""Exact comparison of the tableau and network generating functions.

Both sides are sums of products of 1/(x_k + d)^m.  Expanding each product
in partial fractions gives a finite, linearly independent basis, so equality
becomes a dictionary comparison over exact rationals.
"""

import time

from osplpp import genfun

for n in range(2, 6):
    start = time.perf_counter()
    report = genfun.verify_identity(n, genfun.CANONICAL)
    print(f"{report.line()}  ({time.perf_counter() - start:.2f}s)")

# The identity-ranking component at n = 4, put back over a common denominator.
form = genfun.accumulate_F(4)[(1, 2, 3)]
print("\nbasis terms:")
for line in genfun.format_form(form):
    print("  ", line)
print("recombined:", genfun.format_rational(*genfun.recombine(form)))

# For n = 6 the default is exact evaluation at random integer points; pass
# genfun.CANONICAL for the full partial-fraction comparison (about half a minute).
print()
print(genfun.verify_identity(6, genfun.EVALUATION, points=5, seed=1).line())
