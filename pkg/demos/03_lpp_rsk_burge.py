"""LPP tableaux, RSK and Burge through Greene maxima, and exact border-strip laws."""

from fractions import Fraction

from osplpp import Tableau, YoungDiagram, burge, dual_lpp_tableau, greene_max, lpp_tableau, rsk
from osplpp.rsk import border_distribution_exact, classical_rsk_rectangle
from osplpp.shapes import border_strip

x = Tableau(((1, 2), (3, 4)))
print("x      =", x)
print("L      =", lpp_tableau(x), "  L* =", dual_lpp_tableau(x))
print("rsk(x) =", rsk(x), "  burge(x) =", burge(x))
print("two disjoint paths always collect the whole rectangle:", greene_max(x, 2, 2, 2))
print("row-insertion RSK, re-encoded along diagonals:", classical_rsk_rectangle(x)[2])

# With geometric weights the border-strip values of L and L* have the same law.
shape = YoungDiagram((3, 2, 1))
p = Fraction(1, 2)
law_l = border_distribution_exact(shape, p, 4, "L")
law_s = border_distribution_exact(shape, p, 4, "Lstar")
print(f"\nshape {shape}, border strip {border_strip(shape)}")
print("vectors with max <= 4:", len(law_l), " laws identical:", law_l == law_s)
v = max(law_l, key=law_l.get)
print("most likely border vector", v, "with probability", law_l[v])

# Uniform {0,1} weights break the equality.
two = YoungDiagram((2, 2))
bl = border_distribution_exact(two, p, 4, "L", weights="bernoulli")
bs = border_distribution_exact(two, p, 4, "Lstar", weights="bernoulli")
print("\nBernoulli weights, border vector (2,3,1):", bl.get((2, 3, 1), 0), "vs", bs.get((2, 3, 1), 0))
