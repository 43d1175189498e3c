"""Exact fractional chromatic numbers of small plane graphs."""

# %%
from fractions import Fraction

from trifree_frac import chi_f, families
from trifree_frac.lp import frac_str

# Odd cycles: chi_f(C_{2k+1}) = 2 + 1/k.  The solver returns the value together
# with a primal distribution over independent sets and a dual weighting.
for k in range(5, 12, 2):
    res = chi_f(families.cycle(k))
    print(f"C{k:<3} chi_f = {frac_str(res.value):>5}   certificate ok: {res.check(families.cycle(k))}")

# %%
# The primal for C5: five 2-sets, each used with weight 1/2.
res = chi_f(families.cycle(5))
for S, lam in res.primal:
    print(sorted(S), lam)
print("dual:", [str(y) for y in res.dual])

# %%
# The dodecahedron has independence number 8 on 20 vertices, so chi_f >= 5/2,
# and the solver confirms equality.
g = families.dodecahedron()
res = chi_f(g)
print(g, res.value, res.value == Fraction(5, 2))
