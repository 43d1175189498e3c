"""Certified heavy independent sets, one case at a time."""

# %%
from fractions import Fraction

from trifree_frac import b, families, proof_oracle


def skewed(g):
    # weight concentrated on the high-degree vertices forces the light cases
    return [Fraction(1000) if g.degree(v) >= 4 else Fraction(1) for v in range(g.n)]


examples = [
    (families.cycle(5), None),
    (families.pentagon_chain(3), None),
    (families.cycle(12), None),
    (families.dodecahedron(), None),
    (families.collapsed_pentagonal_dual(4), skewed),
    (families.pentagonal_dual(4), skewed),
]

# %%
# Each certificate records which case produced it and the exact inequality
# w(X) >= b(n) w(V).
for g, weigh in examples:
    w = weigh(g) if weigh else [Fraction(1)] * g.n
    cert = proof_oracle(g, w)
    print(f"{g.name:<22} n={g.n:<3} b(n)={str(b(g.n)):<7} {cert.case:<15} "
          f"w(X)={str(cert.weight):<6} threshold={cert.threshold}")

# %%
# The safe-pentagon case keeps the two colour pools M3 and M4 it used.
g = families.pentagonal_dual(4)
cert = proof_oracle(g, skewed(g))
print(cert.data["face"], "N =", cert.data["N"], "|M3| =", len(cert.data["M3"]), "|M4| =", len(cert.data["M4"]))
