"""Check chi_f against 3 - 1/(n + 1/3) and 3n/(n + 1) on a small corpus."""

# %%
import time

from trifree_frac.corpus import NAMED_CORPORA, verify_bounds

t = time.perf_counter()
corpus = NAMED_CORPORA["small"]()
report = verify_bounds(corpus)
print(f"{len(report.rows)} graphs in {time.perf_counter() - t:.1f} s, all bounds hold: {report.all_hold()}")

# %%
# Graphs meeting 3n/(n+1) with alpha = (n+1)/3 exactly.
for row in report.tightness_witnesses():
    print(row.name, row.n, row.chi_f, row.alpha)

# %%
# Slack of the main bound, smallest first.
rows = sorted(report.rows, key=lambda r: r.bound_main - r.chi_f)
for r in rows[:8]:
    print(f"{r.name:<12} n={r.n:<3} chi_f={str(r.chi_f):<6} bound={r.bound_main}")

# %%
print(report.to_csv().splitlines()[0])
