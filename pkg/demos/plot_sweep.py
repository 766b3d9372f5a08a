"""
Sweeping small simplices
========================

Every lattice simplex with a vertex at the origin is equivalent to one whose
remaining vertices are the rows of a lower-triangular Hermite form.  We
enumerate these up to a volume bound and test the universal inequality on
each one with h*_3 = 0.
"""
# %%
from hstarlab.harness import EnumSpec, enumerate_simplices, sweep_main_theorem

print(sum(1 for _ in enumerate_simplices(EnumSpec(3, 8))), "simplices of dimension 3, volume <= 8")

# %%
# The summary also records the classical inequalities checked on the same
# corpus.
s = sweep_main_theorem(EnumSpec(3, 12))
print(s.report("dim3_vol12").format())

# %%
# Shards partition the corpus, so a sweep can be split across processes.
parts = [sweep_main_theorem(EnumSpec(3, 12, (i, 3))) for i in range(3)]
print("sharded total:", sum(p.total for p in parts), "unsharded:", s.total)
