"""
Two ways to get an h*-vector
============================

Counting lattice points in dilations and enumerating the fractional group of
a simplex give the same answer.  We check this on the triangle with vertices
0, 3e_1 and 3e_2.
"""
# %%
# Counting first.  The h*-vector of a d-polytope is determined by the first
# d + 1 counts ``|kP ∩ Z^d|``.
from hstarlab.constructions import triangle33
from hstarlab.ehrhart import hstar_from_counts, hstar_group, lambda_group
from hstarlab.polytope import count_points

t = triangle33()
counts = [count_points(t, k) for k in range(3)]
print("counts:", counts)
print("from counts:", hstar_from_counts(counts))

# %%
# Now the group.  Each element is a tuple of fractional vertex weights; its
# height is the sum of the entries, and h*_i counts elements of height i.
g = lambda_group(t)
print("group order:", g.order, "invariants:", g.invariants)
for r in g.elements:
    print("  ", tuple(str(x) for x in r), "height", sum(r))
print("from group:", hstar_group(t).polynomial())

# %%
# The pair (h*_1, h*_2) = (7, 1) is the one sporadic case allowed when
# h*_1 exceeds 3 h*_2 + 3.
from hstarlab.checks import scott_universal

print(scott_universal(7, 1).format())
print(scott_universal(8, 1).format())
