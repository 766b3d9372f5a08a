"""
A simplex over a refined lattice
================================

Take the simplex spanned by 0, 3e_1, 3e_2 and e_3, ..., e_8 in R^8 and count
lattice points in Z^8 + Z(1/2, ..., 1/2).  Its h*-polynomial does not
factor as a product of two h*-polynomials with nonnegative coefficients, so
it is not a join.
"""
# %%
from hstarlab.harness import elementary_divisors, example_nonjoin, nonneg_factorizations
from hstarlab.ehrhart import hstar, lambda_group
from hstarlab.linalg import invariant_factors

ex = example_nonjoin()
h = hstar(ex)
print("h*:", h.polynomial())
g = lambda_group(ex)
inv = [x for x in invariant_factors([list(v) + [1] for v in ex.vertices]) if x > 1]
print("group order", g.order, "elementary divisors", elementary_divisors(inv))

# %%
# No splitting of the coefficient list into two nonnegative factors exists.
print("factorizations:", nonneg_factorizations(h.coeffs))

# %%
# Over the lattice spanned by its own lattice points, the polytope is an
# iterated pyramid over the (1, 7, 1) triangle.
from hstarlab.checks import strip_pyramids
from hstarlab.constructions import spanning

pt, index = spanning(ex)
base, layers = strip_pyramids(pt)
print("spanning index", index, "pyramid layers", layers, "base h*", hstar(base).coeffs)
