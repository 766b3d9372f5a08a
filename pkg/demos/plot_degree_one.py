"""
Polytopes of degree at most one
===============================

A polytope whose h*-polynomial has degree at most one is, up to lattice
equivalence and pyramids, either a Lawrence prism or the exceptional simplex.
The classifier recovers the prism heights from a randomly transformed copy.
"""
# %%
import random

from hstarlab.checks import classify_degree_le1
from hstarlab.constructions import exceptional_simplex, lawrence_prism
from hstarlab.ehrhart import hstar
from hstarlab.harness import scramble

rng = random.Random(1)
prism = lawrence_prism([2, 0, 3, 1])
print("prism h*:", hstar(prism).coeffs)
disguised = scramble(prism, rng)
print("disguised vertices:", disguised.vertices)
print(classify_degree_le1(disguised))

# %%
e = scramble(exceptional_simplex(4), rng)
print("exceptional h*:", hstar(e).coeffs)
print(classify_degree_le1(e))
