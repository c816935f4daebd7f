# %% [markdown]
# Class groups of imaginary quadratic fields, their characters, and the
# ideal counts that feed theta series.

# %%
import numpy as np

from fundcoeff import classgroup as cg
from fundcoeff import lfun

G = cg.class_group(-23)
print("h =", G.h, "structure", G.structure)
print("reduced forms", G.elements)
print(G.table())  # composition table in element order

# %% a larger, non-cyclic group
G = cg.class_group(-3315)
print(-3315, "h =", G.h, "structure", G.structure)

# %% characters take exact values: angles are fractions of a full turn
for chi in cg.characters(cg.class_group(-47)):
    print(chi.exponents, [str(t) for t in chi.angles()])

# %% class number formula: h = w sqrt|d| L(1, chi_d) / (2 pi)
for d in (-23, -47, -71, -163, -3315):
    print(d, lfun.class_number_from_L(d), cg.class_group(d).h)

# %% ideals of norm n in each class, n <= 30
G = cg.class_group(-23)
counts = cg.ideal_class_counts(G, 30)
for f, row in zip(G.elements, counts):
    print(f, np.nonzero(row)[0])
