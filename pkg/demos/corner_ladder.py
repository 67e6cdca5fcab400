# %% [markdown]
# # The corner ladder in the 3-simplex
#
# Four disjoint sections: one cuts off vertex 0, the other three cut off
# vertices 1, 2 and 3 from the far side.  There is one canonical colouring,
# and every section keeps exactly one triangle without a white-parallel partner.

# %%
from fractions import Fraction as F

from cutlab.chains import subdivide_cut_simplex, survivor_filter
from cutlab.combinatorics import compute_D, enumerate_canonical_colourings
from cutlab.geometry import realize_cut_system

specs = [({0}, F(3, 4)), ({0, 2, 3}, F(1, 4)), ({0, 1, 3}, F(1, 4)), ({0, 1, 2}, F(1, 4))]
cut = realize_cut_system(3, specs)
for s in cut.sections:
    print(sorted(s.type), s.kind.value, len(s.polytope_vertices), "polytope vertices")

# %% [markdown]
# The region tree is a star: the middle region touches all four sections.

# %%
print("regions:", cut.tree.regions)
cols = enumerate_canonical_colourings(cut)
print("canonical colourings:", [sorted(c.white) for c in cols])

# %%
rep = compute_D(cut, cols[0])
print("D =", rep.per_section_D, "total =", rep.total, rep.verdict)
print("survivors:", sorted(survivor_filter(cut, cols[0])))

# %% [markdown]
# Subdividing the cut simplex into simplices gives a chain whose old edges
# (edges of the original simplex) form a forest, so the labeling is admissible.

# %%
sub = subdivide_cut_simplex(cut, cols[0])
print("vertices:", sub.complex.n_vertices, "old edges:", len(sub.old_edges()), "admissible:", sub.admissible())
print("white region volumes:", {r: sub.volume(r) for r in sorted(sub.pieces)})
