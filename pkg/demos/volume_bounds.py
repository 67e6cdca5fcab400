# %% [markdown]
# # Volumes from the Lobachevsky function

# %%
import math

import numpy as np

from cutlab.hyperbolic import constants, ideal_tetrahedron_volume, lobachevsky, truncate
from cutlab.inequalities import GutsData, ManifoldData, guts_bounds, hypersurface_bounds, tight_obstruction
from cutlab.oracles import quadrature_lobachevsky

c = constants()
print(c.as_dict())
print("2 V3 to two places:", truncate(c.two_V3, 2))

# %% [markdown]
# The series and a direct quadrature of -log|2 sin t| agree to rounding.

# %%
grid = np.linspace(-math.pi, math.pi, 201)
print(max(abs(lobachevsky(t) - quadrature_lobachevsky(t)) for t in grid))
print("regular ideal tetrahedron:", ideal_tetrahedron_volume(math.pi / 3, math.pi / 3, math.pi / 3))

# %% [markdown]
# The Weeks manifold has volume about 0.9427, well under 2 V3, so it carries
# no tight essential lamination with nonempty guts.

# %%
for vol in (0.9427, 2.03):
    r = tight_obstruction(ManifoldData(3, vol))
    print(vol, r.verdict, r.reasons, round(r.numbers["margin"], 4))

# %%
print(guts_bounds(GutsData(-2, polyhedron_faces=4)))
print(hypersurface_bounds(ManifoldData(3, volume=2.5), surface_chi=-2))
