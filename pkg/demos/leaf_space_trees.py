# %% [markdown]
# # Medians and branch points in metric trees

# %%
from fractions import Fraction as F

from cutlab.trees import MetricTree, TreePoint, steiner_branch_points, straighten_triangle, tree_geodesic, tree_median

tree = MetricTree.build([
    ("r", "a", 2), ("r", "b", 1), ("r", "c", 3),
    ("a", "a1", 1), ("a", "a2", 1), ("c", "c1", F(1, 2)),
])
x, y, z = TreePoint.at("a1"), TreePoint.at("b"), TreePoint.on(tree, "c", "c1", F(1, 4))
print("median:", tree_median(tree, x, y, z))
print("geodesic a1 -> b:", tree_geodesic(tree, x, y))

# %% [markdown]
# k points span a subtree with at most k-2 branch points.

# %%
pts = [TreePoint.at(v) for v in ("a1", "a2", "b", "c1")]
sub, count = steiner_branch_points(tree, pts)
print("branch points:", sub.branch_points(), count)

# %%
# %% [markdown]
# A triple whose median is one of its points is collinear, and then the
# triangle collapses onto the arc between the two outer points.

# %%
print(straighten_triangle(tree, x, y, z).collinear)
tri = straighten_triangle(tree, TreePoint.at("a1"), TreePoint.at("r"), TreePoint.at("c1"))
print(tri.order, tri.span, tri.turn)
print([sorted(map(sorted, tri.fibre(t))) for t in (1, tri.turn, 5)])
