"""
Measuring the isotropy of single clusters
=========================================

A tour of the per-cluster measures on clusters whose shapes we know:
a round Gaussian ball, a squashed Gaussian, and two 2-D benchmark
shapes (an S curve and an L).  The interesting contrast is between
probing with scatter-matrix eigenvectors and probing with many random
directions: for the L shape the eigenvectors sit on the diagonal
symmetry axes and miss the arms, so random probing finds a smaller
(more honest) directional ratio.
"""

import numpy as np

from isoclust import (
    ClusterView,
    anisotropic_gaussian,
    fractional_anisotropy,
    gaussian_cluster,
    isotropy_rnd,
    isotropy_vec,
    shape_cluster,
    spectral_summary,
    var_lambda,
)


def as_view(cloud):
    return ClusterView(cloud, np.arange(cloud.n_points))


clusters = {
    "gaussian ball (5-D)": as_view(gaussian_cluster(5, 400, seed=1)),
    "squashed gaussian (5-D)": as_view(anisotropic_gaussian(5, 400, [1, 1, 1, 1, 0.05], seed=1)),
    "s_curve (2-D)": as_view(shape_cluster("s_curve", 400, noise=0.02, seed=1)),
    "l_shape (2-D)": as_view(shape_cluster("l_shape", 400, seed=1)),
}

print(f"{'cluster':<26} {'var_lambda':>11} {'fa':>8} {'i_vec':>8} {'i_rnd':>8}")
for name, view in clusters.items():
    summary = spectral_summary(view)
    row = (
        float(var_lambda(summary)),
        fractional_anisotropy(summary),
        isotropy_vec(view),
        isotropy_rnd(view, count=1000, seed=0),
    )
    print(f"{name:<26} {row[0]:>11.5f} {row[1]:>8.4f} {row[2]:>8.4f} {row[3]:>8.4f}")

# The ball scores near 0 on the spectral measures and near 1 on the
# directional ones; the squashed cluster and the S curve move in the
# opposite direction on both families.  The L shape is the odd case:
# its spectral numbers sit right next to the S curve's, but dense
# random probing finds directional unevenness the two eigenvectors
# miss, so i_rnd lands visibly below i_vec only here.
l_view = clusters["l_shape (2-D)"]
vec, rnd = isotropy_vec(l_view), isotropy_rnd(l_view, count=1000, seed=0)
print()
print(f"l_shape: i_vec = {vec:.4f}, i_rnd = {rnd:.4f}, gap = {vec - rnd:+.4f}")
