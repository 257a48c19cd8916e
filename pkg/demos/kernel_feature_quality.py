"""
Feature transforms: scaling, random Fourier features, projection
================================================================

The transform half of the package: min-max scaling with an exactly
reusable record, random Fourier features whose inner products
approximate the RBF kernel (better with more features), and a
deterministic PCA projection for plot export.
"""

import numpy as np

from isoclust import (
    PointCloud,
    minmax_apply,
    minmax_scale,
    pca_project,
    rbf_fit,
    rbf_transform,
)

rng = np.random.default_rng(3)
cloud = PointCloud(rng.normal(size=(300, 10)) * np.linspace(5, 0.5, 10))

# min-max: fit once, re-apply the record to new data exactly
scaled, record = minmax_scale(cloud, lo=-1.0, hi=1.0)
fresh = PointCloud(rng.normal(size=(5, 10)))
reapplied = minmax_apply(record, fresh)
print(f"scaled ranges: min {scaled.data.min():.3f}, max {scaled.data.max():.3f}")
print(f"record re-applied to new points: shape {reapplied.data.shape}")
print()

# random Fourier features: kernel error falls as the feature count grows
gamma = 0.5
x = rng.normal(size=(200, 10)) * 0.5
y = rng.normal(size=(200, 10)) * 0.5
exact = np.exp(-gamma * ((x - y) ** 2).sum(axis=1))
print(f"{'features':>9} {'median kernel error':>20} {'mean squared norm':>18}")
for n_out in (64, 256, 1024, 4096):
    fmap = rbf_fit(10, n_out, gamma=gamma, seed=1)
    fx = rbf_transform(fmap, PointCloud(x)).data
    fy = rbf_transform(fmap, PointCloud(y)).data
    err = np.median(np.abs((fx * fy).sum(axis=1) - exact))
    norm = np.mean((fx**2).sum(axis=1))
    print(f"{n_out:>9} {err:>20.4f} {norm:>18.4f}")
print()

# PCA projection: top two axes of the centered cloud, signs fixed
proj = pca_project(cloud, 2)
print(f"projection columns: {proj.columns}")
print(f"projected variances: {proj.data.var(axis=0).round(2)}")
