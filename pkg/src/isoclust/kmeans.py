"""Deterministic Lloyd k-means with k-means++ seeding.

Written in-repo rather than wrapped from a library because the
contracts here are strict: byte-reproducible results for a seed,
nearest-centroid ties broken by lowest id, empty clusters repaired by
farthest-point reseeding (and flagged), and the per-iteration inertia
sequence exposed and checked to be nonincreasing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from .core import ClusterAssignment, DataError, NumericError, PointCloud

MAX_ITER = 300
TOL = 1e-6  # relative centroid movement


@dataclass
class KMeansResult:
    assignment: ClusterAssignment
    centroids: np.ndarray
    inertia: float
    n_iter: int
    seed: int
    reseeded: bool
    inertia_history: list[float]


def _plus_plus_init(data: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = len(data)
    centroids = np.empty((k, data.shape[1]))
    first = int(rng.integers(n))
    centroids[0] = data[first]
    d2 = ((data - centroids[0]) ** 2).sum(axis=1)
    for i in range(1, k):
        total = d2.sum()
        if total > 0:
            probs = d2 / total
            choice = int(rng.choice(n, p=probs))
        else:
            choice = int(rng.integers(n))
        centroids[i] = data[choice]
        d2 = np.minimum(d2, ((data - centroids[i]) ** 2).sum(axis=1))
    return centroids


def kmeans(
    cloud: PointCloud,
    k: int,
    seed: int = 0,
    max_iter: int = MAX_ITER,
    tol: float = TOL,
    init=None,
) -> KMeansResult:
    """Cluster a cloud into k parts.

    ``init`` may be an explicit (k, n_dims) centroid array; by default
    k-means++ seeding is used.  Deterministic for fixed inputs and
    seed.  The result's label ids are contiguous 0..k-1 and every
    cluster is non-empty.
    """
    data = cloud.data
    if k < 1:
        raise DataError(f"k must be >= 1, got {k}")
    if k > cloud.n_points:
        raise DataError(f"k = {k} exceeds the number of points ({cloud.n_points})")
    n_distinct = len(np.unique(data, axis=0))
    if k > n_distinct:
        raise DataError(f"k = {k} exceeds the number of distinct points ({n_distinct})")

    rng = np.random.default_rng(seed)
    if init is None:
        centroids = _plus_plus_init(data, k, rng)
    else:
        centroids = np.asarray(init, dtype=np.float64).copy()
        if centroids.shape != (k, cloud.n_dims):
            raise DataError(f"init centroids must have shape ({k}, {cloud.n_dims})")

    reseeded = False
    history: list[float] = []
    labels = np.zeros(len(data), dtype=np.int64)
    for iteration in range(1, max_iter + 1):
        d2 = cdist(data, centroids, "sqeuclidean")
        labels = d2.argmin(axis=1)  # argmin takes the lowest id on ties
        point_d2 = d2[np.arange(len(data)), labels]

        counts = np.bincount(labels, minlength=k)
        for empty in np.flatnonzero(counts == 0):
            far = int(point_d2.argmax())
            centroids[empty] = data[far]
            labels[far] = empty
            point_d2[far] = 0.0
            counts = np.bincount(labels, minlength=k)
            reseeded = True

        inertia = float(point_d2.sum())
        if history and inertia > history[-1] * (1 + 1e-9) + 1e-12:
            raise NumericError(
                f"inertia increased from {history[-1]} to {inertia} at iteration {iteration}"
            )
        history.append(inertia)

        new_centroids = np.zeros_like(centroids)
        np.add.at(new_centroids, labels, data)
        new_centroids /= counts[:, None]

        shift = float(np.linalg.norm(new_centroids - centroids, axis=1).max())
        scale = float(np.linalg.norm(centroids, axis=1).max())
        centroids = new_centroids
        if shift <= tol * max(scale, 1e-12):
            break

    d2 = cdist(data, centroids, "sqeuclidean")
    labels = d2.argmin(axis=1)
    counts = np.bincount(labels, minlength=k)
    for empty in np.flatnonzero(counts == 0):
        far = int(d2[np.arange(len(data)), labels].argmax())
        centroids[empty] = data[far]
        labels[far] = empty
        reseeded = True
    inertia = float(((data - centroids[labels]) ** 2).sum())

    return KMeansResult(
        assignment=ClusterAssignment(labels),
        centroids=centroids,
        inertia=inertia,
        n_iter=iteration,
        seed=int(seed),
        reseeded=reseeded,
        inertia_history=history,
    )
