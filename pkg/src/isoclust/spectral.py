"""Spectral anisotropy measures.

The shape of a cluster C is summarized by the eigenvalues of its
centered scatter matrix C'C (C centered at the cluster centroid).
Normalizing the eigenvalues to sum to one gives lambda_i, and two
scalar measures follow:

* ``var_lambda``: the population variance of the normalized
  eigenvalues, in [0, 1/4].  0 for a perfectly isotropic spectrum,
  1/4 for a 2-D one-hot spectrum.
* ``fractional_anisotropy``: sqrt(1 - E(lambda)^2 / E(lambda^2)), in
  [0, 1).  The normalized variant multiplies by sqrt(n / (n - 1)) so a
  one-hot spectrum maps to exactly 1.

Eigenvalues are found on the cheaper side of the problem: the n x n
scatter matrix when n <= |C|, otherwise the |C| x |C| Gram matrix,
which shares the nonzero spectrum.  Eigenvectors are only needed by
the directional measures and are computed lazily on first access.
"""

from __future__ import annotations

import numpy as np

from .core import ClusterView, DataError, size_weighted_mean


class SpectralSummary:
    """Eigenvalues (descending, zero-padded to n) of a cluster scatter matrix.

    Attributes
    ----------
    eigenvalues : ndarray, shape (n,)
        Scatter matrix eigenvalues, nonincreasing, negatives clamped to 0.
    lambdas : ndarray, shape (n,)
        Eigenvalues normalized to sum to 1.  Uniform (1/n) for a
        degenerate cluster.
    degenerate : bool
        True when the cluster has zero dispersion (single point or
        coincident points).
    vectors : ndarray, shape (n, n)
        One unit eigenvector per eigenvalue, as rows, matching the
        eigenvalue order.  Computed on first access.
    """

    def __init__(self, eigenvalues, degenerate, _centered=None, _vectors=None):
        self.eigenvalues = np.asarray(eigenvalues, dtype=np.float64)
        self.degenerate = bool(degenerate)
        n = self.eigenvalues.size
        total = self.eigenvalues.sum()
        if total > 0.0:
            self.lambdas = self.eigenvalues / total
        else:
            self.lambdas = np.full(n, 1.0 / n)
        self._centered = _centered
        self._vectors = _vectors

    @property
    def n_dims(self) -> int:
        return self.eigenvalues.size

    @property
    def vectors(self) -> np.ndarray:
        if self._vectors is None:
            scatter = self._centered.T @ self._centered
            _, vecs = np.linalg.eigh(scatter)
            self._vectors = vecs[:, ::-1].T  # descending, one eigenvector per row
        return self._vectors


def spectral_summary(view: ClusterView) -> SpectralSummary:
    """Eigen-summary of a cluster's centered scatter matrix."""
    members = view.points
    n = view.n_dims
    if view.degenerate:
        return SpectralSummary(np.zeros(n), True, _vectors=np.eye(n))
    centered = members - view.centroid
    if n <= view.size:
        scatter = centered.T @ centered
        vals, vecs = np.linalg.eigh(scatter)
        eig = np.clip(vals[::-1], 0.0, None)
        return SpectralSummary(eig, False, _vectors=vecs[:, ::-1].T)
    # High-dimensional case: the Gram matrix carries the nonzero spectrum.
    gram = centered @ centered.T
    vals = np.linalg.eigvalsh(gram)
    eig = np.zeros(n)
    eig[: view.size] = np.clip(vals[::-1], 0.0, None)
    return SpectralSummary(eig, False, _centered=centered)


def _as_lambdas(s) -> np.ndarray:
    if isinstance(s, SpectralSummary):
        return s.lambdas
    lam = np.asarray(s, dtype=np.float64)
    if lam.shape[-1] < 1:
        raise DataError("empty eigenvalue set")
    if np.any(lam < -1e-12):
        raise DataError("normalized eigenvalues must be nonnegative")
    sums = lam.sum(axis=-1)
    if not np.allclose(sums, 1.0, atol=1e-8):
        raise DataError("normalized eigenvalues must sum to 1")
    return lam


def var_lambda(s) -> float | np.ndarray:
    """Population variance of the normalized eigenvalues, in [0, 1/4].

    Accepts a :class:`SpectralSummary` or a normalized eigenvalue
    array; a 2-D array is treated as a batch (one set per row) and
    returns one variance per row.
    """
    lam = _as_lambdas(s)
    out = lam.var(axis=-1)
    return out if out.ndim else float(out)


def fractional_anisotropy(s, normalized: bool = False) -> float:
    """Fractional anisotropy of the normalized eigenvalue spectrum.

    The raw form is sqrt(1 - E(lambda)^2 / E(lambda^2)); it tops out at
    sqrt(1 - 1/n) for a one-hot spectrum.  With ``normalized=True`` the
    value is scaled by sqrt(n / (n - 1)) so the one-hot spectrum
    reaches exactly 1.  A degenerate cluster reports 0.
    """
    if isinstance(s, SpectralSummary) and s.degenerate:
        return 0.0
    lam = _as_lambdas(s)
    if lam.ndim != 1:
        raise DataError("fractional_anisotropy expects a single eigenvalue set")
    n = lam.size
    e2 = float((lam**2).mean())
    # Var / E2 rather than 1 - E^2 / E2: same value, but near-isotropic
    # spectra would otherwise lose ~8 digits to cancellation
    var = float(((lam - lam.mean()) ** 2).mean())
    raw = float(np.sqrt(min(1.0, var / e2)))
    if not normalized:
        return raw
    if n < 2:
        return 0.0
    return min(1.0, float(np.sqrt(n / (n - 1.0)) * raw))


def fa_global(views: list[ClusterView], normalized: bool = False) -> float:
    """Size-weighted mean fractional anisotropy over a set of clusters."""
    if not views:
        raise DataError("fa_global needs at least one cluster")
    fas = [fractional_anisotropy(spectral_summary(v), normalized=normalized) for v in views]
    return size_weighted_mean(fas, [v.size for v in views])
