"""Expected anisotropy of Gaussian clusters from random-matrix theory.

For a cluster of T independent Gaussian points in n dimensions the
scatter-spectrum histogram follows a Marchenko-Pastur law whose
density, in the convention used throughout this package, is

    pdf(L) = sqrt((L_max - L) (L - L_min)) / (2 pi sigma^2 L)

on the support L in [L_min, L_max] = sigma^2 (1 -+ sqrt(T/n))^2 + mu.

Taken verbatim the density does not integrate to 1: its raw mass is
min(T, n) / n, and the missing mass is exactly the fraction of zero
eigenvalues a rank-deficient scatter matrix has when n > T.  The raw
integrals of L * pdf and L^2 * pdf are therefore the moments of the
full n-eigenvalue spectrum, zeros included, and plugging them into the
fractional-anisotropy and Var(lambda) formulas predicts the measured
values directly.  ``mp_moments`` reports the raw mass so the deficit
is visible; normalized per-mass moments are exposed alongside.

Moments are computed by adaptive quadrature after the substitution
L = L_min + (L_max - L_min) sin^2(theta), which absorbs the inverse
square-root endpoint singularities.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .core import DataError, NumericError


@dataclass(frozen=True)
class MpParams:
    """Cluster shape parameters: T points in n dimensions, per-axis
    variance sigma2, and an additive spectrum shift mu."""

    points: int
    dims: int
    sigma2: float = 1.0
    mu: float = 0.0

    def __post_init__(self):
        if self.points < 1:
            raise DataError(f"points must be >= 1, got {self.points}")
        if self.dims < 1:
            raise DataError(f"dims must be >= 1, got {self.dims}")
        if not self.sigma2 > 0:
            raise DataError(f"sigma2 must be positive, got {self.sigma2}")


@dataclass(frozen=True)
class MpMoments:
    """Raw integrals of the spectral density and its first two moments.

    e_lambda and e_lambda2 are the unnormalized integrals of L*pdf and
    L^2*pdf; mass is the integral of the pdf itself (min(T, n)/n up to
    quadrature error).  The *_normalized properties divide by mass.
    """

    e_lambda: float
    e_lambda2: float
    mass: float

    @property
    def e_lambda_normalized(self) -> float:
        return self.e_lambda / self.mass

    @property
    def e_lambda2_normalized(self) -> float:
        return self.e_lambda2 / self.mass


def mp_support(params: MpParams) -> tuple[float, float]:
    """Support endpoints (L_min, L_max); L_min is clamped at 0."""
    c = params.points / params.dims
    root = np.sqrt(c)
    lo = params.sigma2 * (1.0 - root) ** 2 + params.mu
    hi = params.sigma2 * (1.0 + root) ** 2 + params.mu
    lo = max(0.0, lo)
    if not hi > lo:
        raise DataError(f"empty spectral support: ({lo}, {hi})")
    return float(lo), float(hi)


def mp_pdf(params: MpParams, lam) -> np.ndarray | float:
    """Spectral density evaluated at lam (scalar or array).

    Zero outside the support and at the endpoints; the lam = 0
    endpoint of the square case is returned as 0 as well.
    """
    lo, hi = mp_support(params)
    lam_arr = np.asarray(lam, dtype=np.float64)
    scalar = lam_arr.ndim == 0
    lam_arr = np.atleast_1d(lam_arr)
    out = np.zeros_like(lam_arr)
    inside = (lam_arr > lo) & (lam_arr < hi) & (lam_arr > 0)
    lv = lam_arr[inside]
    out[inside] = np.sqrt((hi - lv) * (lv - lo)) / (2.0 * np.pi * params.sigma2 * lv)
    return float(out[0]) if scalar else out


def mp_moments(params: MpParams, epsrel: float = 1e-8) -> MpMoments:
    """Adaptive quadrature of pdf, L*pdf and L^2*pdf over the support.

    Uses the sin^2 substitution so the integrand is smooth at the
    endpoints; raises NumericError if the quadrature does not converge
    to the requested relative tolerance.
    """
    lo, hi = mp_support(params)
    width = hi - lo
    norm = width * width / (np.pi * params.sigma2)

    def integrand(theta: float, power: int) -> float:
        s2 = np.sin(theta) ** 2
        lam = lo + width * s2
        base = norm * s2 * (1.0 - s2)  # sin^2 cos^2 from density and Jacobian
        if lam <= 0.0:
            # only reachable at theta = 0 when lo == 0; the limit is finite
            return base if power == 1 else 0.0
        return base * lam ** (power - 1)

    values = []
    for power in (0, 1, 2):
        val, _, info, *tail = quad(
            integrand, 0.0, np.pi / 2, args=(power,),
            epsabs=0.0, epsrel=epsrel, limit=200, full_output=True,
        )
        if tail:
            raise NumericError(f"quadrature failed for moment {power}: {tail[0]}")
        values.append(float(val))
    mass, e1, e2 = values
    if mass <= 0 or e1 <= 0:
        raise NumericError(f"non-positive spectral mass/mean: mass={mass}, E={e1}")
    return MpMoments(e_lambda=e1, e_lambda2=e2, mass=mass)


def expected_fa(params: MpParams, epsrel: float = 1e-8) -> float:
    """Predicted raw fractional anisotropy of a Gaussian cluster.

    sqrt(1 - E(L)^2 / E(L^2)) over the full n-eigenvalue spectrum,
    zeros included, so the raw integrals are used directly.
    """
    m = mp_moments(params, epsrel=epsrel)
    if m.e_lambda2 <= 0:
        return 0.0
    return float(np.sqrt(max(0.0, 1.0 - m.e_lambda**2 / m.e_lambda2)))


def expected_var_lambda(params: MpParams, epsrel: float = 1e-8) -> float:
    """Predicted Var(lambda) of a Gaussian cluster.

    Spectrum variance over the squared spectrum total:
    (E(L^2) - E(L)^2) / (n E(L))^2, with full-spectrum raw moments.
    """
    m = mp_moments(params, epsrel=epsrel)
    var = m.e_lambda2 - m.e_lambda**2
    return float(max(0.0, var) / (params.dims * m.e_lambda) ** 2)
