"""
Spectral-law predictions against sampled clusters
=================================================

The scatter spectrum of a T-point Gaussian cluster in n dimensions
follows a known limiting density.  Integrating that density predicts
the fractional anisotropy and Var(lambda) a sampled cluster will
report, with no sampling at all.  Here we put prediction and
measurement side by side while n grows past T.
"""

import numpy as np

from isoclust import (
    ClusterView,
    MpParams,
    expected_fa,
    expected_var_lambda,
    fractional_anisotropy,
    gaussian_cluster,
    mp_pdf,
    mp_support,
    spectral_summary,
    var_lambda,
)

T = 100
print(f"clusters of T = {T} points, 8 sampled per row")
print(f"{'n':>6} {'fa pred':>9} {'fa meas':>9} {'var pred':>10} {'var meas':>10}")
for n in (50, 100, 200, 400, 800, 1600):
    params = MpParams(points=T, dims=n)
    fas, variances = [], []
    for i in range(8):
        cloud = gaussian_cluster(n, T, seed=n + i)
        summary = spectral_summary(ClusterView(cloud, np.arange(T)))
        fas.append(fractional_anisotropy(summary))
        variances.append(float(var_lambda(summary)))
    print(
        f"{n:>6} {expected_fa(params):>9.4f} {np.mean(fas):>9.4f} "
        f"{expected_var_lambda(params):>10.2e} {np.mean(variances):>10.2e}"
    )

# FA climbs toward 1 as n outruns T (the cluster cannot fill the
# space), while Var(lambda) decays like 1/(nT): two views of the same
# thinning spectrum.

# The density itself, for one configuration:
params = MpParams(points=100, dims=400)
lo, hi = mp_support(params)
print()
print(f"T=100, n=400: support [{lo:.2f}, {hi:.2f}]")
for lam in np.linspace(lo, hi, 7):
    bar = "#" * int(60 * mp_pdf(params, lam))
    print(f"  pdf({lam:4.2f}) = {mp_pdf(params, lam):6.4f} {bar}")
