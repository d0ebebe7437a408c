"""How infidelity falls with pulse length at tau = m * tau0.

lambda_z shrinks as 1/m, and the infidelity is quadratic in it, so a
log-log fit of 1 - F against m should have slope close to -2.
"""

import math

from fdmqubit import PulseConfig, analytic_fidelity, fit_infidelity_slope, lambda_orthogonal
from fdmqubit.experiments import reference_comb

comb = reference_comb()
phi = math.pi / 2

for k0 in (1, 4, 7):
    pts = []
    for m in range(1, 11):
        pulse = PulseConfig.from_tau_ratio(comb, m, phi)
        pts.append((m, analytic_fidelity(lambda_orthogonal(comb, pulse, k0), phi).infidelity))
    fit = fit_infidelity_slope(pts)
    print(f"k0={k0}: 1-F(m=1)={pts[0][1]:.3e}  1-F(m=10)={pts[-1][1]:.3e}  slope={fit.slope:.4f}")

for m in (8, 16, 32, 64):
    pulse = PulseConfig.from_tau_ratio(comb, m, phi)
    print(f"m={m:>2}: 1-F(k0=7) = {analytic_fidelity(lambda_orthogonal(comb, pulse, 7), phi).infidelity:.2e}")
